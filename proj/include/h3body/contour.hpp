#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace h3body {

/// Scalar field sampled on nx x ny nodes, row-major in x.
struct ScalarGrid {
  int nx = 0, ny = 0;
  std::vector<double> x, y;       // node coordinates
  std::vector<double> values;     // values[i * ny + j]

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }
};

struct ContourPoint {
  double x = 0.0, y = 0.0;
};

struct ContourSegment {
  ContourPoint a, b;
  int cell_i = 0, cell_j = 0;
  // Edge ids of the endpoints; adjacent cells share them, which is how
  // segments are stitched into curves.
  long edge_a = 0, edge_b = 0;
};

using Cell = std::pair<int, int>;

struct Contour {
  std::vector<ContourSegment> segments;
  std::set<Cell> cells;  // cells crossed by the level set
  int components = 0;
};

/// Zero level set by marching squares with linear edge interpolation.
/// Saddle cells are resolved by the sign of the cell-centre average.
Contour marching_squares(const ScalarGrid& g);

/// Cells whose corners are split by the test v >= 0, the same classification
/// marching_squares uses.
std::set<Cell> sign_change_cells(const ScalarGrid& g);

/// |A n B| / |A u B|; 1 when both are empty.
double cell_agreement(const std::set<Cell>& a, const std::set<Cell>& b);

}  // namespace h3body
