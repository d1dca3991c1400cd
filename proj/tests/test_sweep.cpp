#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cli/commands.hpp"
#include "h3body/contour.hpp"
#include "h3body/errors.hpp"
#include "h3body/sweep.hpp"

using namespace h3body;

namespace {

ScalarGrid sample(int n, double lo, double hi, double (*f)(double, double)) {
  ScalarGrid g;
  g.nx = g.ny = n;
  for (int k = 0; k < n; ++k) {
    g.x.push_back(lo + (hi - lo) * k / (n - 1));
    g.y.push_back(lo + (hi - lo) * k / (n - 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.values.push_back(f(g.x[i], g.y[j]));
  return g;
}

}  // namespace

TEST(Grid, Validation) {
  EXPECT_THROW(make_grid(32, 0.0, 3.0, 32), InvalidInput);
  EXPECT_THROW(make_grid(32, 2.0, 1.0, 32), InvalidInput);
  EXPECT_THROW(make_grid(1, 0.1, 3.0, 32), InvalidInput);
  const Grid g = make_grid(32, 0.1, 3.0, 32);
  EXPECT_EQ(g.theta(0), 0.0);
  EXPECT_LT(g.theta(31), std::numbers::pi);
  EXPECT_EQ(g.psi(0), 0.1);
  EXPECT_EQ(g.psi(31), 3.0);
}

TEST(Sweep, ParallelMatchesSerialExactly) {
  const Masses m(1.0, 2.0);
  const Grid g = make_grid(16, 0.1, 3.0, 12);
  const auto a = re_sweep_serial(m, g), b = re_sweep_parallel(m, g);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].gamma, b[k].gamma);
    EXPECT_EQ(a[k].residual, b[k].residual);
    EXPECT_EQ(a[k].verdict, b[k].verdict);
  }
  const auto ea = ec_sweep_serial(m, g), eb = ec_sweep_parallel(m, g);
  for (std::size_t k = 0; k < ea.size(); ++k) {
    EXPECT_EQ(ea[k].point.H, eb[k].point.H);
    EXPECT_EQ(ea[k].point.C_im, eb[k].point.C_im);
  }
  EXPECT_EQ(gamma_grid_serial(m, g), gamma_grid_parallel(m, g));
  EXPECT_EQ(casimir_det_grid_serial(m, g), casimir_det_grid_parallel(m, g));
}

TEST(Sweep, VerdictFollowsGammaSign) {
  const Masses m(1.0, 2.0);
  for (const auto& r : re_sweep_parallel(m, make_grid(32, 0.1, 3.0, 32))) {
    if (r.gamma > 0) EXPECT_EQ(r.verdict, Stability::LinearlyUnstable);
    if (r.gamma < 0) EXPECT_TRUE(r.verdict == Stability::LyapunovStable || r.verdict == Stability::Degenerate);
    EXPECT_LT(r.residual, 1e-10);
  }
}

TEST(MarchingSquares, Circle) {
  const auto g = sample(41, -1.0, 1.0, [](double x, double y) { return x * x + y * y - 0.36; });
  const Contour c = marching_squares(g);
  EXPECT_EQ(c.components, 1);
  EXPECT_GT(c.segments.size(), 20u);
  const double h = 2.0 / 40;
  for (const auto& s : c.segments) EXPECT_NEAR(std::hypot(s.a.x, s.a.y), 0.6, h * h);
  EXPECT_EQ(c.cells, sign_change_cells(g));
}

TEST(MarchingSquares, TwoBlobsAndEmpty) {
  const auto g = sample(41, -1.0, 1.0, [](double x, double y) {
    return std::min(std::hypot(x - 0.5, y) - 0.2, std::hypot(x + 0.5, y) - 0.2);
  });
  EXPECT_EQ(marching_squares(g).components, 2);
  const auto flat = sample(5, 0.0, 1.0, [](double, double) { return 1.0; });
  EXPECT_EQ(marching_squares(flat).components, 0);
  EXPECT_TRUE(sign_change_cells(flat).empty());
}

TEST(MarchingSquares, SaddleEmitsTwoSegments) {
  ScalarGrid g{2, 2, {0.0, 1.0}, {0.0, 1.0}, {1.0, -1.0, -1.0, 1.0}};
  const Contour c = marching_squares(g);
  EXPECT_EQ(c.segments.size(), 2u);
  EXPECT_EQ(c.components, 2);
}

TEST(CellAgreement, Jaccard) {
  const std::set<Cell> a{{0, 0}, {0, 1}, {1, 1}}, b{{0, 1}, {1, 1}, {2, 2}};
  EXPECT_DOUBLE_EQ(cell_agreement(a, b), 0.5);
  EXPECT_DOUBLE_EQ(cell_agreement({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(cell_agreement(a, a), 1.0);
}

TEST(GammaContour, ConnectedAndAccurate) {
  const Masses m(1.0, 2.0);
  const Grid g = make_grid(32, 0.1, 3.0, 32);
  const ScalarGrid s = cli::scalar_grid(g, gamma_grid_parallel(m, g));
  const Contour c = marching_squares(s);
  EXPECT_EQ(c.components, 1);
  ASSERT_FALSE(c.segments.empty());

  // Refinement oracle: linear interpolation along an edge misses the root by
  // at most h^2/8 max|f''|, estimated from the edge's second difference.
  for (const auto& seg : c.segments)
    for (auto [p, edge] : {std::pair{seg.a, seg.edge_a}, {seg.b, seg.edge_b}}) {
      const long node = edge / 2;
      const int i = static_cast<int>(node / g.psi_steps), j = static_cast<int>(node % g.psi_steps);
      const bool horizontal = edge % 2 == 0;
      const double ax = s.x[i], ay = s.y[j];
      const double bx = horizontal ? s.x[i + 1] : ax, by = horizontal ? ay : s.y[j + 1];
      const double second = gamma({ax, ay, m}) + gamma({bx, by, m}) - 2 * gamma({(ax + bx) / 2, (ay + by) / 2, m});
      EXPECT_LE(std::abs(gamma({p.x, p.y, m})), 2.0 * std::abs(second) + 1e-12);
    }
}

TEST(SingularCells, MatchGammaContour) {
  const Masses m(1.0, 2.0);
  const Grid g = make_grid(32, 0.1, 3.0, 32);
  const auto gamma_cells = sign_change_cells(cli::scalar_grid(g, gamma_grid_parallel(m, g)));
  const auto singular = cli::ec_singular_cells(g, casimir_det_grid_parallel(m, g));
  EXPECT_GE(cell_agreement(gamma_cells, singular), 0.95);
}
