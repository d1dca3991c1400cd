#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "h3body/biquaternion.hpp"
#include "h3body/contour.hpp"
#include "h3body/sweep.hpp"

namespace h3body::cli {

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 2 input/validation error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a+bi", "a-bi", "bi", "a"; 'j' is accepted for 'i'.
cplx parse_complex(const std::string& text);

ScalarGrid scalar_grid(const Grid& g, const std::vector<double>& values);

/// Cells where the Casimir map (theta, psi) -> C loses rank: its Jacobian
/// determinant changes sign across the cell corners.
std::set<Cell> ec_singular_cells(const Grid& g, const std::vector<double>& casimir_det);

}  // namespace h3body::cli
