#pragma once

#include <set>
#include <string>
#include <vector>

#include "h3body/contour.hpp"
#include "h3body/geometry.hpp"
#include "h3body/invariants.hpp"
#include "h3body/sweep.hpp"

namespace h3body {

/// Orbit in the Poincare ball. X is vertical; Y is horizontal and Z recedes
/// obliquely (cabinet projection: page = (Y + Z/(2 sqrt 2), X + Z/(2 sqrt 2))).
/// The unit circle drawn is the ball's silhouette in the X-Y plane.
std::string orbit_svg(const std::vector<BallPoint>& pts, const std::string& title);

/// Gamma = 0 contour over the (theta, psi) rectangle of the grid.
std::string gamma_curve_svg(const Contour& c, const Grid& g, const std::string& title);

/// Energy-Casimir mesh. Each coordinate is first scaled to [0, 1] over the
/// data; then page = (C_re + 0.35 C_im, H + 0.35 C_im), i.e. H vertical,
/// Re C horizontal and Im C receding obliquely. Constant-theta lines are blue,
/// constant-psi lines red; singular cells get a black marker at their centre.
std::string ec_svg(const std::vector<ECSample>& samples, const Grid& g,
                   const std::set<Cell>& singular, const std::string& title);

}  // namespace h3body
