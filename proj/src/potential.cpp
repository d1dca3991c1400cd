#include <cmath>
#include <sstream>

#include "h3body/dynamics.hpp"
#include "h3body/errors.hpp"

namespace h3body {

Masses::Masses(double m1_, double m2_) : m1(m1_), m2(m2_) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) {
    std::ostringstream os;
    os << "masses must be strictly positive (got m1 = " << m1 << ", m2 = " << m2 << ")";
    throw InvalidInput(os.str());
  }
}

namespace {

cplx branch_checked(cplx z) {
  const cplx w = z * z - 1.0;
  if (std::abs(w) < 1e-14 * std::max(1.0, std::norm(z))) {
    std::ostringstream os;
    os << "potential evaluated at the branch point z = " << z.real() << "+" << z.imag() << "i";
    throw BranchPoint(os.str());
  }
  return w;
}

}  // namespace

Potential potential_gravitational(const Masses& m) {
  const double k = m.m1 * m.m2;
  auto value = [k](cplx z) {
    const cplx w = branch_checked(z);
    return -k * z / std::sqrt(w);
  };
  auto derivative = [k](cplx z) {
    const cplx w = branch_checked(z);
    return k / (w * std::sqrt(w));
  };
  return Potential("gravitational", value, derivative, true);
}

Potential potential_polynomial(std::vector<double> coeffs) {
  bool attractive = false;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (coeffs[k] < 0.0) {
      attractive = false;
      break;
    }
    if (coeffs[k] > 0.0) attractive = true;
  }
  auto value = [coeffs](cplx z) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  auto derivative = [coeffs](cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  return Potential("polynomial", value, derivative, attractive);
}

}  // namespace h3body
