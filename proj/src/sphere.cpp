#include "pairzero/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pairzero {

SpherePoint SpherePoint::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi) || !std::isfinite(phi))
    throw std::invalid_argument("SpherePoint::from_angles: theta must lie in [0, pi]");
  if (theta == std::numbers::pi) return infinity();
  return finite(std::polar(std::tan(0.5 * theta), -phi));
}

SpherePoint SpherePoint::from_embedding(const std::array<double, 3>& x) noexcept {
  const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (!(n > 0.0)) return SpherePoint();
  const double X = x[0] / n, Y = x[1] / n, Z = x[2] / n;
  // zeta = (X + iY) / (1 - Z); use 1 - Z = (X^2 + Y^2) / (1 + Z) near the top
  const double rho2 = X * X + Y * Y;
  const double one_minus_z = Z > 0.0 ? rho2 / (1.0 + Z) : 1.0 - Z;
  if (one_minus_z == 0.0) return infinity();
  return finite({X / one_minus_z, Y / one_minus_z});
}

double SpherePoint::theta() const noexcept {
  if (infinite_) return std::numbers::pi;
  return 2.0 * std::atan(std::abs(zeta_));
}

double SpherePoint::phi() const noexcept {
  if (is_pole()) return 0.0;
  double p = -std::arg(zeta_) + 0.0;  // no negative zero
  if (p < 0.0) p += 2.0 * std::numbers::pi;
  if (p >= 2.0 * std::numbers::pi) p -= 2.0 * std::numbers::pi;
  return p;
}

std::array<double, 3> SpherePoint::embedding() const noexcept {
  if (infinite_) return {0.0, 0.0, 1.0};
  const double r2 = std::norm(zeta_);
  if (r2 > 1.0) {
    // divide through by |z|^2 to stay accurate for large |z|
    const std::complex<double> w = 1.0 / zeta_;
    const double w2 = std::norm(w);
    const double d = 1.0 + w2;
    // 2 z / (1 + |z|^2) = 2 conj(w) / (1 + |w|^2)
    return {2.0 * w.real() / d, -2.0 * w.imag() / d, (1.0 - w2) / d};
  }
  const double d = 1.0 + r2;
  return {2.0 * zeta_.real() / d, 2.0 * zeta_.imag() / d, (r2 - 1.0) / d};
}

double chordal_distance(std::complex<double> a, std::complex<double> b) noexcept {
  return chordal_distance(SpherePoint::finite(a), SpherePoint::finite(b));
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const auto za = a.value();
  const auto zb = b.value();
  const double na = std::abs(za), nb = std::abs(zb);
  if (na > 1.0 && nb > 1.0) {
    // same distance in the inverted chart w = 1/z
    const auto wa = 1.0 / za, wb = 1.0 / zb;
    return 2.0 * std::abs(wa - wb) / std::sqrt((1.0 + std::norm(wa)) * (1.0 + std::norm(wb)));
  }
  return 2.0 * std::abs(za - zb) / std::sqrt((1.0 + na * na) * (1.0 + nb * nb));
}

}  // namespace pairzero
