// sphere.hpp: points of the Riemann sphere in the chart zeta = tan(theta/2) e^{-i phi}.
#pragma once

#include <array>
#include <complex>

namespace pairzero {

class SpherePoint {
 public:
  SpherePoint() = default;  // zeta = 0
  static SpherePoint finite(std::complex<double> zeta) noexcept { return SpherePoint(zeta, false); }
  static SpherePoint infinity() noexcept { return SpherePoint({0.0, 0.0}, true); }
  // theta in [0, pi]; theta == pi is the point at infinity
  static SpherePoint from_angles(double theta, double phi);
  // inverse of embedding(); the vector need not be normalized
  static SpherePoint from_embedding(const std::array<double, 3>& x) noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  // only meaningful when finite
  std::complex<double> value() const noexcept { return zeta_; }

  double theta() const noexcept;
  // in [0, 2 pi); 0 at both poles by convention
  double phi() const noexcept;
  bool is_pole() const noexcept { return infinite_ || zeta_ == std::complex<double>(0.0); }

  // unit vector (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2); infinity -> (0, 0, 1)
  std::array<double, 3> embedding() const noexcept;

  SpherePoint negated() const noexcept { return infinite_ ? *this : finite(-zeta_); }
  SpherePoint conjugated() const noexcept { return infinite_ ? *this : finite(std::conj(zeta_)); }
  SpherePoint squared() const noexcept { return infinite_ ? *this : finite(zeta_ * zeta_); }

 private:
  SpherePoint(std::complex<double> z, bool inf) : zeta_(z), infinite_(inf) {}

  std::complex<double> zeta_{0.0, 0.0};
  bool infinite_ = false;
};

// Chordal distance on the unit-diameter-2 sphere: 2|a-b| / sqrt((1+|a|^2)(1+|b|^2)),
// 2 / sqrt(1+|a|^2) against infinity. Range [0, 2].
double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept;
double chordal_distance(std::complex<double> a, std::complex<double> b) noexcept;

}  // namespace pairzero
