// phase_space.hpp: spin coherent states, Husimi amplitude and its zeros.
//
// The amplitude <psi|zeta> = (1+|zeta|^2)^{-j} P(zeta) with the Majorana
// polynomial P(zeta) = sum_k d_k zeta^k, d_k = conj(c_{k-j}) sqrt(C(2j, k)).
#pragma once

#include "pairzero/sphere.hpp"
#include "pairzero/spin_core.hpp"

#include <vector>

namespace pairzero {

struct MajoranaPoly {
  int j = 0;
  std::vector<Complex> d;  // 2j+1 coefficients, d[k] multiplies zeta^k
  int degree = 0;          // largest k with d[k] counted as nonzero
  int low = 0;             // smallest such k: order of the zero at zeta = 0

  // sum_k d_k zeta^k; at infinity the top coefficient d_{2j} (opposite chart)
  Complex evaluate(const SpherePoint& z) const;
  // |P(z)| / max(1, |z|)^degree, evaluated without overflow
  double scaled_abs(Complex z) const;
  double max_abs() const;
};

struct Zero {
  SpherePoint point;
  int multiplicity = 1;
};

struct ZeroSet {
  int j = 0;
  std::vector<Zero> zeros;
  int total_multiplicity() const noexcept;
  // one entry per unit of multiplicity
  std::vector<SpherePoint> expanded() const;
};

Complex coherent_overlap(const StateVector& state, const SpherePoint& z);
double husimi(const StateVector& state, const SpherePoint& z);

// Gauss-Legendre in cos(theta) times a uniform phi grid; both >= 64.
// Returns the integral of Q with measure (2j+1)/(4 pi) sin(theta) dtheta dphi.
double husimi_quadrature(const StateVector& state, int n_theta, int n_phi);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// degree_threshold is relative to max|d|; 0 means only exact zeros are
// dropped, which is the right choice for sector eigenvectors whose
// off-parity coefficients are exactly zero.
MajoranaPoly majorana_poly(const StateVector& state, double degree_threshold = 0.0);
// inverse map: c_m = conj(d_{j+m}) / sqrt(C(2j, j+m)), normalized
StateVector state_from_majorana(const MajoranaPoly& p);

// sqrt(C(n, k)) for k = 0..n, computed by the ratio recurrence
std::vector<double> sqrt_binomials(int n);

struct RootOptions {
  // For polynomials with only even (odd) powers, find the roots w of Q with
  // P = zeta^p Q(zeta^2) and emit +-sqrt(w); the result is exactly
  // symmetric under zeta -> -zeta.
  bool use_parity = true;
  int max_sweeps = 500;
  // verify |P(z)| <= tol * max|d| * max(1,|z|)^deg for every finite root
  double residual_tol = 1e-10;
};

// Raw roots, every finite root with multiplicity 1; the zero at the origin
// (from vanishing low coefficients) and at infinity (degree deficiency) are
// reported as single entries with their exact multiplicities.
ZeroSet poly_roots(const MajoranaPoly& p, const RootOptions& opts = {});

// Single-linkage clustering in the chordal metric; each cluster is placed at
// the multiplicity-weighted mean of the embedded points.
ZeroSet cluster_zeros(const ZeroSet& raw, double radius);

inline constexpr double kDefaultClusterRadius = 1e-6;
// 10 * (1e-12)^{1/m}
double collapse_radius(int multiplicity);

}  // namespace pairzero
