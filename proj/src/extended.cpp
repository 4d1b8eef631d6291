#include "pairzero/extended.hpp"

#include "pairzero/detail/aberth.hpp"
#include "pairzero/detail/tridiagonal.hpp"
#include "pairzero/errors.hpp"
#include "pairzero/roots.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairzero {

namespace {

using Real = boost::multiprecision::cpp_bin_float_quad;
using Cplx = boost::multiprecision::cpp_complex_quad;

}  // namespace

namespace {

ExtendedZeros compute(const ModelParams& params, const Real& gx, const Real& gy, int state_index) {
  const auto h = build_hamiltonian(params);
  const auto spec = diagonalize(h);
  if (state_index < 0 || state_index >= static_cast<int>(spec.levels.size()))
    throw std::invalid_argument("state index out of range");
  const Eigenpair& lv = spec.levels[static_cast<std::size_t>(state_index)];
  if (lv.degenerate) throw DegenerateStateError("requested eigenstate is degenerate");

  ExtendedZeros out;
  out.energy = lv.energy;
  out.parity = lv.parity;
  const int j = params.j();
  const int p = lv.parity == Parity::odd ? 1 : 0;

  // the double result is exact when the sector is diagonal
  if (params.lambda() == 0.0) {
    out.zeros = poly_roots(majorana_poly(lv.state));
    return out;
  }

  const Real jj = j;
  const Real eps = params.epsilon();
  const Real gamma = eps * (gx + gy) / (2 * (2 * jj - 1));
  const Real lambda = eps * (gx - gy) / (2 * (2 * jj - 1));

  std::vector<Real> diag, off;
  std::vector<int> slots;
  for (int slot = p; slot <= 2 * j; slot += 2) {
    const Real m = slot - j;
    slots.push_back(slot);
    diag.push_back(eps * m + gamma * (jj * (jj + 1) - m * m));
    if (slot + 2 <= 2 * j) off.push_back(lambda / 2 * sqrt((jj - m) * (jj + m + 1) * (jj - m - 1) * (jj + m + 2)));
  }

  const Real e0 = lv.energy;
  const Real pad = Real(1e-8) * (Real(spec.h_norm) + 1);
  Real lo = e0 - pad, hi = e0 + pad;
  const int k = lv.sector_index;
  if (!(detail::sturm_count(diag, off, lo) <= k && detail::sturm_count(diag, off, hi) > k)) {
    lo = -Real(spec.h_norm) - 1;
    hi = Real(spec.h_norm) + 1;
  }
  const Real e = detail::bisect_eigenvalue(diag, off, k, lo, hi);

  std::size_t twist = 0;
  double best = -1.0;
  for (std::size_t b = 0; b < slots.size(); ++b) {
    const double a = std::abs(lv.state.coeffs()[static_cast<std::size_t>(slots[b])]);
    if (a > best) {
      best = a;
      twist = b;
    }
  }
  const std::vector<Real> v = detail::twisted_eigenvector(diag, off, e, twist);

  // pair polynomial Q(w), w = zeta^2: q_s = c_{slot} sqrt(C(2j, slot)), slot = 2s + p
  std::vector<Cplx> q;
  Real sb = 1;  // sqrt(C(2j, slot)) advanced along the slots
  int at = 0;
  for (std::size_t b = 0; b < slots.size(); ++b) {
    while (at < slots[b]) {
      sb *= sqrt(Real(2 * j - at) / Real(at + 1));
      ++at;
    }
    q.emplace_back(v[b] * sb, Real(0));
  }
  while (q.size() > 1 && q.back() == Cplx(0)) q.pop_back();
  std::size_t low = 0;
  while (low + 1 < q.size() && q[low] == Cplx(0)) ++low;
  std::vector<Cplx> qr(q.begin() + static_cast<std::ptrdiff_t>(low), q.end());

  out.zeros.j = j;
  const int zero_mult = p + 2 * static_cast<int>(low);
  if (zero_mult > 0) out.zeros.zeros.push_back({SpherePoint::finite(0.0), zero_mult});
  if (qr.size() > 1) {
    auto res = detail::aberth<Real, Cplx>(qr, 2000);
    std::vector<Complex> w;
    for (const auto& z : res.roots) w.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    if (!res.converged) throw ConvergenceError("extended-precision root iteration did not converge", w);
    symmetrize_conjugates(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Complex sd = std::sqrt(w[i]);
      out.zeros.zeros.push_back({SpherePoint::finite(sd), 1});
      out.zeros.zeros.push_back({SpherePoint::finite(-sd), 1});
    }
    out.pair_roots = std::move(w);
  }
  const int degree = p + 2 * static_cast<int>(q.size() - 1);
  if (2 * j - degree > 0) out.zeros.zeros.push_back({SpherePoint::infinity(), 2 * j - degree});
  return out;
}

}  // namespace

ExtendedZeros extended_eigenstate_zeros(const ModelParams& params, int state_index) {
  return compute(params, Real(params.gamma_x()), Real(params.gamma_y()), state_index);
}

ExtendedZeros extended_collapse_zeros(int j, double c, int k, int branch, int state_index, double epsilon) {
  checked_spin(j);
  if (k < 0 || k >= j) throw std::invalid_argument("collapse index k must be in 0..j-1");
  if (branch != -1 && branch != 1) throw std::invalid_argument("branch must be -1 or +1");
  const Real a = 2 * Real(j) - 1;
  const Real r = a / (a - 2 * k);
  const Real cc = c;
  const Real rad = cc * cc / 4 - r * r;
  if (rad < 0) throw std::invalid_argument("the line does not meet this hyperbola");
  const Real gx = cc / 2 + branch * sqrt(rad);
  const Real gy = cc - gx;
  const auto params = ModelParams::from_control(j, static_cast<double>(gx), static_cast<double>(gy), epsilon);
  return compute(params, gx, gy, state_index);
}

double extended_collapse_radius(int multiplicity) {
  if (multiplicity < 1) throw std::invalid_argument("extended_collapse_radius: multiplicity must be >= 1");
  return 10.0 * std::pow(1e-24, 1.0 / multiplicity);
}

}  // namespace pairzero
