// Aberth-Ehrlich simultaneous iteration, generic over the real type so the
// same code runs in double and in 113-bit arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace pairzero::detail {

template <class Cplx>
struct AberthResult {
  std::vector<Cplx> roots;
  bool converged = false;
  int sweeps = 0;
};

// Value of p and of the running bound sum |a_k| |z|^k, evaluated in the
// chart where |z| <= 1 (reversed polynomial otherwise). Returns p(z)/p'(z).
template <class Real, class Cplx>
struct NewtonRatio {
  Cplx ratio;
  Real value_abs;  // |p| in the evaluation chart
  Real bound;      // sum |a_k| |x|^k in the same chart
  bool exact_zero = false;
};

template <class Real, class Cplx>
NewtonRatio<Real, Cplx> newton_ratio(const std::vector<Cplx>& a, const Cplx& z) {
  using std::abs;
  const std::size_t n = a.size() - 1;
  NewtonRatio<Real, Cplx> out;
  if (abs(z) <= Real(1)) {
    Cplx p = a[n], dp = Cplx(0);
    Real s = abs(a[n]);
    const Real az = abs(z);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      s = s * az + abs(a[k]);
    }
    out.value_abs = abs(p);
    out.bound = s;
    if (p == Cplx(0)) {
      out.exact_zero = true;
      out.ratio = Cplx(0);
      return out;
    }
    out.ratio = p / dp;
    return out;
  }
  // q(v) = v^n p(1/v); p/p' = z / (n - v q'(v) / q(v))
  const Cplx v = Cplx(1) / z;
  Cplx q = a[0], dq = Cplx(0);
  Real s = abs(a[0]);
  const Real av = abs(v);
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * v + q;
    q = q * v + a[k];
    s = s * av + abs(a[k]);
  }
  out.value_abs = abs(q);
  out.bound = s;
  if (q == Cplx(0)) {
    out.exact_zero = true;
    out.ratio = Cplx(0);
    return out;
  }
  out.ratio = z / (Cplx(Real(n)) - v * dq / q);
  return out;
}

// Starting points from the upper convex hull (Newton polygon) of
// (k, log|a_k|): one circle per hull edge, radius matched to that edge.
template <class Real, class Cplx>
std::vector<Cplx> newton_polygon_start(const std::vector<Cplx>& a) {
  using std::abs;
  using std::log;
  const std::size_t n = a.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> lg;
  for (std::size_t k = 0; k <= n; ++k) {
    if (a[k] == Cplx(0)) continue;
    const double l = static_cast<double>(log(abs(a[k])));
    while (idx.size() >= 2) {
      const std::size_t i1 = idx[idx.size() - 2], i2 = idx.back();
      const double l1 = lg[lg.size() - 2], l2 = lg.back();
      // drop i2 when it lies on or below the chord i1 -> k
      const double cross = (static_cast<double>(i2) - static_cast<double>(i1)) * (l - l1) -
                           (l2 - l1) * (static_cast<double>(k) - static_cast<double>(i1));
      if (cross >= 0.0) {
        idx.pop_back();
        lg.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(k);
    lg.push_back(l);
  }
  std::vector<Cplx> z;
  z.reserve(n);
  const double sigma = 0.7;
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const std::size_t count = idx[e + 1] - idx[e];
    const double radius = std::exp((lg[e] - lg[e + 1]) / static_cast<double>(count));
    for (std::size_t m = 0; m < count; ++m) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(count) +
                         2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n) + sigma;
      z.push_back(Cplx(Real(radius * std::cos(ang)), Real(radius * std::sin(ang))));
    }
  }
  return z;
}

// Roots of sum_k a[k] z^k. Requires a.front() != 0 and a.back() != 0 and
// degree >= 1. A root is frozen once |p(z)| is within a few ulps of the
// rounding bound sum |a_k||z|^k; frozen roots get up to three Newton steps
// that are kept only when they lower |p|.
template <class Real, class Cplx>
AberthResult<Cplx> aberth(const std::vector<Cplx>& a, int max_sweeps = 500) {
  using std::abs;
  const std::size_t n = a.size() - 1;
  AberthResult<Cplx> res;
  res.roots = newton_polygon_start<Real, Cplx>(a);
  const Real eta = Real(4) * std::numeric_limits<Real>::epsilon() * Real(static_cast<double>(n + 1));
  std::vector<char> done(n, 0);
  std::size_t remaining = n;

  for (int sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    res.sweeps = sweep + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Cplx& zi = res.roots[i];
      const auto nr = newton_ratio<Real, Cplx>(a, zi);
      if (nr.exact_zero || nr.value_abs <= eta * nr.bound) {
        done[i] = 1;
        --remaining;
        continue;
      }
      Cplx s = Cplx(0);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        Cplx d = zi - res.roots[k];
        if (d == Cplx(0)) d = Cplx(std::numeric_limits<Real>::epsilon() * (Real(1) + abs(zi)));
        s += Cplx(1) / d;
      }
      const Cplx w = nr.ratio / (Cplx(1) - nr.ratio * s);
      zi -= w;
    }
  }
  res.converged = (remaining == 0);

  for (std::size_t i = 0; i < n; ++i) {
    Cplx z = res.roots[i];
    auto cur = newton_ratio<Real, Cplx>(a, z);
    for (int step = 0; step < 3 && !cur.exact_zero; ++step) {
      const Cplx cand = z - cur.ratio;
      const auto nxt = newton_ratio<Real, Cplx>(a, cand);
      // compare |p| in a common chart: scale by max(1,|z|)^n via the bound ratio
      if (nxt.value_abs / nxt.bound >= cur.value_abs / cur.bound) break;
      z = cand;
      cur = nxt;
    }
    res.roots[i] = z;
  }
  return res;
}

}  // namespace pairzero::detail
