// Symmetric tridiagonal helpers shared by the double and the extended-precision
// paths. Real is any floating type with the usual arithmetic and ADL abs/sqrt.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace pairzero::detail {

// Number of eigenvalues strictly below x (Sturm count via LDL^T inertia).
template <class Real>
int sturm_count(const std::vector<Real>& diag, const std::vector<Real>& off, const Real& x) {
  using std::abs;
  const std::size_t n = diag.size();
  const Real tiny = std::numeric_limits<Real>::min() / std::numeric_limits<Real>::epsilon();
  int count = 0;
  Real q = diag[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (abs(q) < tiny) q = tiny;
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (0-based) by bisection inside [lo, hi].
template <class Real>
Real bisect_eigenvalue(const std::vector<Real>& diag, const std::vector<Real>& off, int k, Real lo,
                       Real hi) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int it = 0; it < 4 * std::numeric_limits<Real>::digits; ++it) {
    Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2 * eps * std::max(abs(lo), abs(hi))) break;
    if (sturm_count(diag, off, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

// Eigenvector for eigenvalue `e` of an unreduced symmetric tridiagonal matrix.
// Recurs from both ends towards `twist` (the position of the largest
// component), which is the growing direction on each side; every component
// then carries small relative error even when it is exponentially small.
// The result is not normalized.
template <class Real>
std::vector<Real> twisted_eigenvector(const std::vector<Real>& diag, const std::vector<Real>& off,
                                      const Real& e, std::size_t twist) {
  using std::abs;
  const std::size_t n = diag.size();
  std::vector<Real> v(n, Real(0));
  if (n == 1) {
    v[0] = 1;
    return v;
  }
  const Real big = Real(1e100);

  // forward from the top: row i gives off[i] v[i+1] = (e - d[i]) v[i] - off[i-1] v[i-1]
  v[0] = 1;
  for (std::size_t i = 0; i < twist; ++i) {
    Real next = (e - diag[i]) * v[i];
    if (i > 0) next -= off[i - 1] * v[i - 1];
    v[i + 1] = next / off[i];
    if (abs(v[i + 1]) > big)
      for (std::size_t k = 0; k <= i + 1; ++k) v[k] /= big;
  }

  // backward from the bottom
  std::vector<Real> w(n, Real(0));
  w[n - 1] = 1;
  for (std::size_t i = n - 1; i > twist; --i) {
    Real prev = (e - diag[i]) * w[i];
    if (i + 1 < n) prev -= off[i] * w[i + 1];
    w[i - 1] = prev / off[i - 1];
    if (abs(w[i - 1]) > big)
      for (std::size_t k = i - 1; k < n; ++k) w[k] /= big;
  }

  const Real scale = v[twist] / w[twist];
  for (std::size_t k = twist + 1; k < n; ++k) v[k] = w[k] * scale;
  return v;
}

}  // namespace pairzero::detail
