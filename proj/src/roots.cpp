#include "pairzero/roots.hpp"

#include "pairzero/detail/aberth.hpp"
#include "pairzero/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pairzero {

namespace {

void check_input(std::span<const std::complex<double>> c) {
  if (c.size() < 2) throw std::invalid_argument("aberth_roots: degree must be >= 1");
  if (c.front() == 0.0 || c.back() == 0.0)
    throw std::invalid_argument("aberth_roots: leading and constant coefficients must be nonzero");
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(std::span<const std::complex<double>> coeffs,
                                               int max_sweeps) {
  check_input(coeffs);
  std::vector<std::complex<double>> a(coeffs.begin(), coeffs.end());
  auto res = detail::aberth<double, std::complex<double>>(a, max_sweeps);
  if (!res.converged)
    throw ConvergenceError("Aberth iteration did not converge in " + std::to_string(max_sweeps) +
                               " sweeps",
                           res.roots);
  return res.roots;
}

std::vector<std::complex<double>> aberth_roots_quad(std::span<const std::complex<double>> coeffs,
                                                    int max_sweeps) {
  using boost::multiprecision::cpp_bin_float_quad;
  using boost::multiprecision::cpp_complex_quad;
  check_input(coeffs);
  std::vector<cpp_complex_quad> a;
  a.reserve(coeffs.size());
  for (const auto& c : coeffs) a.emplace_back(cpp_bin_float_quad(c.real()), cpp_bin_float_quad(c.imag()));
  auto res = detail::aberth<cpp_bin_float_quad, cpp_complex_quad>(a, max_sweeps);
  std::vector<std::complex<double>> out;
  out.reserve(res.roots.size());
  for (const auto& z : res.roots)
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  if (!res.converged)
    throw ConvergenceError("extended-precision Aberth iteration did not converge", out);
  return out;
}

void symmetrize_conjugates(std::vector<std::complex<double>>& roots) {
  const std::size_t n = roots.size();
  std::vector<char> used(n, 0);
  // process in order of |Im| so near-real roots claim themselves first
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(roots[a].imag()) < std::abs(roots[b].imag());
  });
  for (std::size_t i : order) {
    if (used[i]) continue;
    const auto zc = std::conj(roots[i]);
    std::size_t best = i;
    double best_d = std::abs(roots[i] - zc);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || used[k]) continue;
      const double d = std::abs(roots[k] - zc);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    used[i] = 1;
    if (best == i) {
      roots[i] = {roots[i].real(), 0.0};
      continue;
    }
    used[best] = 1;
    const std::complex<double> m = 0.5 * (roots[i] + std::conj(roots[best]));
    roots[i] = m;
    roots[best] = std::conj(m);
  }
}

}  // namespace pairzero
