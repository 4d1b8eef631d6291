#include "doctest.h"
#include "oracles.hpp"

#include "pairzero/errors.hpp"
#include "pairzero/roots.hpp"

#include <algorithm>
#include <random>

using namespace pairzero;
using C = std::complex<double>;

namespace {

std::vector<C> from_roots(const std::vector<C>& r) {
  std::vector<C> a{1.0};
  for (const auto& z : r) {
    std::vector<C> b(a.size() + 1, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      b[k + 1] += a[k];
      b[k] -= z * a[k];
    }
    a = b;
  }
  return a;
}

}  // namespace

TEST_CASE("simple examples") {
  const std::vector<C> p{-1.0, 0.0, 1.0};  // z^2 - 1
  auto r = aberth_roots(p);
  std::sort(r.begin(), r.end(), [](C a, C b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] + 1.0) < 1e-14);
  CHECK(std::abs(r[1] - 1.0) < 1e-14);
  CHECK(std::abs(aberth_roots(std::vector<C>{2.0, 1.0})[0] + 2.0) < 1e-15);
}

TEST_CASE("agrees with companion-matrix eigenvalues on random polynomials") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 30;
    std::vector<C> a(static_cast<std::size_t>(n + 1));
    for (auto& x : a) x = {g(rng), g(rng)};
    const auto r = aberth_roots(a);
    const auto o = oracle::companion_roots(a);
    CHECK(oracle::multiset_distance(r, o) < 1e-8);
  }
}

TEST_CASE("coefficients spanning many orders of magnitude") {
  // roots 10^-6 .. 10^6 on a spiral
  std::vector<C> roots;
  for (int k = 0; k < 13; ++k) roots.push_back(std::polar(std::pow(10.0, k - 6.0), 0.7 * k));
  const auto r = aberth_roots(from_roots(roots));
  for (const auto& z : roots) {
    double best = INFINITY;
    for (const auto& w : r) best = std::min(best, std::abs(w - z) / std::abs(z));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("multiple roots are resolved to the expected perturbation order") {
  // (z - 1)^4 (z + 2): cluster spread of order u^{1/4}
  const auto r = aberth_roots(from_roots({1.0, 1.0, 1.0, 1.0, -2.0}));
  int near_one = 0;
  for (const auto& z : r)
    if (std::abs(z - 1.0) < 1e-3) ++near_one;
  CHECK(near_one == 4);
}

TEST_CASE("quad precision resolves clusters double precision cannot") {
  // (z - 1)^8 (z - 3) has exact integer coefficients; a multiplicity-8 root
  // spreads like u^{1/8}: about 1e-2 in double, 6e-5 in quad
  std::vector<C> all(8, 1.0);
  all.push_back(3.0);
  const auto a = from_roots(all);
  auto spread = [](const std::vector<C>& r) {
    double s = 0.0;
    for (const auto& z : r)
      if (std::abs(z - 3.0) > 0.5) s = std::max(s, std::abs(z - 1.0));
    return s;
  };
  CHECK(spread(aberth_roots(a)) > 1e-3);
  CHECK(spread(aberth_roots_quad(a)) < 3e-4);
}

TEST_CASE("input validation and the iteration cap") {
  CHECK_THROWS_AS(aberth_roots(std::vector<C>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(aberth_roots(std::vector<C>{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(aberth_roots(std::vector<C>{1.0, 0.0}), std::invalid_argument);
  std::vector<C> hard(41, 1.0);
  try {
    aberth_roots(hard, 1);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.partial().size() == 40);
  }
}

TEST_CASE("conjugate symmetrization of real-polynomial roots") {
  std::vector<C> r{{1.0, 1e-14}, {2.0, 3.0}, {2.0 + 1e-13, -3.0}, {-1.0, -2e-15}};
  symmetrize_conjugates(r);
  CHECK(r[0].imag() == 0.0);
  CHECK(r[3].imag() == 0.0);
  CHECK(r[1] == std::conj(r[2]));
  // pair of nearly real roots that are a genuine conjugate pair stays complex
  std::vector<C> s{{1.0, 1e-3}, {1.0, -1e-3}};
  symmetrize_conjugates(s);
  CHECK(s[0] == std::conj(s[1]));
  CHECK(s[0].imag() != 0.0);
}
