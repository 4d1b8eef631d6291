#include "doctest.h"
#include "oracles.hpp"

#include "pairzero/errors.hpp"
#include "pairzero/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace pairzero;
using C = std::complex<double>;

namespace {

MajoranaPoly poly_from(int j, std::vector<C> d) {
  MajoranaPoly p;
  p.j = j;
  p.d = std::move(d);
  p.degree = 2 * j;
  while (p.degree > 0 && p.d[static_cast<std::size_t>(p.degree)] == 0.0) --p.degree;
  p.low = 0;
  while (p.low < p.degree && p.d[static_cast<std::size_t>(p.low)] == 0.0) ++p.low;
  return p;
}

std::vector<C> finite_values(const ZeroSet& z) {
  std::vector<C> v;
  for (const auto& p : z.expanded())
    if (!p.is_infinite()) v.push_back(p.value());
  return v;
}

int multiplicity_at(const ZeroSet& z, const SpherePoint& p) {
  int m = 0;
  for (const auto& x : z.zeros)
    if (chordal_distance(x.point, p) < 1e-12) m += x.multiplicity;
  return m;
}

}  // namespace

TEST_CASE("coherent overlap examples") {
  CHECK(std::abs(coherent_overlap(StateVector::dicke(4, -4), SpherePoint::finite(0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(coherent_overlap(StateVector::dicke(1, -1), SpherePoint::finite(1.0)) - 0.5) < 1e-15);
  const C v = coherent_overlap(StateVector::dicke(1, 0), SpherePoint::finite(C(0, 1)));
  CHECK(std::abs(v - C(0, std::sqrt(2.0) / 2)) < 1e-15);
  // at infinity: conj(c_j)
  StateVector s(1, {C(0.6, 0), C(0, 0), C(0, 0.8)});
  CHECK(std::abs(coherent_overlap(s, SpherePoint::infinity()) - C(0, -0.8)) < 1e-15);
  // continuity towards infinity
  CHECK(std::abs(coherent_overlap(s, SpherePoint::finite(1e9)) - C(0, -0.8)) < 1e-8);
}

TEST_CASE("Husimi function examples and range") {
  CHECK(husimi(StateVector::dicke(3, -3), SpherePoint::finite(0.0)) == doctest::Approx(1.0));
  CHECK(husimi(StateVector::dicke(1, -1), SpherePoint::finite(1.0)) == doctest::Approx(0.25));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    const auto s = oracle::random_state(1 + i % 10, rng);
    const double q = husimi(s, SpherePoint::finite(std::pow(10.0, g(rng)) * C(g(rng), g(rng))));
    CHECK(q >= 0.0);
    CHECK(q <= 1.0 + 1e-14);
  }
}

TEST_CASE("Husimi quadrature normalization") {
  CHECK(std::abs(husimi_quadrature(StateVector::dicke(10, -10), 128, 128) - 1.0) < 1e-8);
  const double r = 1.0 - std::sqrt(2.0);
  CHECK(std::abs(husimi_quadrature(StateVector(1, {1.0, 0.0, r}), 128, 128) - 1.0) < 1e-6);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i)
    CHECK(std::abs(husimi_quadrature(oracle::random_state(10, rng), 128, 128) - 1.0) < 1e-6);
  CHECK_THROWS_AS(husimi_quadrature(StateVector::dicke(1, 0), 32, 128), std::invalid_argument);
}

TEST_CASE("quadrature converges under grid refinement") {
  // j = 100 is not integrated exactly on 64 nodes
  std::mt19937_64 rng(23);
  const auto s = oracle::random_state(100, rng);
  const double e64 = std::abs(husimi_quadrature(s, 64, 64) - 1.0);
  const double e128 = std::abs(husimi_quadrature(s, 128, 128) - 1.0);
  const double e256 = std::abs(husimi_quadrature(s, 256, 256) - 1.0);
  CHECK(e64 > 1e-8);
  CHECK(e128 <= e64 / 4.0);
  CHECK(e256 < 1e-10);
}

TEST_CASE("Gauss-Legendre rule") {
  std::vector<double> x, w;
  gauss_legendre(20, x, w);
  double s = 0.0, m2 = 0.0, m38 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    m2 += w[i] * x[i] * x[i];
    m38 += w[i] * std::pow(x[i], 38);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(m38 == doctest::Approx(2.0 / 39.0).epsilon(1e-12));
}

TEST_CASE("Majorana polynomial examples") {
  SUBCASE("|1,0>") {
    const auto p = majorana_poly(StateVector::dicke(1, 0));
    CHECK(p.degree == 1);
    CHECK(p.low == 1);
    CHECK(std::abs(p.d[1] - std::sqrt(2.0)) < 1e-15);
    const auto z = poly_roots(p);
    CHECK(multiplicity_at(z, SpherePoint::finite(0.0)) == 1);
    CHECK(multiplicity_at(z, SpherePoint::infinity()) == 1);
  }
  SUBCASE("|j,-j>") {
    const auto p = majorana_poly(StateVector::dicke(10, -10));
    CHECK(p.degree == 0);
    const auto z = poly_roots(p);
    REQUIRE(z.zeros.size() == 1);
    CHECK(z.zeros[0].point.is_infinite());
    CHECK(z.zeros[0].multiplicity == 20);
  }
  SUBCASE("j = 1 pair state") {
    const auto z = poly_roots(majorana_poly(StateVector(1, {1.0, 0.0, 1.0 - std::sqrt(2.0)})));
    for (const auto& v : finite_values(z)) CHECK(std::abs(v * v - (1.0 + std::sqrt(2.0))) < 1e-14);
  }
  CHECK_THROWS_AS(majorana_poly(StateVector::dicke(1, 0), -1.0), std::invalid_argument);
}

TEST_CASE("Majorana polynomial round trip and reality") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto s = oracle::random_state(1 + i % 15, rng, i % 2 == 0);
    const auto p = majorana_poly(s);
    const auto q = majorana_poly(state_from_majorana(p));
    for (std::size_t k = 0; k < p.d.size(); ++k) CHECK(std::abs(p.d[k] - q.d[k]) < 1e-12);
    if (i % 2 == 0)
      for (const auto& x : p.d) CHECK(x.imag() == 0.0);
  }
}

TEST_CASE("root examples") {
  const auto z = poly_roots(poly_from(1, {-1.0, 0.0, 1.0}));
  auto v = finite_values(z);
  std::sort(v.begin(), v.end(), [](C a, C b) { return a.real() < b.real(); });
  REQUIRE(v.size() == 2);
  CHECK(std::abs(v[0] + 1.0) < 1e-15);
  CHECK(std::abs(v[1] - 1.0) < 1e-15);

  // j = 2 ground state at (3, 7): four finite roots, companion-matrix oracle
  const auto sp = diagonalize(build_hamiltonian(ModelParams::from_control(2, 3, 7)));
  const auto p = majorana_poly(sp.levels[0].state);
  const auto r = finite_values(poly_roots(p));
  REQUIRE(r.size() == 4);
  std::vector<C> a(p.d.begin() + p.low, p.d.begin() + p.degree + 1);
  CHECK(oracle::multiset_distance(r, oracle::companion_roots(a)) < 1e-10);
  for (const auto& x : r) {
    double dm = INFINITY, dc = INFINITY;
    for (const auto& y : r) {
      dm = std::min(dm, std::abs(y + x));
      dc = std::min(dc, std::abs(y - std::conj(x)));
    }
    CHECK(dm < 1e-12);
    CHECK(dc < 1e-12);
  }
}

TEST_CASE("monomials put all zeros at the poles") {
  for (int j = 1; j <= 6; ++j)
    for (int k = 0; k <= 2 * j; ++k) {
      const auto z = poly_roots(majorana_poly(StateVector::dicke(j, k - j)));
      CHECK(multiplicity_at(z, SpherePoint::finite(0.0)) == k);
      CHECK(multiplicity_at(z, SpherePoint::infinity()) == 2 * j - k);
      CHECK(z.total_multiplicity() == 2 * j);
    }
}

TEST_CASE("total multiplicity, vanishing amplitude and symmetry of zeros") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int rep = 0; rep < 40; ++rep) {
    const int j = 1 + rep % 12;
    const auto sp = diagonalize(build_hamiltonian(ModelParams::from_control(j, u(rng), u(rng))));
    for (const auto& lv : sp.levels) {
      if (lv.degenerate) continue;
      const auto raw = poly_roots(majorana_poly(lv.state));
      CHECK(raw.total_multiplicity() == 2 * j);
      const auto v = finite_values(raw);
      for (const auto& x : v) {
        CHECK(std::abs(coherent_overlap(lv.state, SpherePoint::finite(x))) <= 1e-9);
        CHECK(husimi(lv.state, SpherePoint::finite(x)) <= 1e-18);
      }
      const double radius = kDefaultClusterRadius;
      auto dist = [](C a, C b) { return chordal_distance(a, b); };
      std::vector<C> conj, neg;
      for (const auto& x : v) {
        conj.push_back(std::conj(x));
        neg.push_back(-x);
      }
      CHECK(oracle::hausdorff(v, conj, dist) <= 10 * radius);
      CHECK(oracle::hausdorff(v, neg, dist) <= 10 * radius);
    }
  }
  // random complex states: no symmetry, still 2j zeros
  for (int i = 0; i < 30; ++i) {
    const auto s = oracle::random_state(1 + i % 20, rng);
    const auto raw = poly_roots(majorana_poly(s));
    CHECK(raw.total_multiplicity() == 2 * s.j());
    for (const auto& x : finite_values(raw)) CHECK(std::abs(coherent_overlap(s, SpherePoint::finite(x))) <= 1e-9);
  }
}

TEST_CASE("clustering") {
  ZeroSet raw;
  raw.j = 1;
  raw.zeros = {{SpherePoint::finite(1.0 + 1e-9), 1}, {SpherePoint::finite(1.0 - 1e-9), 1}};
  auto c = cluster_zeros(raw, 1e-6);
  REQUIRE(c.zeros.size() == 1);
  CHECK(c.zeros[0].multiplicity == 2);
  CHECK(std::abs(c.zeros[0].point.value() - 1.0) < 1e-12);

  raw.zeros = {{SpherePoint::finite(1.0), 1}, {SpherePoint::finite(-1.0), 1}};
  CHECK(cluster_zeros(raw, 1e-6).zeros.size() == 2);

  // large finite roots merge with the point at infinity in the chordal metric
  raw.j = 2;
  raw.zeros = {{SpherePoint::infinity(), 2}, {SpherePoint::finite(1e9), 1}, {SpherePoint::finite(-1e9), 1}};
  c = cluster_zeros(raw, 1e-6);
  REQUIRE(c.zeros.size() == 1);
  CHECK(c.zeros[0].multiplicity == 4);
  CHECK(c.total_multiplicity() == 4);

  const auto sp = diagonalize(build_hamiltonian(ModelParams::from_control(10, 5, 5)));
  c = cluster_zeros(poly_roots(majorana_poly(sp.levels[0].state)), 1e-6);
  REQUIRE(c.zeros.size() == 1);
  CHECK(c.zeros[0].point.is_infinite());
  CHECK(c.zeros[0].multiplicity == 20);
  CHECK_THROWS_AS(cluster_zeros(raw, 0.0), std::invalid_argument);
}

TEST_CASE("collapse radius law") {
  CHECK(collapse_radius(1) == doctest::Approx(1e-11));
  CHECK(collapse_radius(2) == doctest::Approx(1e-5));
  CHECK(collapse_radius(4) == doctest::Approx(1e-2));
  CHECK_THROWS_AS(collapse_radius(0), std::invalid_argument);
}

TEST_CASE("residual check rejects roots of an inconsistent polynomial") {
  RootOptions o;
  o.max_sweeps = 1;
  std::vector<C> d(21, 1.0);
  CHECK_THROWS_AS(poly_roots(poly_from(10, d), o), ConvergenceError);
}
