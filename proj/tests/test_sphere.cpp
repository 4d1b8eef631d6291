#include "doctest.h"

#include "pairzero/sphere.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace pairzero;
using C = std::complex<double>;

TEST_CASE("chart round trip zeta -> (theta, phi) -> zeta") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const double scale = std::pow(10.0, 4.0 * g(rng) / 3.0);
    const C z = scale * C(g(rng), g(rng));
    const auto p = SpherePoint::finite(z);
    CHECK(p.theta() >= 0.0);
    CHECK(p.theta() <= std::numbers::pi);
    CHECK(p.phi() >= 0.0);
    CHECK(p.phi() < 2.0 * std::numbers::pi);
    const auto q = SpherePoint::from_angles(p.theta(), p.phi());
    // theta near pi carries little information about |zeta|, so large |zeta|
    // round-trips accurately only in the chordal metric
    CHECK(chordal_distance(p, q) <= 1e-12);
    if (std::abs(z) <= 100.0) CHECK(std::abs(q.value() - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("poles and the point at infinity") {
  CHECK(SpherePoint::infinity().theta() == std::numbers::pi);
  CHECK(SpherePoint::from_angles(std::numbers::pi, 1.0).is_infinite());
  CHECK(SpherePoint::finite(0.0).theta() == 0.0);
  CHECK(SpherePoint::finite(0.0).phi() == 0.0);
  CHECK(SpherePoint::infinity().phi() == 0.0);
  CHECK(SpherePoint::finite(0.0).is_pole());
  CHECK_FALSE(SpherePoint::finite(1e-300).is_infinite());
  // zeta = tan(theta/2) e^{-i phi}: phi = pi/2 is the negative imaginary axis
  const auto p = SpherePoint::from_angles(std::numbers::pi / 2, std::numbers::pi / 2);
  CHECK(std::abs(p.value() - C(0, -1)) < 1e-15);
  CHECK_THROWS_AS(SpherePoint::from_angles(4.0, 0.0), std::invalid_argument);
}

TEST_CASE("embedding is a unit vector and inverts") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    const C z = std::pow(10.0, g(rng)) * C(g(rng), g(rng));
    const auto e = SpherePoint::finite(z).embedding();
    CHECK(std::abs(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - 1.0) < 1e-14);
    const auto back = SpherePoint::from_embedding(e);
    REQUIRE_FALSE(back.is_infinite());
    CHECK(std::abs(back.value() - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
  CHECK(SpherePoint::from_embedding({0, 0, 1}).is_infinite());
  CHECK(SpherePoint::from_embedding({0, 0, -1}).value() == C(0.0));
}

TEST_CASE("chordal distance") {
  CHECK(chordal_distance(C(0), C(1)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(chordal_distance(SpherePoint::finite(0), SpherePoint::infinity()) == doctest::Approx(2.0));
  CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
  CHECK(chordal_distance(SpherePoint::finite(1e8), SpherePoint::infinity()) == doctest::Approx(2e-8));
  // equals the Euclidean distance of the embedded points
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int i = 0; i < 300; ++i) {
    const auto a = SpherePoint::finite(std::pow(10.0, g(rng)) * C(g(rng), g(rng)));
    const auto b = SpherePoint::finite(std::pow(10.0, g(rng)) * C(g(rng), g(rng)));
    const auto ea = a.embedding(), eb = b.embedding();
    const double d = std::hypot(ea[0] - eb[0], ea[1] - eb[1], ea[2] - eb[2]);
    CHECK(chordal_distance(a, b) == doctest::Approx(d).epsilon(1e-10));
    CHECK(chordal_distance(a, b) == doctest::Approx(chordal_distance(b, a)));
    // inversion z -> 1/z is an isometry
    CHECK(chordal_distance(SpherePoint::finite(1.0 / a.value()), SpherePoint::finite(1.0 / b.value())) ==
          doctest::Approx(chordal_distance(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("negation, conjugation, squaring") {
  const auto p = SpherePoint::finite(C(1, 2));
  CHECK(p.negated().value() == C(-1, -2));
  CHECK(p.conjugated().value() == C(1, -2));
  CHECK(p.squared().value() == C(-3, 4));
  CHECK(SpherePoint::infinity().squared().is_infinite());
  CHECK(SpherePoint::infinity().negated().is_infinite());
}
