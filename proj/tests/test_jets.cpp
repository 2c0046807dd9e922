#include <doctest.h>

#include <cmath>

#include "coulstat/errors.hpp"
#include "coulstat/jets.hpp"
#include "test_oracles.hpp"

using namespace coulstat;
using oracles::Poly;
using oracles::TestRng;

namespace {

Jet poly_jet(const Poly& p, double x, int order) {
  std::vector<double> d(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) d[k] = p.deriv_at(x, k);
  return Jet(x, std::move(d));
}

Poly random_poly(TestRng& rng, int degree) {
  Poly p;
  p.c.resize(degree + 1);
  for (double& c : p.c) c = rng.uniform(-2.0, 2.0);
  return p;
}

} // namespace

TEST_CASE("jet product matches symbolic polynomial products") {
  TestRng rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    const int order = 1 + static_cast<int>(rng.next() % 8); // up to 8
    const Poly p = random_poly(rng, 1 + static_cast<int>(rng.next() % 5));
    const Poly q = random_poly(rng, 1 + static_cast<int>(rng.next() % 5));
    const double x = rng.uniform(-1.5, 1.5);

    const Jet jp = poly_jet(p, x, order);
    const Jet jq = poly_jet(q, x, order);
    const Jet prod = jp * jq;
    const Poly exact = p * q;
    for (int k = 0; k <= order; ++k) {
      const double want = exact.deriv_at(x, k);
      const double scale = std::max(1.0, std::fabs(want));
      CHECK(std::fabs(prod.deriv(k) - want) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("jet quotient reconstructs the constant-one jet") {
  TestRng rng(777);
  int tested = 0;
  while (tested < 30) {
    const Poly g = random_poly(rng, 4);
    const double x = rng.uniform(-1.5, 1.5);
    if (std::fabs(g.eval(x)) <= 1e-6) continue;
    ++tested;
    const Jet jg = poly_jet(g, x, 8);
    const Jet one = Jet::constant(x, 1.0, 8) / jg * jg;
    CHECK(std::fabs(one.value() - 1.0) <= 1e-12);
    for (int k = 1; k <= 8; ++k) {
      // scale against the raw derivative magnitudes the cancellation sees
      const double scale = std::max(1.0, std::fabs(jg.deriv(k)));
      CHECK(std::fabs(one.deriv(k)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("jet composition matches symbolic polynomial composition") {
  TestRng rng(424242);
  for (int trial = 0; trial < 25; ++trial) {
    const Poly outer = random_poly(rng, 4);
    const Poly inner = random_poly(rng, 3);
    const double x = rng.uniform(-1.0, 1.0);
    const int order = 6;

    const Jet jin = poly_jet(inner, x, order);
    const Jet jout = poly_jet(outer, jin.value(), order);
    const Jet composed = Jet::compose(jout, jin);
    const Poly exact = outer.compose(inner);
    for (int k = 0; k <= order; ++k) {
      const double want = exact.deriv_at(x, k);
      const double scale = std::max(1.0, std::fabs(want));
      CHECK(std::fabs(composed.deriv(k) - want) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("jet sums, scalars, derivative shift") {
  const Poly p{{1.0, -2.0, 0.5, 3.0}};
  const Poly q{{0.0, 1.0, 1.0}};
  const double x = 0.7;
  const Jet jp = poly_jet(p, x, 5);
  const Jet jq = poly_jet(q, x, 5);

  const Jet sum = jp + jq;
  const Poly exact = p + q;
  for (int k = 0; k <= 5; ++k)
    CHECK(sum.deriv(k) == doctest::Approx(exact.deriv_at(x, k)).epsilon(1e-14));

  const Jet scaled = 2.0 * jp - jp / 2.0;
  for (int k = 0; k <= 5; ++k)
    CHECK(scaled.deriv(k) ==
          doctest::Approx(1.5 * jp.deriv(k)).epsilon(1e-14));

  const Jet dp = jp.derivative();
  CHECK(dp.order() == 4);
  for (int k = 0; k <= 4; ++k)
    CHECK(dp.deriv(k) ==
          doctest::Approx(p.derivative().deriv_at(x, k)).epsilon(1e-14));
}

TEST_CASE("monomial jets in closed form") {
  // x^2.5 at x=4: f = 32, f' = 2.5*8, f'' = 3.75*2, f''' = 1.875/2
  const Jet j = Jet::monomial(4.0, 2.5, 3);
  CHECK(j.value() == doctest::Approx(32.0));
  CHECK(j.deriv(1) == doctest::Approx(20.0));
  CHECK(j.deriv(2) == doctest::Approx(7.5));
  CHECK(j.deriv(3) == doctest::Approx(0.9375));

  // integer exponent: derivatives beyond the power vanish, even at 0
  const Jet cube = Jet::monomial(0.0, 3.0, 5);
  CHECK(cube.value() == 0.0);
  CHECK(cube.deriv(3) == doctest::Approx(6.0));
  CHECK(cube.deriv(4) == 0.0);
  CHECK(cube.deriv(5) == 0.0);

  // r^0 is the constant-one jet
  const Jet unit = Jet::monomial(0.9, 0.0, 4);
  CHECK(unit.value() == 1.0);
  for (int k = 1; k <= 4; ++k) CHECK(unit.deriv(k) == 0.0);

  CHECK_THROWS_AS(Jet::monomial(0.0, 2.5, 3), std::invalid_argument);
}

TEST_CASE("jet division by zero-valued jet is rejected") {
  const Jet num = Jet::constant(1.0, 1.0, 3);
  const Jet den = Jet::constant(1.0, 0.0, 3);
  CHECK_THROWS_AS(num / den, std::invalid_argument);
}

TEST_CASE("jets refuse mismatched centers and non-finite input") {
  const Jet a = Jet::constant(1.0, 1.0, 2);
  const Jet b = Jet::constant(2.0, 1.0, 2);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(Jet(0.0, {1.0, std::nan("")}), std::invalid_argument);
}
