#include <doctest.h>

#include <cmath>

#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"
#include "coulstat/model.hpp"
#include "coulstat/radial_function.hpp"

using namespace coulstat;

TEST_CASE("harmonic jets") {
  const RadialFunction u = make_harmonic(1.0);
  const Jet j = u.jet(1.0, 3);
  CHECK(j.value() == doctest::Approx(0.5));
  CHECK(j.deriv(1) == doctest::Approx(1.0));
  CHECK(j.deriv(2) == doctest::Approx(1.0));
  CHECK(j.deriv(3) == 0.0);

  const RadialFunction u2 = make_harmonic(2.0);
  const Jet j2 = u2.jet(0.5, 2);
  CHECK(j2.value() == doctest::Approx(0.25));
  CHECK(j2.deriv(1) == doctest::Approx(1.0));
  CHECK(j2.deriv(2) == doctest::Approx(2.0));

  CHECK_THROWS_AS(make_harmonic(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_harmonic(-1.0), std::invalid_argument);
}

TEST_CASE("monomial jets") {
  const RadialFunction f2 = make_monomial(2.0);
  const Jet j2 = f2.jet(1.0, 2);
  CHECK(j2.value() == doctest::Approx(1.0));
  CHECK(j2.deriv(1) == doctest::Approx(2.0));
  CHECK(j2.deriv(2) == doctest::Approx(2.0));

  const Jet j1 = make_monomial(1.0).jet(0.7, 1);
  CHECK(j1.value() == doctest::Approx(0.7));
  CHECK(j1.deriv(1) == doctest::Approx(1.0));

  const Jet j3 = make_monomial(3.0).jet(2.0, 3);
  CHECK(j3.value() == doctest::Approx(8.0));
  CHECK(j3.deriv(1) == doctest::Approx(12.0));
  CHECK(j3.deriv(2) == doctest::Approx(12.0));
  CHECK(j3.deriv(3) == doctest::Approx(6.0));

  CHECK_THROWS_AS(make_monomial(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_monomial(-0.5), std::invalid_argument);
}

TEST_CASE("fractional monomials have finite smoothness at the origin") {
  const RadialFunction f = make_monomial(2.5);
  CHECK(f.smoothness_order() == 2);
  CHECK_NOTHROW(f.jet(0.0, 2));
  CHECK_THROWS_AS(f.jet(0.0, 3), OrderUnavailable);
  CHECK_NOTHROW(f.jet(0.3, 8)); // smooth away from 0

  const RadialFunction g = make_monomial(2.0);
  CHECK(g.smoothness_order() == kUnboundedSmoothness);
}

TEST_CASE("jet order cap") {
  const RadialFunction u = make_harmonic(1.0);
  CHECK_NOTHROW(u.jet(1.0, kMaxJetOrder));
  CHECK_THROWS_AS(u.jet(1.0, kMaxJetOrder + 1), OrderUnavailable);
}

TEST_CASE("polynomial evaluator matches direct differentiation") {
  const RadialFunction p = make_polynomial({1.0, 0.0, -0.5, 2.0});
  // p = 1 - 0.5 x^2 + 2 x^3: p'(x) = -x + 6x^2, p'' = -1 + 12 x, p''' = 12
  const Jet j = p.jet(1.5, 4);
  CHECK(j.value() == doctest::Approx(1.0 - 0.5 * 2.25 + 2.0 * 3.375));
  CHECK(j.deriv(1) == doctest::Approx(-1.5 + 6.0 * 2.25));
  CHECK(j.deriv(2) == doctest::Approx(-1.0 + 18.0));
  CHECK(j.deriv(3) == doctest::Approx(12.0));
  CHECK(j.deriv(4) == 0.0);
}

TEST_CASE("radial function string ids") {
  CHECK(parse_radial_function("harmonic:mu=2").jet(0.5, 2).deriv(2) ==
        doctest::Approx(2.0));
  CHECK(parse_radial_function("monomial:q=3").jet(2.0, 1).deriv(1) ==
        doctest::Approx(12.0));
  CHECK(parse_radial_function("poly:0,0,1").jet(0.5, 0).value() ==
        doctest::Approx(0.25));
  CHECK(parse_radial_function("zero").jet(1.0, 2).value() == 0.0);
  CHECK_THROWS_AS(parse_radial_function("spline:k=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radial_function("harmonic:mu=abc"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_radial_function("monomial:mu=1"),
                  std::invalid_argument);
}

TEST_CASE("gas model construction rules") {
  CHECK_THROWS_AS(GasModel(0, 2.0, 10, make_harmonic(1.0), make_monomial(2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(GasModel(2, 0.0, 10, make_harmonic(1.0), make_monomial(2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(GasModel(2, 2.0, 0, make_harmonic(1.0), make_monomial(2.0)),
                  std::invalid_argument);

  // on the line both slopes must vanish at the origin
  CHECK_THROWS_AS(GasModel(1, 2.0, 10, make_harmonic(1.0), make_monomial(1.0)),
                  std::invalid_argument);
  CHECK_NOTHROW(GasModel(1, 2.0, 10, make_harmonic(1.0), make_monomial(2.0)));
  CHECK_NOTHROW(GasModel(2, 2.0, 10, make_harmonic(1.0), make_monomial(1.0)));
}

TEST_CASE("validate_model on the harmonic benchmark") {
  const GasModel model(2, 2.0, 100, make_harmonic(1.0), make_monomial(2.0));
  const auto diags = validate_model(model, -0.5, 0.5);
  CHECK(all_required_pass(diags));
  bool saw_advisory = false;
  for (const Diagnostic& d : diags) {
    if (d.advisory) {
      saw_advisory = true;
      CHECK(!d.passed); // U'(0) = 0 for the harmonic trap
    } else {
      CHECK(d.passed);
    }
  }
  CHECK(saw_advisory);
}

TEST_CASE("validate_model flags non-convex potentials with a radius") {
  // U = x^2/2 - 0.3 x^4 + 0.1 x^6: U'' = 1 - 3.6 x^2 + 3 x^4 dips below
  // zero for x in about (0.66, 0.87) while x U' still crosses 1 once
  const RadialFunction u =
      make_polynomial({0.0, 0.0, 0.5, 0.0, -0.3, 0.0, 0.1});
  const GasModel model =
      GasModel::unchecked(2, 2.0, 100, u, make_monomial(2.0));
  const auto diags = validate_model(model, -0.1, 0.1);
  bool found = false;
  for (const Diagnostic& d : diags) {
    if (d.name == "potential-convexity") {
      found = true;
      CHECK(!d.passed);
      CHECK(d.radius > 0.5);
      CHECK(d.radius < 1.2);
    }
  }
  CHECK(found);
}

TEST_CASE("validate_model rejects f(x)=x on the line") {
  const GasModel model =
      GasModel::unchecked(1, 2.0, 10, make_harmonic(1.0), make_monomial(1.0));
  const auto diags = validate_model(model, -0.5, 0.5);
  CHECK(!all_required_pass(diags));
  bool found = false;
  for (const Diagnostic& d : diags)
    if (d.name == "boundary-limit") {
      found = true;
      CHECK(!d.passed);
    }
  CHECK(found);
}

TEST_CASE("solid angle values") {
  CHECK(solid_angle(1) == doctest::Approx(2.0));
  CHECK(solid_angle(2) == doctest::Approx(2.0 * M_PI));
  CHECK(solid_angle(3) == doctest::Approx(4.0 * M_PI));
}
