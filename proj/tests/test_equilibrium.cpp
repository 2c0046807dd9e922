#include <doctest.h>

#include <cmath>

#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"
#include "coulstat/quadrature.hpp"

using namespace coulstat;

namespace {

GasModel harmonic_model(int d, double mu, double beta = 2.0,
                        double f_exponent = 2.0) {
  return GasModel(d, beta, 100, make_harmonic(mu), make_monomial(f_exponent));
}

} // namespace

TEST_CASE("droplet radius closed forms (mu R^d = 1)") {
  CHECK(droplet_radius(harmonic_model(2, 1.0)).radius == doctest::Approx(1.0));
  CHECK(droplet_radius(harmonic_model(2, 2.0)).radius ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(droplet_radius(harmonic_model(3, 1.0)).radius == doctest::Approx(1.0));

  const Droplet d = droplet_radius(harmonic_model(2, 2.0));
  CHECK(d.normalization_residual < 1e-12);
  CHECK(d.potential_slope_at_edge ==
        doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("droplet radius failure modes") {
  // mu so small that x^(d-1) U' never reaches 1 below the cap
  EquilibriumOptions opt;
  opt.radius_cap = 10.0;
  CHECK_THROWS_AS(droplet_radius(harmonic_model(2, 1e-8), opt), NoBracket);

  // x U' = 10 x^2 - 22 x^4 + 12.1 x^6 crosses 1 three times
  const RadialFunction wiggly =
      make_polynomial({0.0, 0.0, 5.0, 0.0, -5.5, 0.0, 12.1 / 6.0});
  const GasModel model =
      GasModel::unchecked(2, 2.0, 10, wiggly, make_monomial(2.0));
  CHECK_THROWS_AS(droplet_radius(model), MultipleRoots);
}

TEST_CASE("tilted radius closed forms") {
  const GasModel model = harmonic_model(2, 1.0);
  // R_s^2 (1 + s) = 1 for U = x^2/2, f = x^2, beta = 2
  const TiltedDroplet t1 = tilted_radius(model, 0.5);
  CHECK(t1.radius == doctest::Approx(1.0 / std::sqrt(1.5)).epsilon(1e-12));
  CHECK(t1.residual < 1e-12);
  CHECK(t1.confinement_ok);
  CHECK(!t1.branch_note.empty());

  const TiltedDroplet t0 = tilted_radius(model, 0.0);
  CHECK(t0.radius == doctest::Approx(1.0).epsilon(1e-14));

  // f = x: R_s^2 + 0.1 R_s = 1, quadratic-formula oracle
  const GasModel linear(2, 2.0, 100, make_harmonic(1.0), make_monomial(1.0));
  const double expected = (-0.1 + std::sqrt(0.01 + 4.0)) / 2.0;
  CHECK(tilted_radius(linear, 0.2).radius ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("tilted radius branch loss") {
  // for f = x^2 the tilted slope vanishes at s = -beta/2
  const GasModel model = harmonic_model(2, 1.0);
  CHECK_THROWS_AS(tilted_radius(model, -1.5), LostBranch);
}

TEST_CASE("tilted sweep is continuous and ordered") {
  const GasModel model = harmonic_model(2, 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(-0.5 + 0.05 * i);
  const auto sweep = tilted_radius_sweep(model, grid);
  REQUIRE(sweep.size() == grid.size());
  for (size_t i = 0; i < sweep.size(); ++i) {
    CHECK(sweep[i].s == grid[i]);
    CHECK(sweep[i].radius ==
          doctest::Approx(1.0 / std::sqrt(1.0 + grid[i])).epsilon(1e-12));
    CHECK(sweep[i].residual < 1e-12);
  }
}

TEST_CASE("equilibrium density values") {
  // d=2 circular law: rho = Delta U / Omega_2 = 2 mu / (2 pi)
  const GasModel flat2 = harmonic_model(2, 1.0);
  CHECK(equilibrium_density(flat2, 0.0, 0.5) ==
        doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(equilibrium_density(flat2, 0.0, 0.999) ==
        doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(equilibrium_density(flat2, 0.0, 1.5) == 0.0);

  const GasModel flat3 = harmonic_model(3, 1.0);
  CHECK(equilibrium_density(flat3, 0.0, 0.5) ==
        doctest::Approx(3.0 / (4.0 * M_PI)).epsilon(1e-12));

  // tilted flat density (1+s)/pi inside R_s
  CHECK(equilibrium_density(flat2, 0.3, 0.5) ==
        doctest::Approx(1.3 / M_PI).epsilon(1e-12));

  CHECK_THROWS_AS(equilibrium_density(flat2, 0.0, -0.5),
                  std::invalid_argument);
}

TEST_CASE("density nonnegativity scan") {
  const GasModel model = harmonic_model(2, 1.0);
  CHECK(check_density_nonnegative(model, 0.3, 64).nonnegative);
  CHECK(check_density_nonnegative(model, 0.0, 64).nonnegative);
  CHECK_THROWS_AS(check_density_nonnegative(model, 0.0, 8),
                  std::invalid_argument);

  // f = x^2 - x^4 at s = -1.2: density < 0 near the origin while the
  // tilted droplet still exists (R_s ~ 0.83)
  const GasModel dip(2, 2.0, 100, make_harmonic(1.0),
                     make_polynomial({0.0, 0.0, 1.0, 0.0, -1.0}));
  const DensityScan scan = check_density_nonnegative(dip, -1.2, 256);
  CHECK(!scan.nonnegative);
  CHECK(scan.first_violation_radius > 0.0);
  CHECK(scan.first_violation_radius < 0.5);
}

TEST_CASE("density normalization over models and tilts") {
  // Omega_d int_0^{R_s} x^(d-1) rho(x) dx = 1 by adaptive quadrature
  const GasModel models[] = {
      harmonic_model(1, 1.0),
      harmonic_model(2, 1.0),
      harmonic_model(3, 2.0),
      GasModel(2, 2.0, 50, make_polynomial({0.0, 0.0, 0.5, 0.0, 0.25}),
               make_monomial(2.0)),
  };
  for (const GasModel& model : models) {
    for (double s : {-0.3, 0.0, 0.4}) {
      const double r_s = tilted_radius(model, s).radius;
      const double omega = solid_angle(model.dimension());
      auto integrand = [&](double x) {
        return omega * std::pow(x, model.dimension() - 1.0) *
               equilibrium_density(model, s, x);
      };
      const double mass =
          adaptive_simpson(integrand, r_s * 1e-12, r_s, 1e-11, 1e-11);
      CHECK(std::fabs(mass - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("dR_s/ds closed form matches central differences") {
  const GasModel models[] = {
      harmonic_model(2, 1.0),
      harmonic_model(3, 2.0),
      GasModel(2, 2.0, 50, make_polynomial({0.0, 0.0, 0.5, 0.0, 0.25}),
               make_monomial(2.0)),
  };
  const double h = 1e-5;
  for (const GasModel& model : models) {
    for (double s : {-0.3, 0.0, 0.25}) {
      const double analytic = tilted_radius_derivative(model, s);
      const double numeric = (tilted_radius(model, s + h).radius -
                              tilted_radius(model, s - h).radius) /
                             (2.0 * h);
      CHECK(std::fabs(analytic - numeric) <=
            1e-6 * std::max(1.0, std::fabs(analytic)));
    }
  }
}

TEST_CASE("tilted radius agrees with droplet radius at s = 0") {
  for (int d : {1, 2, 3}) {
    const GasModel model = harmonic_model(d, 1.5);
    const double r0 = droplet_radius(model).radius;
    const double rs = tilted_radius(model, 0.0).radius;
    CHECK(std::fabs(rs - r0) <= 1e-12 * r0);
  }
}
