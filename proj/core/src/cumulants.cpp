#include "coulstat/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"
#include "coulstat/quadrature.hpp"

namespace coulstat {

namespace {

// Integer power by repeated multiplication; keeps power-of-two factors exact
// so beta-scaling of the cumulants is bit-reproducible.
double pow_int(double base, int exp) {
  if (exp < 0) return 1.0 / pow_int(base, -exp);
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// f(x) ((x^(d-1) g'(x))') expanded so no 1/x appears; g is U or f.
double edge_source_integrand(const GasModel& model, const RadialFunction& g,
                             double x) {
  const Jet jg = g.jet(x, 2);
  const double fv = model.statistic().jet(x, 0).value();
  const int d = model.dimension();
  if (d == 1) return fv * jg.deriv(2);
  return fv * ((d - 1.0) * std::pow(x, d - 2.0) * jg.deriv(1) +
               std::pow(x, d - 1.0) * jg.deriv(2));
}

double edge_denominator(const GasModel& model, double radius) {
  const double u2 = model.potential().jet(radius, 2).deriv(2);
  const int d = model.dimension();
  const double denom = u2 + (d - 1.0) / std::pow(radius, d);
  if (denom <= 1e-14)
    throw DegenerateEdge("U''(R) + (d-1)/R^d = " + std::to_string(denom));
  return denom;
}

// beta^-1 int_0^R_s x^(d-1) f'(x)^2 dx, the second s-derivative of the
// scaled CGF; differentiating it in s yields the higher cumulants.
double variance_integral(const GasModel& model, double radius) {
  auto integrand = [&](double x) {
    const double fp = model.statistic().jet(x, 1).deriv(1);
    return std::pow(x, model.dimension() - 1.0) * fp * fp;
  };
  const double eps = radius * 1e-15;
  return adaptive_simpson(integrand, eps, radius, 1e-10, 1e-10) / model.beta();
}

} // namespace

const char* route_name(Route route) {
  switch (route) {
    case Route::closed_form: return "closed";
    case Route::jet_operator: return "jet";
    case Route::finite_difference: return "fd";
    case Route::determinantal_exact: return "det-exact";
    case Route::monte_carlo: return "mc";
  }
  return "?";
}

double CumulantReport::value_at(long n_particles) const {
  return leading_coefficient *
         std::pow(static_cast<double>(n_particles), n_scaling_exponent());
}

CumulantReport first_cumulant(const GasModel& model) {
  const Droplet droplet = droplet_radius(model);
  auto integrand = [&](double x) {
    return edge_source_integrand(model, model.potential(), x);
  };
  const double eps = droplet.radius * 1e-15;
  const double c1 = adaptive_simpson(integrand, eps, droplet.radius, 1e-10, 1e-10);
  return {1, c1, Route::closed_form, 1e-10, ""};
}

CumulantReport second_cumulant(const GasModel& model) {
  const Droplet droplet = droplet_radius(model);
  const double c2 = variance_integral(model, droplet.radius);
  return {2, c2, Route::closed_form, 1e-10, ""};
}

CumulantReport third_cumulant(const GasModel& model) {
  const Droplet droplet = droplet_radius(model);
  const double r = droplet.radius;
  const double fp = model.statistic().jet(r, 1).deriv(1);
  const double denom = edge_denominator(model, r);
  const double c3 =
      std::pow(r, model.dimension() - 1.0) * pow_int(fp, 3) / denom;
  return {3, c3 / pow_int(model.beta(), 2), Route::closed_form, 0.0, ""};
}

CumulantReport fourth_cumulant(const GasModel& model) {
  const Droplet droplet = droplet_radius(model);
  const double r = droplet.radius;
  const int d = model.dimension();
  const Jet ju = model.potential().jet(r, 3);
  const Jet jf = model.statistic().jet(r, 2);
  const double fp = jf.deriv(1), fpp = jf.deriv(2);
  const double u3 = ju.deriv(3);
  const double denom = edge_denominator(model, r);
  const double term1 = ((d - 1.0) * d - std::pow(r, d + 1.0) * u3) *
                       pow_int(fp, 4) / (r * r * pow_int(denom, 3));
  const double term2 = std::pow(r, d - 2.0) * pow_int(fp, 3) *
                       ((d - 1.0) * fp + 4.0 * r * fpp) / pow_int(denom, 2);
  const double c4 = (term1 + term2) / pow_int(model.beta(), 3);
  return {4, c4, Route::closed_form, 0.0, ""};
}

CumulantReport cumulant_q_jet(const GasModel& model, int q) {
  if (q < 3 || q > 15)
    throw std::invalid_argument("cumulant_q_jet: q must be in [3, 15]");
  const Droplet droplet = droplet_radius(model);
  const double r = droplet.radius;
  const int d = model.dimension();
  const int ord = q - 1;

  const Jet ju = model.potential().jet(r, ord);
  const Jet jf = model.statistic().jet(r, ord);
  const Jet up = ju.derivative();   // order q-2
  const Jet fp = jf.derivative();   // order q-2
  const Jet upp = up.derivative();  // order q-3
  const Jet fpp = fp.derivative();  // order q-3

  const Jet r_1md = Jet::monomial(r, 1.0 - d, q - 3);
  const Jet r_dm1 = Jet::monomial(r, d - 1.0, q - 3);
  const Jet r_md = Jet::monomial(r, -static_cast<double>(d), q - 3);

  // A = f'^2 / (f'' (r^(1-d) - U') + f' (U'' + (d-1)/r^d))
  const Jet denom = fpp * (r_1md - up) + fp * (upp + (d - 1.0) * r_md);
  if (std::fabs(denom.value()) <= 1e-14)
    throw DegenerateEdge("operator denominator " +
                         std::to_string(denom.value()) + " at R");
  const Jet a_jet = fp * fp / denom;

  Jet b_jet = a_jet * r_dm1 * (fp * fp); // order q-3
  for (int step = 0; step < q - 3; ++step)
    b_jet = a_jet * b_jet.derivative();

  const double c_q = b_jet.value() / pow_int(model.beta(), q - 1);
  return {q, c_q, Route::jet_operator, 0.0, ""};
}

CumulantReport cumulant_q_fd(const GasModel& model, int q, double h) {
  if (q < 2)
    throw std::invalid_argument("cumulant_q_fd: q must be >= 2");
  const int m = q - 2;
  if (h == 0.0) h = m > 0 ? 1e-2 / m : 0.0;

  if (m == 0) {
    CumulantReport rep = second_cumulant(model);
    rep.route = Route::finite_difference;
    return rep;
  }

  // g on the union of both stencils, swept in s-order to keep the branch.
  std::vector<double> s_points;
  for (double step : {h, 0.5 * h})
    for (int k = 0; k <= m; ++k) s_points.push_back((0.5 * m - k) * step);
  std::sort(s_points.begin(), s_points.end());
  s_points.erase(std::unique(s_points.begin(), s_points.end()),
                 s_points.end());

  std::map<double, double> g_of_s;
  std::vector<double> ascending, descending;
  for (double s : s_points)
    (s >= 0.0 ? ascending : descending).push_back(s);
  std::sort(descending.rbegin(), descending.rend());
  try {
    for (const auto& block : {ascending, descending}) {
      const auto droplets = tilted_radius_sweep(model, block);
      for (const TiltedDroplet& td : droplets)
        g_of_s[td.s] = variance_integral(model, td.radius);
    }
  } catch (const LostBranch& e) {
    throw StencilOutOfRange(e.what());
  }

  auto central = [&](double step) {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double coef = (k % 2 ? -1.0 : 1.0) * binomial(m, k);
      acc += coef * g_of_s.at((0.5 * m - k) * step);
    }
    return acc / std::pow(step, m);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  const double extrapolated = (4.0 * fine - coarse) / 3.0;

  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  CumulantReport rep{q, sign * extrapolated, Route::finite_difference,
                     std::fabs(fine - coarse) / 3.0, ""};
  return rep;
}

CumulantReport harmonic_linear_cumulants(int d, double mu, double beta,
                                         int q) {
  if (d < 2)
    throw std::invalid_argument(
        "harmonic_linear_cumulants: f(x)=x violates f'(0)=0 in d=1");
  if (!(mu > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("harmonic_linear_cumulants: mu, beta > 0");
  if (q < 2)
    throw std::invalid_argument("harmonic_linear_cumulants: q must be >= 2");

  const double a_num = (q - 1.0) + (2.0 - q) / d;
  const double a_den = 2.0 + (2.0 - q) / d;
  auto is_nonpositive_integer = [](double x) {
    return x <= 1e-12 && std::fabs(x - std::round(x)) < 1e-12;
  };
  if (is_nonpositive_integer(a_den))
    throw GammaPole("Gamma(2+(2-q)/d) pole at argument " +
                    std::to_string(a_den));
  if (is_nonpositive_integer(a_num))
    throw GammaPole("Gamma(q-1+(2-q)/d) pole at argument " +
                    std::to_string(a_num));

  auto gamma_sign = [](double x) {
    if (x > 0.0) return 1.0;
    return std::fmod(std::ceil(-x), 2.0) == 0.0 ? 1.0 : -1.0;
  };
  const double log_ratio = std::lgamma(a_num) - std::lgamma(a_den);
  const double sign = gamma_sign(a_num) * gamma_sign(a_den);

  const double radius = std::pow(mu, -1.0 / d);
  const double c_q = sign * std::exp(log_ratio) / d *
                     std::pow(radius, (q - 1.0) * d + 2.0 - q) /
                     pow_int(beta, q - 1);
  return {q, c_q, Route::closed_form, 0.0, "harmonic f(x)=x closed form"};
}

} // namespace coulstat
