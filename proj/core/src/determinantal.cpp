#include "coulstat/determinantal.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "coulstat/errors.hpp"
#include "coulstat/parallel.hpp"
#include "coulstat/quadrature.hpp"
#include "coulstat/roots.hpp"

namespace coulstat {

namespace {

double pow_int(double base, int exp) {
  if (exp < 0) return 1.0 / pow_int(base, -exp);
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

struct LogIntegrand {
  double p;
  double n; // particle number as a double prefactor
  const RadialFunction* potential;
  const RadialFunction* statistic; // may be null
  double s;

  double psi(double r) const {
    double v = p * std::log(r) - 2.0 * n * potential->jet(r, 0).value();
    if (statistic) v -= n * s * statistic->jet(r, 0).value();
    return v;
  }
  double dpsi(double r) const {
    double v = p / r - 2.0 * n * potential->jet(r, 1).deriv(1);
    if (statistic) v -= n * s * statistic->jet(r, 1).deriv(1);
    return v;
  }
  double ddpsi(double r) const {
    double v = -p / (r * r) - 2.0 * n * potential->jet(r, 2).deriv(2);
    if (statistic) v -= n * s * statistic->jet(r, 2).deriv(2);
    return v;
  }
};

} // namespace

LogIntegralResult log_radial_integral(double p, long n_particles,
                                      const RadialFunction& potential,
                                      const RadialFunction* statistic,
                                      double s, int base_nodes) {
  if (!(p > 0.0))
    throw std::invalid_argument("log_radial_integral: p must be > 0");
  const LogIntegrand in{p, static_cast<double>(n_particles), &potential,
                        statistic, s};

  // locate the peak of the log-integrand; failure to bracket means the
  // tilt overpowers the confinement and the integral diverges
  Bracket br;
  try {
    br = expand_bracket_around([&](double r) { return in.dpsi(r); }, 1.0,
                               1e-10, 1e9, 2.0);
  } catch (const NoBracket&) {
    throw Divergent("log-integrand does not decay (p = " + std::to_string(p) +
                    ", s = " + std::to_string(s) + ")");
  }
  double peak = (br.lo == br.hi)
                    ? br.lo
                    : solve_in_bracket([&](double r) { return in.dpsi(r); },
                                       br, 1e-14);
  for (int i = 0; i < 3; ++i) {
    const double d1 = in.dpsi(peak), d2 = in.ddpsi(peak);
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    if (!std::isfinite(step) || std::fabs(step) > 0.5 * peak) break;
    peak -= step;
  }

  const double curv = in.ddpsi(peak);
  double sigma = curv < 0.0 ? 1.0 / std::sqrt(-curv) : peak / std::sqrt(p);
  const double psi_peak = in.psi(peak);

  double width = 12.0;
  int nodes = base_nodes;
  double prev_log = 0.0;
  LogIntegralResult out;
  out.peak_radius = peak;
  out.converged = false;
  for (int round = 0; round < 5; ++round) {
    double lo = std::max(0.0, peak - width * sigma);
    double hi = peak + width * sigma;
    // make sure the window really reaches the decayed tails
    for (int grow = 0; grow < 200 && in.psi(hi) - psi_peak > -60.0; ++grow)
      hi *= 1.5;
    if (in.psi(hi) - psi_peak > -60.0)
      throw Divergent("log-integrand tail does not decay past r = " +
                      std::to_string(hi));
    if (lo > 0.0 && in.psi(lo) - psi_peak > -60.0)
      lo = std::max(0.0, lo - (hi - peak));

    const double integral = gauss_legendre_integrate(
        [&](double r) { return std::exp(in.psi(r) - psi_peak); }, lo, hi,
        nodes);
    const double log_value = psi_peak + std::log(integral);
    if (round > 0 && std::fabs(log_value - prev_log) < 1e-12) {
      out.log_value = log_value;
      out.converged = true;
      return out;
    }
    prev_log = log_value;
    out.log_value = log_value;
    width *= 2.0;
    nodes *= 2;
  }
  return out;
}

double exact_cgf(const GasModel& model, double s) {
  if (model.dimension() != 2 || std::fabs(model.beta() - 2.0) > 1e-12)
    throw std::invalid_argument("exact_cgf: determinantal route needs d=2, beta=2");
  const long n = model.n_particles();
  std::vector<double> terms(static_cast<size_t>(n));
  parallel_for(n, [&](long idx) {
    const double p = 2.0 * (idx + 1) - 1.0;
    const LogIntegralResult tilted = log_radial_integral(
        p, n, model.potential(), &model.statistic(), s);
    const LogIntegralResult plain =
        log_radial_integral(p, n, model.potential(), nullptr, 0.0);
    terms[static_cast<size_t>(idx)] = tilted.log_value - plain.log_value;
  });
  double chi = 0.0;
  for (double t : terms) chi += t;
  return chi;
}

double exact_cgf_ginse(long n_particles, const RadialFunction& statistic,
                       double s) {
  if (n_particles < 1)
    throw std::invalid_argument("exact_cgf_ginse: N must be >= 1");
  const RadialFunction confinement = make_harmonic(2.0); // weight e^{-2N r^2}
  std::vector<double> terms(static_cast<size_t>(n_particles));
  parallel_for(n_particles, [&](long idx) {
    const double p = 4.0 * (idx + 1) - 1.0;
    const LogIntegralResult tilted =
        log_radial_integral(p, n_particles, confinement, &statistic, s);
    const LogIntegralResult plain =
        log_radial_integral(p, n_particles, confinement, nullptr, 0.0);
    terms[static_cast<size_t>(idx)] = tilted.log_value - plain.log_value;
  });
  double chi = 0.0;
  for (double t : terms) chi += t;
  return chi;
}

CumulantReport exact_cumulants(const GasModel& model, int q, double h) {
  if (q < 1 || q > 6)
    throw std::invalid_argument("exact_cumulants: q must be in [1, 6]");
  if (h == 0.0) h = q <= 4 ? 1e-2 : 3e-2;

  std::map<double, double> cache;
  auto chi = [&](double s) {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    const double v = (s == 0.0) ? 0.0 : exact_cgf(model, s);
    cache.emplace(s, v);
    return v;
  };

  double max_abs_chi = 0.0;
  double coef_sum = 0.0;
  auto stencil = [&](double step) {
    double acc = 0.0;
    for (int k = 0; k <= q; ++k) {
      const double coef = (k % 2 ? -1.0 : 1.0) * binomial(q, k);
      const double v = chi((0.5 * q - k) * step);
      max_abs_chi = std::max(max_abs_chi, std::fabs(v));
      coef_sum += std::fabs(coef);
      acc += coef * v;
    }
    return acc / std::pow(step, q);
  };

  double d_coarse, d_mid, d_fine;
  try {
    d_coarse = stencil(h);
    d_mid = stencil(0.5 * h);
    d_fine = stencil(0.25 * h);
  } catch (const Divergent& e) {
    throw StencilOutOfRange(std::string("stencil leaves the convergence "
                                        "region: ") + e.what());
  }
  const double r1 = (4.0 * d_mid - d_coarse) / 3.0;
  const double r2 = (4.0 * d_fine - d_mid) / 3.0;
  const double deriv = (16.0 * r2 - r1) / 15.0;

  const double n = static_cast<double>(model.n_particles());
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const double cumulant = sign * deriv / pow_int(n, q);
  const double leading = cumulant * pow_int(n, q - 2);

  // round-off floor of the finest stencil, mapped to the leading coefficient
  const double noise = coef_sum / 3.0 * max_abs_chi * 1e-15 /
                       std::pow(0.25 * h, q) / pow_int(n, 2);
  CumulantReport rep{q, leading, Route::determinantal_exact,
                     std::fabs(r2 - deriv) + noise, "exact finite-N"};
  if (std::fabs(leading) > 0.0 && noise / std::fabs(leading) > 1e-5)
    rep.note += "; cancellation above 1e-5 relative";
  return rep;
}

SaddleProfile saddle_profile(const RadialFunction& potential,
                             const RadialFunction& statistic, double s,
                             double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("saddle_profile: lambda must be in (0, 1]");

  auto stationarity = [&](double r) {
    const double up = potential.jet(r, 1).deriv(1);
    const double fp = statistic.jet(r, 1).deriv(1);
    return r * (2.0 * up + s * fp) - 2.0 * lambda;
  };
  const auto crossings = sign_change_scan(stationarity, 1e-8, 1e6, 256);
  if (crossings.empty())
    throw NoInteriorMin("no stationary point of phi at lambda = " +
                        std::to_string(lambda));
  if (crossings.size() > 1)
    throw MultipleMinima("phi has " + std::to_string(crossings.size()) +
                         " stationary points at lambda = " +
                         std::to_string(lambda));
  double r_star = solve_in_bracket(stationarity, crossings.front(), 1e-14);
  for (int i = 0; i < 3; ++i) {
    const Jet ju = potential.jet(r_star, 2);
    const Jet jf = statistic.jet(r_star, 2);
    const double g = r_star * (2.0 * ju.deriv(1) + s * jf.deriv(1)) -
                     2.0 * lambda;
    const double gp = 2.0 * ju.deriv(1) + s * jf.deriv(1) +
                      r_star * (2.0 * ju.deriv(2) + s * jf.deriv(2));
    if (gp == 0.0) break;
    const double step = g / gp;
    if (!std::isfinite(step) || std::fabs(step) > 0.5 * r_star) break;
    r_star -= step;
  }

  // b(lambda) = min_r (2U(r) - 2 lambda log r), the s = 0 normalization
  auto plain = [&](double r) {
    return r * potential.jet(r, 1).deriv(1) - lambda;
  };
  Bracket br = expand_bracket_around(plain, r_star, 1e-10, 1e6, 1.6);
  const double r_b =
      (br.lo == br.hi) ? br.lo : solve_in_bracket(plain, br, 1e-14);
  const double b_lambda = 2.0 * potential.jet(r_b, 0).value() -
                          2.0 * lambda * std::log(r_b);

  SaddleProfile out;
  out.lambda = lambda;
  out.r_star = r_star;
  out.b_lambda = b_lambda;
  out.phi_min = 2.0 * potential.jet(r_star, 0).value() +
                s * statistic.jet(r_star, 0).value() -
                2.0 * lambda * std::log(r_star) - b_lambda;
  return out;
}

double asymptotic_F(const RadialFunction& potential,
                    const RadialFunction& statistic, double s,
                    int lambda_nodes) {
  const GaussLegendreRule& rule = gauss_legendre(lambda_nodes);
  double acc = 0.0;
  for (int i = 0; i < lambda_nodes; ++i) {
    const double lambda = 0.5 * (1.0 + rule.nodes[i]);
    acc += 0.5 * rule.weights[i] *
           saddle_profile(potential, statistic, s, lambda).phi_min;
  }
  return -acc;
}

double asymptotic_F_derivative(const RadialFunction& potential,
                               const RadialFunction& statistic, double s,
                               int lambda_nodes) {
  const GaussLegendreRule& rule = gauss_legendre(lambda_nodes);
  double acc = 0.0;
  for (int i = 0; i < lambda_nodes; ++i) {
    const double lambda = 0.5 * (1.0 + rule.nodes[i]);
    const SaddleProfile prof = saddle_profile(potential, statistic, s, lambda);
    acc += 0.5 * rule.weights[i] * statistic.jet(prof.r_star, 0).value();
  }
  return -acc;
}

} // namespace coulstat
