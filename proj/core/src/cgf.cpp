#include "coulstat/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coulstat/cumulants.hpp"
#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"
#include "coulstat/quadrature.hpp"

namespace coulstat {

namespace {

// int_0^r f(x) (x^(d-1) g'(x))' dx with the derivative expanded so no 1/x
// appears; g is the potential or the statistic.
double source_moment(const GasModel& model, const RadialFunction& g,
                     double upper) {
  const int d = model.dimension();
  auto integrand = [&](double x) {
    const Jet jg = g.jet(x, 2);
    const double fv = model.statistic().jet(x, 0).value();
    if (d == 1) return fv * jg.deriv(2);
    return fv * ((d - 1.0) * std::pow(x, d - 2.0) * jg.deriv(1) +
                 std::pow(x, d - 1.0) * jg.deriv(2));
  };
  return adaptive_simpson(integrand, upper * 1e-15, upper, 1e-10, 1e-10);
}

double dchi_at(const GasModel& model, double s, double radius) {
  const int d = model.dimension();
  const double tilt = s / model.beta();
  auto integrand = [&](double x) {
    const Jet ju = model.potential().jet(x, 2);
    const Jet jf = model.statistic().jet(x, 2);
    const double fv = jf.value();
    const double g1 = ju.deriv(1) + tilt * jf.deriv(1);
    const double g2 = ju.deriv(2) + tilt * jf.deriv(2);
    if (d == 1) return fv * g2;
    return fv * ((d - 1.0) * std::pow(x, d - 2.0) * g1 +
                 std::pow(x, d - 1.0) * g2);
  };
  return -adaptive_simpson(integrand, radius * 1e-15, radius, 1e-10, 1e-10);
}

} // namespace

double dchi_ds(const GasModel& model, double s) {
  const TiltedDroplet td = tilted_radius(model, s);
  return dchi_at(model, s, td.radius);
}

double chi_over_N2(const GasModel& model, double s, int grid) {
  if (grid < 1) throw std::invalid_argument("chi_over_N2: grid < 1");
  if (s == 0.0) return 0.0;
  auto f = [&](double t) { return dchi_ds(model, t); };
  return composite_gauss(f, 0.0, s, grid, 16);
}

CGFCurve cgf_curve(const GasModel& model, double s_min, double s_max,
                   int points, int grid) {
  if (points < 2) throw std::invalid_argument("cgf_curve: points < 2");
  if (s_min > s_max) std::swap(s_min, s_max);
  CGFCurve curve;
  curve.s_values.resize(points);
  for (int i = 0; i < points; ++i)
    curve.s_values[i] = s_min + (s_max - s_min) * i / (points - 1);

  curve.dchi.resize(points);
  curve.chi.resize(points);
  curve.droplet_radii.resize(points);

  // accumulate chi away from the s = 0 anchor so chi(0) is exactly zero
  const int panels = std::max(1, grid / std::max(1, points - 1));
  auto rate = [&](double t) { return dchi_ds(model, t); };

  // index of the first grid point >= 0
  int split = 0;
  while (split < points && curve.s_values[split] < 0.0) ++split;

  double acc = 0.0;
  double prev = 0.0;
  for (int i = split; i < points; ++i) {
    const double s = curve.s_values[i];
    acc += (s == prev) ? 0.0 : composite_gauss(rate, prev, s, panels, 16);
    curve.chi[i] = (s == 0.0) ? 0.0 : acc;
    prev = s;
  }
  acc = 0.0;
  prev = 0.0;
  for (int i = split - 1; i >= 0; --i) {
    const double s = curve.s_values[i];
    acc += composite_gauss(rate, prev, s, panels, 16);
    curve.chi[i] = acc;
    prev = s;
  }

  const auto droplets = tilted_radius_sweep(model, curve.s_values);
  for (int i = 0; i < points; ++i) {
    curve.droplet_radii[i] = droplets[i].radius;
    curve.dchi[i] = dchi_at(model, curve.s_values[i], droplets[i].radius);
  }
  return curve;
}

RateCurve rate_function(const GasModel& model,
                        const std::vector<double>& radius_grid) {
  if (radius_grid.empty())
    throw std::invalid_argument("rate_function: empty radius grid");

  RateCurve curve;
  curve.lambda_bar = first_cumulant(model).leading_coefficient;
  const double base_radius = droplet_radius(model).radius;
  const int d = model.dimension();

  curve.points.reserve(radius_grid.size() + 1);
  for (double r : radius_grid) {
    if (!(r > 0.0))
      throw std::invalid_argument("rate_function: radii must be > 0");
    const double up = model.potential().jet(r, 1).deriv(1);
    const double fp = model.statistic().jet(r, 1).deriv(1);
    if (std::fabs(fp) < 1e-14)
      throw ZeroSlope("f'(R_s) = 0 at grid radius " + std::to_string(r));
    const double slack = std::pow(r, 1.0 - d) - up;
    RatePoint pt;
    pt.r_s = r;
    pt.s = model.beta() * slack / fp;
    pt.psi_prime = -pt.s;
    pt.lambda = source_moment(model, model.potential(), r) +
                (slack / fp) * source_moment(model, model.statistic(), r);
    curve.points.push_back(pt);
  }

  // anchor where the tilt vanishes: Psi(lambda_bar) = 0, Psi'(lambda_bar) = 0
  RatePoint anchor;
  anchor.r_s = base_radius;
  anchor.s = 0.0;
  anchor.psi_prime = 0.0;
  anchor.lambda = curve.lambda_bar;
  curve.points.push_back(anchor);

  std::sort(curve.points.begin(), curve.points.end(),
            [](const RatePoint& a, const RatePoint& b) {
              return a.lambda < b.lambda;
            });
  // drop grid duplicates of the anchor
  for (size_t i = 1; i < curve.points.size(); ++i) {
    if (std::fabs(curve.points[i].lambda - curve.points[i - 1].lambda) <
        1e-15 * std::max(1.0, std::fabs(curve.points[i].lambda))) {
      curve.points.erase(curve.points.begin() + i);
      --i;
    }
  }

  size_t anchor_idx = 0;
  double best = std::fabs(curve.points[0].lambda - curve.lambda_bar);
  for (size_t i = 1; i < curve.points.size(); ++i) {
    const double gap = std::fabs(curve.points[i].lambda - curve.lambda_bar);
    if (gap < best) { best = gap; anchor_idx = i; }
  }

  curve.points[anchor_idx].psi = 0.0;
  for (size_t i = anchor_idx + 1; i < curve.points.size(); ++i) {
    const RatePoint& prev = curve.points[i - 1];
    RatePoint& cur = curve.points[i];
    cur.psi = prev.psi + 0.5 * (cur.psi_prime + prev.psi_prime) *
                             (cur.lambda - prev.lambda);
  }
  for (size_t i = anchor_idx; i-- > 0;) {
    const RatePoint& next = curve.points[i + 1];
    RatePoint& cur = curve.points[i];
    cur.psi = next.psi - 0.5 * (cur.psi_prime + next.psi_prime) *
                             (next.lambda - cur.lambda);
  }
  return curve;
}

double legendre_roundtrip(const GasModel& model, double s,
                          const RateCurve& rate) {
  (void)model;
  const auto& pts = rate.points;
  if (pts.size() < 3)
    throw std::invalid_argument("legendre_roundtrip: need >= 3 points");

  size_t min_idx = 0;
  double min_val = pts[0].psi + s * pts[0].lambda;
  for (size_t i = 1; i < pts.size(); ++i) {
    const double v = pts[i].psi + s * pts[i].lambda;
    if (v < min_val) { min_val = v; min_idx = i; }
  }
  if (min_idx == 0 || min_idx + 1 == pts.size())
    throw RangeTooNarrow("Legendre minimizer at the sampled boundary, s = " +
                         std::to_string(s));

  // quadratic through the three points around the grid minimum
  const double x0 = pts[min_idx - 1].lambda, x1 = pts[min_idx].lambda,
               x2 = pts[min_idx + 1].lambda;
  const double y0 = pts[min_idx - 1].psi + s * x0,
               y1 = pts[min_idx].psi + s * x1,
               y2 = pts[min_idx + 1].psi + s * x2;
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  // Newton form y(x) = y0 + d01 (x-x0) + second (x-x0)(x-x1)
  const double second = (d12 - d01) / (x2 - x0);
  if (!(second > 0.0)) return -y1;
  const double xs = 0.5 * (x0 + x1) - 0.5 * d01 / second;
  const double ys = y0 + d01 * (xs - x0) + second * (xs - x0) * (xs - x1);
  return -ys;
}

double rate_closed_harmonic_x2(int d, double mu, double beta, double lambda) {
  if (d < 1) throw std::invalid_argument("rate_closed_harmonic_x2: d >= 1");
  if (!(mu > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("rate_closed_harmonic_x2: mu, beta > 0");
  if (!(lambda > 0.0))
    throw DomainError("Psi diverges as Lambda -> 0; Lambda must be > 0");
  if (d == 2)
    return 0.25 * beta *
           (2.0 * lambda * mu - std::log(2.0 * lambda * mu) - 1.0);
  const double dd = d;
  const double constant =
      dd * dd * std::pow(mu, 1.0 - 2.0 / dd) / (4.0 - dd * dd);
  const double power = std::pow((dd + 2.0) * lambda / dd, -0.5 * dd);
  return 0.5 * beta *
         (constant + lambda * (mu - 2.0 / (2.0 - dd) * power));
}

double rate_naive_harmonic_abs_d1(double mu, double beta, double lambda) {
  if (!(mu > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("rate_naive_harmonic_abs_d1: mu, beta > 0");
  if (!(lambda > 0.0))
    throw DomainError("naive |x| rate function needs Lambda > 0");
  const double t = mu * lambda;
  return beta / (6.0 * mu) *
         (4.0 * std::sqrt(2.0) * std::pow(t, 1.5) - 6.0 * t + 1.0);
}

} // namespace coulstat
