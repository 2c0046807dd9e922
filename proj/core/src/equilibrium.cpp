#include "coulstat/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "coulstat/errors.hpp"
#include "coulstat/roots.hpp"

namespace coulstat {

namespace {

// x^(d-1) (U'(x) + (s/beta) f'(x)) - 1, whose root is the support radius.
double tilt_residual(const GasModel& model, double s, double x) {
  const double up = model.potential().jet(x, 1).deriv(1);
  const double fp = model.statistic().jet(x, 1).deriv(1);
  return std::pow(x, model.dimension() - 1.0) *
             (up + (s / model.beta()) * fp) -
         1.0;
}

double tilt_residual_derivative(const GasModel& model, double s, double x) {
  const Jet ju = model.potential().jet(x, 2);
  const Jet jf = model.statistic().jet(x, 2);
  const double d = model.dimension();
  const double g = ju.deriv(1) + (s / model.beta()) * jf.deriv(1);
  const double gp = ju.deriv(2) + (s / model.beta()) * jf.deriv(2);
  return (d - 1.0) * std::pow(x, d - 2.0) * g + std::pow(x, d - 1.0) * gp;
}

// Pushes a bracketed root to machine precision; edge errors are amplified
// through high-order derivatives downstream, so the residual must be as
// small as double arithmetic allows.
double newton_polish(const GasModel& model, double s, double x) {
  for (int i = 0; i < 4; ++i) {
    const double r = tilt_residual(model, s, x);
    if (r == 0.0) break;
    const double dr = tilt_residual_derivative(model, s, x);
    if (!(std::fabs(dr) > 0.0)) break;
    const double step = r / dr;
    if (!std::isfinite(step) || std::fabs(step) > 0.5 * x) break;
    x -= step;
  }
  return x;
}

double solve_tilted_near(const GasModel& model, double s, double center,
                         const EquilibriumOptions& opt) {
  auto h = [&](double x) { return tilt_residual(model, s, x); };
  Bracket br = expand_bracket_around(h, center, opt.radius_floor,
                                     opt.radius_cap, 1.3);
  if (br.lo == br.hi) return br.lo; // landed on the root exactly
  const double x = solve_in_bracket(h, br, 1e-14);
  return newton_polish(model, s, x);
}

double density_at(const GasModel& model, double s, double x) {
  const Jet ju = model.potential().jet(x, 2);
  const Jet jf = model.statistic().jet(x, 2);
  const double tilt = s / model.beta();
  const double g1 = ju.deriv(1) + tilt * jf.deriv(1);
  const double g2 = ju.deriv(2) + tilt * jf.deriv(2);
  const int d = model.dimension();
  double val = g2;
  if (d > 1) val += (d - 1.0) * g1 / x;
  return val / solid_angle(d);
}

DensityScan scan_density(const GasModel& model, double s, double radius,
                         int grid_size) {
  DensityScan scan;
  scan.first_violation_radius = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i <= grid_size; ++i) {
    const double x = radius * i / grid_size;
    if (density_at(model, s, x) < -1e-12) {
      scan.nonnegative = false;
      scan.first_violation_radius = x;
      return scan;
    }
  }
  return scan;
}

} // namespace

Droplet droplet_radius(const GasModel& model, const EquilibriumOptions& opt) {
  auto g = [&](double x) { return tilt_residual(model, 0.0, x); };
  const auto crossings =
      sign_change_scan(g, opt.radius_floor, opt.radius_cap, opt.prescan_points);
  if (crossings.empty())
    throw NoBracket("x^(d-1) U'(x) never exceeds 1 up to the radius cap " +
                    std::to_string(opt.radius_cap) +
                    " (non-confining potential?)");
  if (crossings.size() > 1)
    throw MultipleRoots("x^(d-1) U'(x) = 1 has " +
                        std::to_string(crossings.size()) +
                        " crossings; droplet radius is ambiguous");
  double x = solve_in_bracket(g, crossings.front(), 1e-14);
  x = newton_polish(model, 0.0, x);

  Droplet droplet;
  droplet.radius = x;
  droplet.potential_slope_at_edge = model.potential().jet(x, 1).deriv(1);
  droplet.normalization_residual = std::fabs(tilt_residual(model, 0.0, x));
  return droplet;
}

TiltedDroplet tilted_radius(const GasModel& model, double s,
                            const EquilibriumOptions& opt) {
  const Droplet base = droplet_radius(model, opt);
  TiltedDroplet out;
  out.s = s;
  out.branch_note = "continued from R_0 = " + std::to_string(base.radius);

  double cur_s = 0.0;
  double cur_r = base.radius;
  double step = s;
  // Walk s toward the target, shrinking the step whenever the local bracket
  // around the previous radius loses the branch.
  while (cur_s != s) {
    double next = cur_s + step;
    if ((step > 0.0 && next > s) || (step < 0.0 && next < s)) next = s;
    try {
      cur_r = solve_tilted_near(model, next, cur_r, opt);
      cur_s = next;
      step = s - cur_s;
    } catch (const NoBracket&) {
      step *= 0.5;
      if (std::fabs(step) < std::max(1e-12, 1e-6 * std::fabs(s)))
        throw LostBranch("tilted droplet branch lost near s = " +
                         std::to_string(cur_s));
    }
  }

  out.radius = cur_r;
  out.residual = std::fabs(tilt_residual(model, s, cur_r));
  out.confinement_ok =
      scan_density(model, s, cur_r, opt.density_grid).nonnegative;
  return out;
}

std::vector<TiltedDroplet> tilted_radius_sweep(const GasModel& model,
                                               const std::vector<double>& s_values,
                                               const EquilibriumOptions& opt) {
  std::vector<TiltedDroplet> out;
  out.reserve(s_values.size());
  const Droplet base = droplet_radius(model, opt);
  double prev_r = base.radius;
  for (double s : s_values) {
    TiltedDroplet td;
    td.s = s;
    td.branch_note = "swept from previous grid point";
    try {
      td.radius = solve_tilted_near(model, s, prev_r, opt);
    } catch (const NoBracket&) {
      throw LostBranch("tilted droplet branch lost at s = " +
                       std::to_string(s));
    }
    td.residual = std::fabs(tilt_residual(model, s, td.radius));
    td.confinement_ok =
        scan_density(model, s, td.radius, opt.density_grid).nonnegative;
    prev_r = td.radius;
    out.push_back(std::move(td));
  }
  return out;
}

double tilted_radius_derivative(const GasModel& model, double s,
                                const EquilibriumOptions& opt) {
  const TiltedDroplet td = tilted_radius(model, s, opt);
  const double r = td.radius;
  const Jet jf = model.statistic().jet(r, 2);
  const Jet ju = model.potential().jet(r, 2);
  const double d = model.dimension();
  const double denom =
      s * jf.deriv(2) +
      model.beta() * (ju.deriv(2) + (d - 1.0) / std::pow(r, d));
  if (std::fabs(denom) < 1e-14)
    throw DegenerateEdge("dR_s/ds denominator vanished at s = " +
                         std::to_string(s));
  return -jf.deriv(1) / denom;
}

double equilibrium_density(const GasModel& model, double s, double x,
                           const EquilibriumOptions& opt) {
  if (!(x > 0.0))
    throw std::invalid_argument("equilibrium_density: x must be > 0");
  const TiltedDroplet td = tilted_radius(model, s, opt);
  if (x > td.radius) return 0.0;
  return density_at(model, s, x);
}

DensityScan check_density_nonnegative(const GasModel& model, double s,
                                      int grid_size,
                                      const EquilibriumOptions& opt) {
  if (grid_size < 16)
    throw std::invalid_argument("check_density_nonnegative: grid_size < 16");
  const double radius = (s == 0.0) ? droplet_radius(model, opt).radius
                                   : tilted_radius(model, s, opt).radius;
  return scan_density(model, s, radius, grid_size);
}

} // namespace coulstat
