#include "coulstat/roots.hpp"

#include <cmath>
#include <stdexcept>

#include "coulstat/errors.hpp"

namespace coulstat {

double solve_in_bracket(const std::function<double(double)>& f,
                        Bracket br, double rel_tol, int max_iter) {
  double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
  if (a > b) { std::swap(a, b); std::swap(fa, fb); }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("solve_in_bracket: no sign change");
  for (int it = 0; it < max_iter; ++it) {
    // secant step, demoted to bisection when it leaves the bracket
    double x = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!(x > a && x < b)) x = mid;
    // keep steps from stagnating at an endpoint
    const double min_step = 0.25 * (b - a) * 1e-3;
    if (x - a < min_step || b - x < min_step) x = mid;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fa * fx < 0.0) {
      b = x; fb = fx;
    } else {
      a = x; fa = fx;
    }
    if (b - a <= rel_tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b))))
      return std::fabs(fa) < std::fabs(fb) ? a : b;
  }
  return 0.5 * (a + b);
}

Bracket expand_bracket_around(const std::function<double(double)>& f,
                              double center, double floor, double cap,
                              double growth) {
  if (!(center > 0.0) || !(floor > 0.0) || !(cap > floor) || !(growth > 1.0))
    throw std::invalid_argument("expand_bracket_around: bad parameters");
  center = std::min(std::max(center, floor), cap);
  double lo = std::max(center / growth, floor);
  double hi = std::min(center * growth, cap);
  double f_lo = f(lo), f_hi = f(hi);
  while (true) {
    if (f_lo == 0.0) return {lo, lo, 0.0, 0.0};
    if (f_hi == 0.0) return {hi, hi, 0.0, 0.0};
    if (f_lo * f_hi < 0.0) return {lo, hi, f_lo, f_hi};
    const bool at_floor = lo <= floor;
    const bool at_cap = hi >= cap;
    if (at_floor && at_cap)
      throw NoBracket("no sign change in [" + std::to_string(floor) + ", " +
                      std::to_string(cap) + "]");
    if (!at_floor) { lo = std::max(lo / growth, floor); f_lo = f(lo); }
    if (!at_cap) { hi = std::min(hi * growth, cap); f_hi = f(hi); }
  }
}

std::vector<Bracket> sign_change_scan(const std::function<double(double)>& f,
                                      double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw std::invalid_argument("sign_change_scan: bad parameters");
  std::vector<Bracket> found;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double x_prev = lo, f_prev = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = (i == points - 1) ? hi : lo * std::pow(ratio, i);
    const double fx = f(x);
    if (f_prev == 0.0 || f_prev * fx < 0.0)
      found.push_back({x_prev, x, f_prev, fx});
    x_prev = x;
    f_prev = fx;
  }
  return found;
}

} // namespace coulstat
