#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace coulstat {

struct Bracket {
  double lo = 0.0, hi = 0.0;
  double f_lo = 0.0, f_hi = 0.0;
};

// Hybrid secant/bisection on a sign-changing bracket. Converges for any
// continuous f; returns once the interval shrinks to rel_tol * max(1, |x|).
double solve_in_bracket(const std::function<double(double)>& f,
                        Bracket bracket, double rel_tol = 1e-14,
                        int max_iter = 200);

// Expands [center/growth, center*growth] geometrically (clamped to
// [floor, cap]) until f changes sign. Throws NoBracket when the whole
// [floor, cap] range is exhausted without a sign change.
Bracket expand_bracket_around(const std::function<double(double)>& f,
                              double center, double floor, double cap,
                              double growth = 1.6);

// Sign-change intervals of f on a geometric grid over [lo, hi];
// used to pre-scan for multiple roots.
std::vector<Bracket> sign_change_scan(const std::function<double(double)>& f,
                                      double lo, double hi, int points);

} // namespace coulstat
