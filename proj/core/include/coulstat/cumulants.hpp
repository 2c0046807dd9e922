#pragma once

#include <string>

#include "coulstat/model.hpp"

namespace coulstat {

enum class Route {
  closed_form,
  jet_operator,
  finite_difference,
  determinantal_exact,
  monte_carlo,
};

const char* route_name(Route route);

// One cumulant of the linear statistic at leading order in N. The
// N-independent factor c_q is reported, with
//   <L_N>    ~ c_1 N           (q = 1)
//   <L_N^q>_c ~ c_q N^(2-q)    (q >= 2),
// and c_q carrying the explicit beta^-(q-1) factor for q >= 2.
struct CumulantReport {
  int order = 0;
  double leading_coefficient = 0.0;
  Route route = Route::closed_form;
  double error_estimate = 0.0;
  std::string note;

  int n_scaling_exponent() const { return order == 1 ? 1 : 2 - order; }
  double value_at(long n_particles) const;
};

// c_1 = int_0^R f(x) (x^(d-1) U'(x))' dx, by adaptive quadrature.
CumulantReport first_cumulant(const GasModel& model);

// c_2 = beta^-1 int_0^R x^(d-1) f'(x)^2 dx.
CumulantReport second_cumulant(const GasModel& model);

// c_3 = beta^-2 R^(d-1) f'(R)^3 / (U''(R) + (d-1)/R^d).
CumulantReport third_cumulant(const GasModel& model);

// Two-term edge formula for q = 4; needs U to order 3 and f to order 2 at R.
CumulantReport fourth_cumulant(const GasModel& model);

// General-q route, 3 <= q <= 15: c_q = beta^-(q-1) (A d/dr)^(q-3)
// (A r^(d-1) f'^2) at r = R, with
//   A(r) = f'^2 / (f'' (r^(1-d) - U') + f' (U'' + (d-1)/r^d)),
// evaluated by jet arithmetic. Throws OrderUnavailable when jets of the
// required order (q-1) are missing and DegenerateEdge when A's denominator
// vanishes at R.
CumulantReport cumulant_q_jet(const GasModel& model, int q);

// Finite-difference cross-check: differentiates
//   g(s) = beta^-1 int_0^{R_s} x^(d-1) f'(x)^2 dx
// (q-2) times at s = 0 on a symmetric stencil with one Richardson level;
// c_q = (-1)^q g^(q-2)(0). h = 0 picks the default 1e-2/(q-2).
CumulantReport cumulant_q_fd(const GasModel& model, int q, double h = 0.0);

// Closed form for f(x) = x in the harmonic trap (d >= 2):
//   c_q = beta^-(q-1) Gamma(q-1+(2-q)/d) / (d Gamma(2+(2-q)/d))
//         * R^((q-1)d+2-q),   mu R^d = 1.
// Throws GammaPole when the denominator Gamma argument is a non-positive
// integer.
CumulantReport harmonic_linear_cumulants(int d, double mu, double beta, int q);

} // namespace coulstat
