#pragma once

#include "coulstat/cumulants.hpp"
#include "coulstat/model.hpp"

namespace coulstat {

// log of int_0^inf r^p exp(-2N U(r) - N s f(r)) dr. The integrand spans
// thousands of orders of magnitude at large N, so the peak of the
// log-integrand is located first and subtracted before exponentiating.
struct LogIntegralResult {
  double log_value = 0.0;
  double peak_radius = 0.0;
  bool converged = false;
};

// f may be null, in which case the s-tilt term is absent. Throws Divergent
// when the log-integrand fails to decay (tilt overpowering confinement).
LogIntegralResult log_radial_integral(double p, long n_particles,
                                      const RadialFunction& potential,
                                      const RadialFunction* statistic,
                                      double s, int base_nodes = 128);

// Exact finite-N CGF for d = 2, beta = 2 and any radial potential:
//   chi(s,N) = sum_{j=1}^N [ log I_j(s) - log I_j(0) ],
//   I_j(s) = int_0^inf r^(2j-1) exp(-2N U(r) - N s f(r)) dr.
// The per-mode integrals are independent; summation is in fixed j order.
double exact_cgf(const GasModel& model, double s);

// Same product structure for the symplectic ensemble with harmonic
// confinement: weights r^(4j-1) exp(-2N r^2 - N s f(r)).
double exact_cgf_ginse(long n_particles, const RadialFunction& statistic,
                       double s);

// Exact finite-N cumulants: (-1)^q N^-q d^q/ds^q of exact_cgf at s = 0 by
// central differences with two Richardson levels. q <= 6; h = 0 picks the
// cancellation-tuned default (1e-2 for q <= 4, 3e-2 above). The report's
// note carries a precision warning when cancellation passes 1e-5 relative.
CumulantReport exact_cumulants(const GasModel& model, int q, double h = 0.0);

// Saddle data of phi_{s,lambda}(r) = 2U(r) + s f(r) - 2 lambda log r
// - b(lambda), with b(lambda) = min_r (2U(r) - 2 lambda log r).
struct SaddleProfile {
  double lambda = 0.0;
  double r_star = 0.0;   // minimizer, solving r (2U'(r) + s f'(r)) = 2 lambda
  double phi_min = 0.0;
  double b_lambda = 0.0;
};

SaddleProfile saddle_profile(const RadialFunction& potential,
                             const RadialFunction& statistic, double s,
                             double lambda);

// F(s) = -int_0^1 phi_min(s, lambda) dlambda by Gauss-Legendre in lambda
// (open rule, no endpoint nodes); F(s) = lim chi(s,N)/N^2.
double asymptotic_F(const RadialFunction& potential,
                    const RadialFunction& statistic, double s,
                    int lambda_nodes = 64);

// dF/ds = -int_0^1 f(r_{s,lambda}) dlambda on the same lambda rule.
double asymptotic_F_derivative(const RadialFunction& potential,
                               const RadialFunction& statistic, double s,
                               int lambda_nodes = 64);

} // namespace coulstat
