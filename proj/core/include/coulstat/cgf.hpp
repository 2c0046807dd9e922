#pragma once

#include <vector>

#include "coulstat/model.hpp"

namespace coulstat {

// Sampled scaled CGF: chi = chi(s, N)/N^2 at leading order, dchi its
// s-derivative, one droplet radius per grid point. chi(0) is exactly 0.
struct CGFCurve {
  std::vector<double> s_values;
  std::vector<double> dchi;
  std::vector<double> chi;
  std::vector<double> droplet_radii;
};

struct RatePoint {
  double lambda = 0.0;     // Lambda = L_N / N at the saddle
  double psi_prime = 0.0;  // Psi'(Lambda) = -s
  double psi = 0.0;
  double r_s = 0.0;        // parameterizing droplet radius
  double s = 0.0;
};

// Parametric large-deviation rate function, sorted by Lambda. Psi vanishes
// with zero slope at lambda_bar, the large-N mean of L_N/N.
struct RateCurve {
  std::vector<RatePoint> points;
  double lambda_bar = 0.0;
};

// d(chi/N^2)/ds = -int_0^{R_s} f(x) (x^(d-1) U'(x) + (s/beta) x^(d-1) f'(x))' dx.
double dchi_ds(const GasModel& model, double s);

// chi(s, N)/N^2 at leading order, integrating dchi_ds from 0 to s by
// composite Gauss quadrature on `grid` panels.
double chi_over_N2(const GasModel& model, double s, int grid = 16);

CGFCurve cgf_curve(const GasModel& model, double s_min, double s_max,
                   int points, int grid = 16);

// Builds the rate curve on a grid of droplet radii; s is recovered from the
// tilted normalization as s = beta (R_s^(1-d) - U'(R_s)) / f'(R_s) and Psi
// accumulated by trapezoid on (Lambda, Psi') pairs from lambda_bar. Throws
// ZeroSlope when f'(R_s) vanishes at a grid point.
RateCurve rate_function(const GasModel& model,
                        const std::vector<double>& radius_grid);

// -min over the sampled curve of (Psi + s Lambda), refined by a local
// quadratic fit; equals chi_over_N2(model, s) when the curve spans the
// minimizer. Throws RangeTooNarrow when the minimizer touches the boundary.
double legendre_roundtrip(const GasModel& model, double s,
                          const RateCurve& rate);

// Closed forms for the harmonic trap with f(x) = x^2:
//   d  = 2: Psi = (beta/4) (2 Lambda mu - log(2 Lambda mu) - 1)
//   d != 2: Psi = (beta/2) (d^2 mu^(1-2/d)/(4-d^2)
//                 + Lambda (mu - (2/(2-d)) ((d+2) Lambda / d)^(-d/2)))
// Throws DomainError for Lambda <= 0, where Psi diverges.
double rate_closed_harmonic_x2(int d, double mu, double beta, double lambda);

// Rate function obtained by extending the smooth-f machinery to f(x) = |x|
// in d = 1 with a harmonic trap. |x| violates f'(0) = 0, and this branch is
// known to be valid only for Lambda < lambda_bar = 1/(2 mu); on the other
// side the true rate function departs from it (a third-order transition the
// smooth-f route cannot see).
double rate_naive_harmonic_abs_d1(double mu, double beta, double lambda);

} // namespace coulstat
