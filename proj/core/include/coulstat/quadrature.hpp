#pragma once

#include <functional>
#include <vector>

namespace coulstat {

// Adaptive Simpson with mixed absolute/relative tolerance. The interval
// budget turns non-converging integrands into an explicit QuadratureError
// instead of silent inaccuracy.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10,
                        double rel_tol = 1e-10,
                        long max_intervals = 1L << 20);

struct GaussLegendreRule {
  std::vector<double> nodes;   // on (-1, 1), ascending
  std::vector<double> weights;
};

// Nodes/weights computed by Newton iteration on P_n; cached per n.
const GaussLegendreRule& gauss_legendre(int n);

double gauss_legendre_integrate(const std::function<double(double)>& f,
                                double a, double b, int n);

// Composite Gauss-Legendre over `panels` equal subintervals.
double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels, int nodes_per_panel = 16);

} // namespace coulstat
