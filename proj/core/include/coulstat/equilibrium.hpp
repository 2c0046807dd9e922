#pragma once

#include <string>
#include <vector>

#include "coulstat/model.hpp"

namespace coulstat {

struct EquilibriumOptions {
  double radius_cap = 1e3;   // search ceiling; exceeding it means non-confining
  double radius_floor = 1e-8;
  int prescan_points = 256;  // geometric grid for the multiple-root pre-scan
  int density_grid = 64;     // grid for the confinement flag on tilted droplets
};

// Support radius R of the equilibrium density, U'(R) R^(d-1) = 1.
struct Droplet {
  double radius = 0.0;
  double potential_slope_at_edge = 0.0; // U'(R)
  double normalization_residual = 0.0;  // |U'(R) R^(d-1) - 1|
};

// Root R_s of R^(d-1) (U'(R) + (s/beta) f'(R)) = 1, continued in s from
// the untilted radius R_0 = R.
struct TiltedDroplet {
  double s = 0.0;
  double radius = 0.0;
  double residual = 0.0;
  bool confinement_ok = true; // tilted density nonnegative on (0, R_s]
  std::string branch_note;
};

struct DensityScan {
  bool nonnegative = true;
  double first_violation_radius = 0.0; // NaN when nonnegative
};

Droplet droplet_radius(const GasModel& model,
                       const EquilibriumOptions& opt = {});

TiltedDroplet tilted_radius(const GasModel& model, double s,
                            const EquilibriumOptions& opt = {});

// Sequential continuation along ascending or descending s values; each root
// brackets around its predecessor. Results are produced in input order.
std::vector<TiltedDroplet> tilted_radius_sweep(
    const GasModel& model, const std::vector<double>& s_values,
    const EquilibriumOptions& opt = {});

// Closed form dR_s/ds = -f'(R_s) / (s f''(R_s) + beta (U''(R_s) + (d-1)/R_s^d)).
double tilted_radius_derivative(const GasModel& model, double s,
                                const EquilibriumOptions& opt = {});

// Tilted equilibrium density at radius x > 0:
//   rho(x) = (1/Omega_d) x^(1-d) d/dx [ x^(d-1) (U'(x) + (s/beta) f'(x)) ]
// for x <= R_s, zero outside the support.
double equilibrium_density(const GasModel& model, double s, double x,
                           const EquilibriumOptions& opt = {});

// Samples the tilted density on a grid over (0, R_s]; nonnegative means all
// values >= -1e-12.
DensityScan check_density_nonnegative(const GasModel& model, double s,
                                      int grid_size,
                                      const EquilibriumOptions& opt = {});

} // namespace coulstat
