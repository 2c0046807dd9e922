#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coulstat/cumulants.hpp"
#include "coulstat/model.hpp"

namespace coulstat {

struct MCConfig {
  GasModel model;
  long n_sweeps = 22000;      // total, including burn-in
  long burn_in_sweeps = 2000;
  double target_acceptance = 0.5;
  double initial_step = 0.0;  // 0 = scaled from the droplet radius
  std::uint64_t rng_seed = 1;
  int batch_count = 16;       // must divide the post-burn-in sweep count
  double min_pair_distance = 1e-12;

  void validate() const; // throws std::invalid_argument
};

struct CumulantEstimate {
  int order = 0;
  double value = 0.0;
  double std_error = 0.0;
};

struct ChainStats {
  std::vector<double> samples_of_L; // one per post-burn-in sweep
  double acceptance_rate = 0.0;     // post burn-in
  std::vector<CumulantEstimate> cumulant_estimates; // k_1..k_4
  double autocorrelation_time_estimate = 1.0;       // in sweeps
  double final_step = 0.0;
  bool ergodic_warning = false;     // acceptance left (0.05, 0.95)
  std::string note;
  std::uint64_t rng_seed = 0;
  long n_particles = 0;
  int batch_count = 16;
};

// sum_{i<j} V_d(|x_i - x_j|) + N sum_k U(|x_k|), with the d-dimensional
// Coulomb kernel V_d(x) = x^(2-d)/(d-2) for d != 2 and -log x in d = 2.
// Positions are a flat array with stride d. Throws PairCollision below the
// distance guard.
double total_energy(const GasModel& model,
                    const std::vector<double>& positions,
                    double min_pair_distance = 1e-12);

// Energy change of moving one particle, from the O(N) pair-sum delta.
// Returns +inf for moves that would create a pair distance below the guard
// (the log/power kernels overflow there; such moves are rejected).
double move_delta_energy(const GasModel& model,
                         const std::vector<double>& positions, long particle,
                         const double* new_position,
                         double min_pair_distance = 1e-12);

// Metropolis sampling of the Gibbs measure with single-particle Gaussian
// proposals. The step size is adapted toward target_acceptance during
// burn-in only and frozen afterwards, preserving detailed balance for the
// recorded samples. Bit-reproducible for a fixed MCConfig.
ChainStats metropolis_run(const MCConfig& config);

// Unbiased k-statistics of the per-sweep L values, with batch-means errors
// for k_1, k_2 and jackknife-over-batches errors for k_3, k_4. Throws
// InsufficientSamples when the chain is shorter than 100 autocorrelation
// times; resolvability for q >= 3 is reported via the note field.
std::vector<CumulantReport> estimate_cumulants(const ChainStats& stats,
                                               int q_max);

// Helpers shared by the chain summary and the suite runner.
struct KStats {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
};
KStats k_statistics(const std::vector<double>& samples);
double integrated_autocorrelation_time(const std::vector<double>& samples);

} // namespace coulstat
