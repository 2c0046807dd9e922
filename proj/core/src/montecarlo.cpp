#include "coulstat/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"

namespace coulstat {

namespace {

// Deterministic uniform/normal generation on top of mt19937_64; avoids the
// implementation-defined std distributions so identical seeds reproduce
// identical chains everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return (gen_() >> 11) * 0x1.0p-53; } // [0, 1)

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Coulomb kernel on the squared distance: -log x in d = 2, x^(2-d)/(d-2)
// otherwise.
double pair_kernel_sq(int d, double dist_sq) {
  switch (d) {
    case 1: return -std::sqrt(dist_sq);
    case 2: return -0.5 * std::log(dist_sq);
    case 3: return 1.0 / std::sqrt(dist_sq);
    default:
      return std::pow(dist_sq, 0.5 * (2.0 - d)) / (d - 2.0);
  }
}

double dist_sq(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double norm(const double* a, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += a[k] * a[k];
  return std::sqrt(s);
}

KStats k_from_shifted_sums(double n, double s1, double s2, double s3,
                           double s4) {
  const double mean = s1 / n;
  const double m2 = s2 / n - mean * mean;
  const double m3 = s3 / n - 3.0 * mean * s2 / n + 2.0 * mean * mean * mean;
  const double m4 = s4 / n - 4.0 * mean * s3 / n +
                    6.0 * mean * mean * s2 / n -
                    3.0 * mean * mean * mean * mean;
  KStats k;
  k.k1 = mean;
  k.k2 = n / (n - 1.0) * m2;
  k.k3 = n * n / ((n - 1.0) * (n - 2.0)) * m3;
  k.k4 = n * n *
         ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
         ((n - 1.0) * (n - 2.0) * (n - 3.0));
  return k;
}

struct BatchSums {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  long n = 0;
};

std::vector<CumulantEstimate> summarize(const std::vector<double>& samples,
                                        int batch_count, double shift) {
  const long n = static_cast<long>(samples.size());
  const long per_batch = n / batch_count;

  std::vector<BatchSums> batches(batch_count);
  for (int b = 0; b < batch_count; ++b) {
    BatchSums& bs = batches[b];
    for (long i = b * per_batch; i < (b + 1) * per_batch; ++i) {
      const double x = samples[i] - shift;
      bs.s1 += x;
      bs.s2 += x * x;
      bs.s3 += x * x * x;
      bs.s4 += x * x * x * x;
      ++bs.n;
    }
  }
  BatchSums total;
  for (const BatchSums& bs : batches) {
    total.s1 += bs.s1;
    total.s2 += bs.s2;
    total.s3 += bs.s3;
    total.s4 += bs.s4;
    total.n += bs.n;
  }

  const bool constant =
      std::all_of(samples.begin(), samples.end(),
                  [&](double x) { return x == samples.front(); });

  const KStats k =
      constant ? KStats{samples.front() - shift, 0.0, 0.0, 0.0}
               : k_from_shifted_sums(total.n, total.s1, total.s2, total.s3,
                                     total.s4);

  // batch-means error for k1, spread of per-batch values for k2,
  // jackknife over batches for k3 and k4
  const double bcount = batch_count;
  double se1 = 0.0, se2 = 0.0, se3 = 0.0, se4 = 0.0;
  if (!constant) {
    double mean_of_means = 0.0, mean_of_k2 = 0.0;
    std::vector<double> bmean(batch_count), bk2(batch_count);
    for (int b = 0; b < batch_count; ++b) {
      const BatchSums& bs = batches[b];
      bmean[b] = bs.s1 / bs.n;
      bk2[b] = k_from_shifted_sums(bs.n, bs.s1, bs.s2, bs.s3, bs.s4).k2;
      mean_of_means += bmean[b] / bcount;
      mean_of_k2 += bk2[b] / bcount;
    }
    double var_mean = 0.0, var_k2 = 0.0;
    for (int b = 0; b < batch_count; ++b) {
      var_mean += (bmean[b] - mean_of_means) * (bmean[b] - mean_of_means);
      var_k2 += (bk2[b] - mean_of_k2) * (bk2[b] - mean_of_k2);
    }
    var_mean /= (bcount - 1.0);
    var_k2 /= (bcount - 1.0);
    se1 = std::sqrt(var_mean / bcount);
    se2 = std::sqrt(var_k2 / bcount);

    std::vector<double> jack3(batch_count), jack4(batch_count);
    double j3_mean = 0.0, j4_mean = 0.0;
    for (int b = 0; b < batch_count; ++b) {
      const BatchSums& bs = batches[b];
      const KStats kj = k_from_shifted_sums(
          total.n - bs.n, total.s1 - bs.s1, total.s2 - bs.s2,
          total.s3 - bs.s3, total.s4 - bs.s4);
      jack3[b] = kj.k3;
      jack4[b] = kj.k4;
      j3_mean += kj.k3 / bcount;
      j4_mean += kj.k4 / bcount;
    }
    double v3 = 0.0, v4 = 0.0;
    for (int b = 0; b < batch_count; ++b) {
      v3 += (jack3[b] - j3_mean) * (jack3[b] - j3_mean);
      v4 += (jack4[b] - j4_mean) * (jack4[b] - j4_mean);
    }
    se3 = std::sqrt((bcount - 1.0) / bcount * v3);
    se4 = std::sqrt((bcount - 1.0) / bcount * v4);
  }

  return {{1, k.k1 + shift, se1},
          {2, k.k2, se2},
          {3, k.k3, se3},
          {4, k.k4, se4}};
}

} // namespace

void MCConfig::validate() const {
  if (burn_in_sweeps < 0)
    throw std::invalid_argument("MCConfig: burn_in_sweeps must be >= 0");
  if (n_sweeps <= burn_in_sweeps)
    throw std::invalid_argument("MCConfig: n_sweeps must exceed burn-in");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
    throw std::invalid_argument("MCConfig: target_acceptance in (0,1)");
  if (batch_count < 8)
    throw std::invalid_argument("MCConfig: batch_count must be >= 8");
  if ((n_sweeps - burn_in_sweeps) % batch_count != 0)
    throw std::invalid_argument(
        "MCConfig: batch_count must divide the post-burn-in sweep count");
  if (!(min_pair_distance > 0.0))
    throw std::invalid_argument("MCConfig: min_pair_distance must be > 0");
}

double total_energy(const GasModel& model, const std::vector<double>& positions,
                    double min_pair_distance) {
  const int d = model.dimension();
  const long n = static_cast<long>(positions.size()) / d;
  if (positions.size() != static_cast<size_t>(n) * d || n < 1)
    throw std::invalid_argument("total_energy: bad positions layout");
  const double guard_sq = min_pair_distance * min_pair_distance;
  double energy = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const double d2 = dist_sq(&positions[i * d], &positions[j * d], d);
      if (d2 < guard_sq)
        throw PairCollision("pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") closer than the guard");
      energy += pair_kernel_sq(d, d2);
    }
  }
  double confinement = 0.0;
  for (long i = 0; i < n; ++i)
    confinement += model.potential().jet(norm(&positions[i * d], d), 0).value();
  return energy + static_cast<double>(model.n_particles()) * confinement;
}

double move_delta_energy(const GasModel& model,
                         const std::vector<double>& positions, long particle,
                         const double* new_position,
                         double min_pair_distance) {
  const int d = model.dimension();
  const long n = static_cast<long>(positions.size()) / d;
  const double guard_sq = min_pair_distance * min_pair_distance;
  const double* old_position = &positions[particle * d];
  double delta = 0.0;
  for (long j = 0; j < n; ++j) {
    if (j == particle) continue;
    const double* xj = &positions[j * d];
    const double d2_new = dist_sq(xj, new_position, d);
    if (d2_new < guard_sq)
      return std::numeric_limits<double>::infinity();
    delta += pair_kernel_sq(d, d2_new) -
             pair_kernel_sq(d, dist_sq(xj, old_position, d));
  }
  const double u_new = model.potential().jet(norm(new_position, d), 0).value();
  const double u_old = model.potential().jet(norm(old_position, d), 0).value();
  return delta + static_cast<double>(model.n_particles()) * (u_new - u_old);
}

ChainStats metropolis_run(const MCConfig& config) {
  config.validate();
  const GasModel& model = config.model;
  const int d = model.dimension();
  const long n = model.n_particles();
  const double radius = droplet_radius(model).radius;

  Rng rng(config.rng_seed);
  std::vector<double> positions(static_cast<size_t>(n) * d);
  std::vector<double> dir(d);
  for (long i = 0; i < n; ++i) {
    double len = 0.0;
    do {
      for (int k = 0; k < d; ++k) dir[k] = rng.normal();
      len = norm(dir.data(), d);
    } while (len == 0.0);
    const double r = radius * std::pow(rng.uniform(), 1.0 / d);
    for (int k = 0; k < d; ++k)
      positions[i * d + k] = r * dir[k] / len;
  }

  double step = config.initial_step > 0.0 ? config.initial_step : 0.25 * radius;
  const double beta = model.beta();

  long window_proposals = 0, window_accepts = 0;
  long post_proposals = 0, post_accepts = 0;

  ChainStats stats;
  stats.rng_seed = config.rng_seed;
  stats.n_particles = n;
  stats.batch_count = config.batch_count;
  stats.samples_of_L.reserve(config.n_sweeps - config.burn_in_sweeps);

  std::vector<double> proposal(d);
  for (long sweep = 0; sweep < config.n_sweeps; ++sweep) {
    const bool burning = sweep < config.burn_in_sweeps;
    for (long i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k)
        proposal[k] = positions[i * d + k] + step * rng.normal();
      const double delta = move_delta_energy(model, positions, i,
                                             proposal.data(),
                                             config.min_pair_distance);
      const bool accept =
          delta <= 0.0 || rng.uniform() < std::exp(-beta * delta);
      if (accept)
        std::copy(proposal.begin(), proposal.end(),
                  positions.begin() + i * d);
      if (burning) {
        ++window_proposals;
        window_accepts += accept;
        if (window_proposals == 100) {
          const double rate = window_accepts / 100.0;
          step *= std::exp(0.1 * (rate - config.target_acceptance));
          step = std::min(std::max(step, 1e-6 * radius), 10.0 * radius);
          window_proposals = window_accepts = 0;
        }
      } else {
        ++post_proposals;
        post_accepts += accept;
      }
    }
    if (!burning) {
      double value = 0.0;
      for (long i = 0; i < n; ++i)
        value += model.statistic().jet(norm(&positions[i * d], d), 0).value();
      stats.samples_of_L.push_back(value);
    }
  }

  stats.final_step = step;
  stats.acceptance_rate =
      post_proposals > 0 ? static_cast<double>(post_accepts) / post_proposals
                         : 0.0;
  if (stats.acceptance_rate <= 0.05 || stats.acceptance_rate >= 0.95) {
    stats.ergodic_warning = true;
    stats.note = "acceptance rate " + std::to_string(stats.acceptance_rate) +
                 " outside (0.05, 0.95) after adaptation";
  }

  const double shift =
      stats.samples_of_L.empty() ? 0.0 : stats.samples_of_L.front();
  stats.cumulant_estimates =
      summarize(stats.samples_of_L, config.batch_count, shift);
  stats.autocorrelation_time_estimate =
      integrated_autocorrelation_time(stats.samples_of_L);
  return stats;
}

KStats k_statistics(const std::vector<double>& samples) {
  if (samples.size() < 4)
    throw InsufficientSamples("k-statistics need at least 4 samples");
  const bool constant =
      std::all_of(samples.begin(), samples.end(),
                  [&](double x) { return x == samples.front(); });
  if (constant) return {samples.front(), 0.0, 0.0, 0.0};
  const double shift = samples.front();
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double v : samples) {
    const double x = v - shift;
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  KStats k = k_from_shifted_sums(static_cast<double>(samples.size()), s1, s2,
                                 s3, s4);
  k.k1 += shift;
  return k;
}

double integrated_autocorrelation_time(const std::vector<double>& samples) {
  const long n = static_cast<long>(samples.size());
  if (n < 16) return 1.0;
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double c0 = 0.0;
  for (double x : samples) c0 += (x - mean) * (x - mean);
  c0 /= n;
  if (c0 == 0.0) return 1.0;

  double tau = 1.0;
  const long max_lag = n / 4;
  for (long t = 1; t <= max_lag; ++t) {
    double ct = 0.0;
    for (long i = 0; i + t < n; ++i)
      ct += (samples[i] - mean) * (samples[i + t] - mean);
    ct /= (n - t);
    const double rho = ct / c0;
    if (rho < 0.02) break; // noise floor
    tau += 2.0 * rho;
    if (t > 10.0 * tau) break; // self-consistent window
  }
  return tau;
}

std::vector<CumulantReport> estimate_cumulants(const ChainStats& stats,
                                               int q_max) {
  if (q_max < 1 || q_max > 4)
    throw std::invalid_argument("estimate_cumulants: q_max must be in [1, 4]");
  const long n = static_cast<long>(stats.samples_of_L.size());
  const double tau = stats.autocorrelation_time_estimate;
  if (n < 100.0 * tau)
    throw InsufficientSamples(
        "chain of " + std::to_string(n) + " sweeps is shorter than 100 "
        "autocorrelation times (tau = " + std::to_string(tau) + ")");

  const double big_n = static_cast<double>(stats.n_particles);
  std::vector<CumulantReport> out;
  for (int q = 1; q <= q_max; ++q) {
    const CumulantEstimate& est = stats.cumulant_estimates[q - 1];
    const double scale = q == 1 ? 1.0 / big_n : std::pow(big_n, q - 2);
    CumulantReport rep{q, est.value * scale, Route::monte_carlo,
                       est.std_error * scale, ""};
    if (q >= 3 && n < 1000.0 * tau)
      rep.note = "chain shorter than 1000 tau; k_" + std::to_string(q) +
                 " may be unresolved";
    out.push_back(rep);
  }
  return out;
}

} // namespace coulstat
