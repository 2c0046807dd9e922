#include "coulstat/compare.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coulstat/cgf.hpp"
#include "coulstat/cumulants.hpp"
#include "coulstat/determinantal.hpp"
#include "coulstat/equilibrium.hpp"
#include "coulstat/format.hpp"
#include "coulstat/montecarlo.hpp"
#include "coulstat/parallel.hpp"

namespace coulstat {

namespace {

using OverrideMap = std::map<std::string, std::string>;

class SuiteBuilder {
public:
  explicit SuiteBuilder(std::string suite) { report_.suite = std::move(suite); }

  void model_descriptor(std::string text) {
    report_.model_descriptor = std::move(text);
  }

  // calc returns (value_a, value_b); failures mark the row errored
  void row(const std::string& id, const std::string& quantity, double tol,
           bool relative,
           const std::function<std::pair<double, double>()>& calc) {
    ComparisonRow r;
    r.id = id;
    r.quantity = quantity;
    r.tolerance = tol;
    r.relative = relative;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto [a, b] = calc();
      r.value_a = a;
      r.value_b = b;
      const double scale = relative ? std::fabs(b) : 1.0;
      r.passed = std::isfinite(a) && std::isfinite(b) &&
                 std::fabs(a - b) <= tol * (relative ? scale : 1.0);
    } catch (const std::exception& e) {
      r.errored = true;
      r.error = e.what();
      r.passed = false;
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    report_.overall_pass = report_.overall_pass && r.passed;
    report_.rows.push_back(std::move(r));
  }

  ComparisonReport take() { return std::move(report_); }

private:
  ComparisonReport report_;
};

void check_override_keys(const OverrideMap& overrides,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : overrides) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok)
      throw std::invalid_argument("unknown override '" + key +
                                  "' for this suite");
  }
}

long get_long(const OverrideMap& m, const std::string& key, long fallback) {
  auto it = m.find(key);
  if (it == m.end()) return fallback;
  size_t pos = 0;
  const long v = std::stol(it->second, &pos);
  if (pos != it->second.size())
    throw std::invalid_argument("override '" + key + "' is not an integer");
  return v;
}

ComparisonReport suite_cumulants_closed_vs_jet(const OverrideMap& overrides) {
  check_override_keys(overrides, {});
  SuiteBuilder suite("cumulants-closed-vs-jet");
  suite.model_descriptor("harmonic:mu=1 with f=x^2, beta=2, d in {1,2,3}");
  for (int d : {1, 2, 3}) {
    const GasModel model(d, 2.0, 100, make_harmonic(1.0), make_monomial(2.0));
    const std::string tag = "d" + std::to_string(d);
    suite.row(tag + "-q3", "third cumulant, closed vs jet operator", 1e-10,
              true, [model] {
                return std::make_pair(cumulant_q_jet(model, 3).leading_coefficient,
                                      third_cumulant(model).leading_coefficient);
              });
    suite.row(tag + "-q4", "fourth cumulant, closed vs jet operator", 1e-10,
              true, [model] {
                return std::make_pair(cumulant_q_jet(model, 4).leading_coefficient,
                                      fourth_cumulant(model).leading_coefficient);
              });
  }
  return suite.take();
}

ComparisonReport suite_cgf_coulomb_vs_det(const OverrideMap& overrides) {
  check_override_keys(overrides, {"N"});
  const long n = get_long(overrides, "N", 100);
  SuiteBuilder suite("cgf-coulomb-vs-det");
  suite.model_descriptor("d=2 beta=2, (U, f) pairs: (x^2/2, x^2) and "
                         "(x^2/2 + x^4/4, x^2), N=" + std::to_string(n));

  struct Pair {
    const char* tag;
    RadialFunction u;
    RadialFunction f;
  };
  const Pair pairs[] = {
      {"ginibre", make_harmonic(1.0), make_monomial(2.0)},
      {"quartic", make_polynomial({0.0, 0.0, 0.5, 0.0, 0.25}),
       make_monomial(2.0)},
  };
  for (const Pair& p : pairs) {
    const GasModel model(2, 2.0, n, p.u, p.f);
    for (double s : {-0.3, 0.3}) {
      std::ostringstream os;
      os << p.tag << ":s=" << s;
      const std::string tag = os.str();
      suite.row(tag + ":chi", "exact chi/N^2 vs asymptotic F", 2.0 / n, false,
                [model, s] {
                  const double exact = exact_cgf(model, s) /
                                       (static_cast<double>(model.n_particles()) *
                                        model.n_particles());
                  const double asym = asymptotic_F(model.potential(),
                                                   model.statistic(), s, 96);
                  return std::make_pair(exact, asym);
                });
      suite.row(tag + ":dchi", "Coulomb dchi/ds vs determinantal dF/ds", 1e-8,
                false, [model, s] {
                  const double coulomb = dchi_ds(model, s);
                  const double det = asymptotic_F_derivative(
                      model.potential(), model.statistic(), s, 96);
                  return std::make_pair(coulomb, det);
                });
    }
  }
  return suite.take();
}

ComparisonReport suite_rate_closed_vs_parametric(const OverrideMap& overrides) {
  check_override_keys(overrides, {"points"});
  const long points = get_long(overrides, "points", 4096);
  SuiteBuilder suite("rate-closed-vs-parametric");
  suite.model_descriptor("d=2 harmonic:mu=1 f=x^2 beta=2");

  const GasModel model(2, 2.0, 100, make_harmonic(1.0), make_monomial(2.0));
  // Lambda = R^2/2 for this model; cover [0.1, 2] with margin
  std::vector<double> grid(points);
  const double r_lo = std::sqrt(2.0 * 0.05), r_hi = std::sqrt(2.0 * 2.2);
  for (long i = 0; i < points; ++i)
    grid[i] = r_lo + (r_hi - r_lo) * i / (points - 1);

  suite.row("max-gap", "max |Psi_param - Psi_closed| on Lambda in [0.1, 2]",
            1e-6, false, [model, grid] {
              const RateCurve curve = rate_function(model, grid);
              double worst = 0.0;
              for (const RatePoint& pt : curve.points) {
                if (pt.lambda < 0.1 || pt.lambda > 2.0) continue;
                const double closed =
                    rate_closed_harmonic_x2(2, 1.0, 2.0, pt.lambda);
                worst = std::max(worst, std::fabs(pt.psi - closed));
              }
              return std::make_pair(worst, 0.0);
            });
  suite.row("legendre-roundtrip",
            "max |legendre_roundtrip - chi/N^2| over 11 s points", 1e-6, false,
            [model, grid] {
              const RateCurve curve = rate_function(model, grid);
              double worst = 0.0;
              for (int i = 0; i <= 10; ++i) {
                const double s = -0.5 + 0.1 * i;
                const double lhs = legendre_roundtrip(model, s, curve);
                const double rhs = chi_over_N2(model, s);
                worst = std::max(worst, std::fabs(lhs - rhs));
              }
              return std::make_pair(worst, 0.0);
            });
  suite.row("rate-at-mean", "Psi and Psi' vanish at lambda_bar", 1e-9, false,
            [model, grid] {
              const RateCurve curve = rate_function(model, grid);
              double best_gap = 1e300, value = 1e300;
              for (const RatePoint& pt : curve.points) {
                const double gap = std::fabs(pt.lambda - curve.lambda_bar);
                if (gap < best_gap) {
                  best_gap = gap;
                  value = std::max(std::fabs(pt.psi), std::fabs(pt.psi_prime));
                }
              }
              return std::make_pair(value, 0.0);
            });
  return suite.take();
}

ComparisonReport suite_mc_vs_exact(const OverrideMap& overrides) {
  check_override_keys(overrides, {"N", "sweeps", "burn_in", "chains", "seed"});
  const long n = get_long(overrides, "N", 64);
  const long sweeps = get_long(overrides, "sweeps", 50000);
  const long burn_in = get_long(overrides, "burn_in", 5000);
  const long chains = get_long(overrides, "chains", 4);
  const long seed = get_long(overrides, "seed", 987);

  SuiteBuilder suite("mc-vs-exact");
  suite.model_descriptor("d=2 beta=2 U=x^2/2 f=x^2 N=" + std::to_string(n) +
                         ", " + std::to_string(chains) + " chains x " +
                         std::to_string(sweeps) + " sweeps");

  const GasModel model(2, 2.0, n, make_harmonic(1.0), make_monomial(2.0));
  std::vector<ChainStats> stats(chains);
  parallel_for(chains, [&](long c) {
    MCConfig cfg{model};
    cfg.n_sweeps = sweeps + burn_in;
    cfg.burn_in_sweeps = burn_in;
    cfg.rng_seed = static_cast<std::uint64_t>(seed + c);
    stats[c] = metropolis_run(cfg);
  });

  // Pool all chains; batches stay within one chain because the per-chain
  // sample counts are equal, so merging the batch statistics is associative.
  std::vector<double> pooled;
  pooled.reserve(chains * sweeps);
  for (const ChainStats& cs : stats)
    pooled.insert(pooled.end(), cs.samples_of_L.begin(),
                  cs.samples_of_L.end());
  const int pooled_batches = static_cast<int>(16 * chains);

  const double exact_mean = 0.5 * (n + 1.0);
  const double exact_var = n * (n + 1.0) / (2.0 * static_cast<double>(n) * n);

  struct Pooled {
    double mean, mean_se, var, var_se;
  };
  const Pooled pooledStats = [&] {
    const long per = static_cast<long>(pooled.size()) / pooled_batches;
    std::vector<double> bmean(pooled_batches), bvar(pooled_batches);
    for (int b = 0; b < pooled_batches; ++b) {
      const std::vector<double> slice(pooled.begin() + b * per,
                                      pooled.begin() + (b + 1) * per);
      const KStats kb = k_statistics(slice);
      bmean[b] = kb.k1;
      bvar[b] = kb.k2;
    }
    const KStats k = k_statistics(pooled);
    double mm = 0.0, mv = 0.0;
    for (int b = 0; b < pooled_batches; ++b) {
      mm += bmean[b] / pooled_batches;
      mv += bvar[b] / pooled_batches;
    }
    double vm = 0.0, vv = 0.0;
    for (int b = 0; b < pooled_batches; ++b) {
      vm += (bmean[b] - mm) * (bmean[b] - mm);
      vv += (bvar[b] - mv) * (bvar[b] - mv);
    }
    vm /= (pooled_batches - 1.0);
    vv /= (pooled_batches - 1.0);
    return Pooled{k.k1, std::sqrt(vm / pooled_batches), k.k2,
                  std::sqrt(vv / pooled_batches)};
  }();

  suite.row("mean", "pooled mean(L) vs exact (N+1)/2",
            3.0 * pooledStats.mean_se, false, [&] {
              return std::make_pair(pooledStats.mean, exact_mean);
            });
  suite.row("variance", "pooled var(L) vs exact N(N+1)/(2N^2)",
            3.0 * pooledStats.var_se, false, [&] {
              return std::make_pair(pooledStats.var, exact_var);
            });
  suite.row("variance-se", "variance standard error below 0.05", 0.05, false,
            [&] { return std::make_pair(pooledStats.var_se, 0.0); });
  return suite.take();
}

ComparisonReport suite_ginse_sanity(const OverrideMap& overrides) {
  check_override_keys(overrides, {});
  SuiteBuilder suite("ginse-sanity");
  suite.model_descriptor("GinSE weights r^(4j-1) e^(-2Nr^2), f=x^2");
  const RadialFunction f = make_monomial(2.0);

  suite.row("N1-s0.5", "chi vs -2 log(1 + s/2)", 1e-9, true, [f] {
    return std::make_pair(exact_cgf_ginse(1, f, 0.5),
                          -2.0 * std::log(1.25));
  });
  suite.row("N8-s0.5", "chi vs -N(N+1) log(1 + s/2)", 1e-9, true, [f] {
    return std::make_pair(exact_cgf_ginse(8, f, 0.5),
                          -72.0 * std::log(1.25));
  });
  suite.row("N4-sneg", "chi vs -N(N+1) log(1 + s/2)", 1e-9, true, [f] {
    return std::make_pair(exact_cgf_ginse(4, f, -0.5),
                          -20.0 * std::log(0.75));
  });
  suite.row("N8-s0", "chi(0) = 0", 1e-12, false, [f] {
    return std::make_pair(exact_cgf_ginse(8, f, 0.0), 0.0);
  });
  return suite.take();
}

} // namespace

std::vector<std::string> suite_names() {
  return {"cumulants-closed-vs-jet", "cgf-coulomb-vs-det",
          "rate-closed-vs-parametric", "mc-vs-exact", "ginse-sanity"};
}

ComparisonReport run_suite(const std::string& suite_name,
                           const OverrideMap& overrides) {
  if (suite_name == "cumulants-closed-vs-jet")
    return suite_cumulants_closed_vs_jet(overrides);
  if (suite_name == "cgf-coulomb-vs-det")
    return suite_cgf_coulomb_vs_det(overrides);
  if (suite_name == "rate-closed-vs-parametric")
    return suite_rate_closed_vs_parametric(overrides);
  if (suite_name == "mc-vs-exact") return suite_mc_vs_exact(overrides);
  if (suite_name == "ginse-sanity") return suite_ginse_sanity(overrides);
  throw std::invalid_argument("unknown suite '" + suite_name + "'");
}

std::string ComparisonReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["model"] = model_descriptor;
  j["overall_pass"] = overall_pass;
  j["rows"] = nlohmann::json::array();
  for (const ComparisonRow& r : rows) {
    nlohmann::json row;
    row["id"] = r.id;
    row["quantity"] = r.quantity;
    row["value_a"] = r.value_a;
    row["value_b"] = r.value_b;
    row["tolerance"] = r.tolerance;
    row["tolerance_kind"] = r.relative ? "relative" : "absolute";
    row["pass"] = r.passed;
    row["runtime_ms"] = r.runtime_ms;
    if (r.errored) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

std::string ComparisonReport::to_csv() const {
  std::string out =
      "id,quantity,value_a,value_b,tolerance,tolerance_kind,pass,runtime_ms,"
      "error\n";
  for (const ComparisonRow& r : rows) {
    std::string quantity = r.quantity;
    for (char& c : quantity)
      if (c == ',') c = ';';
    std::string error = r.error;
    for (char& c : error)
      if (c == ',' || c == '\n') c = ';';
    out += r.id + "," + quantity + "," + fmt17(r.value_a) + "," +
           fmt17(r.value_b) + "," + fmt17(r.tolerance) + "," +
           (r.relative ? "relative" : "absolute") + "," +
           (r.passed ? "1" : "0") + "," + fmt17(r.runtime_ms) + "," + error +
           "\n";
  }
  return out;
}

} // namespace coulstat
