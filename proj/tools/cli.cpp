#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coulstat/cgf.hpp"
#include "coulstat/compare.hpp"
#include "coulstat/cumulants.hpp"
#include "coulstat/determinantal.hpp"
#include "coulstat/equilibrium.hpp"
#include "coulstat/errors.hpp"
#include "coulstat/format.hpp"
#include "coulstat/model.hpp"
#include "coulstat/montecarlo.hpp"
#include "coulstat/parallel.hpp"

namespace coulstat::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;

  // model
  int d = 2;
  double beta = 2.0;
  long n = 100;
  std::string u_id = "harmonic:mu=1";
  std::string f_id = "monomial:q=2";

  // command options (superset; serialized in full for reproducibility)
  double s_min = -0.5;
  double s_max = 0.5;
  int points = 11;
  int grid = 16;
  int qmax = 4;
  std::string route = "all";
  double r_min = 0.5;
  double r_max = 2.0;
  std::string s_list = "0.1,0.2";
  std::string ensemble = "ginibre-like";
  long sweeps = 22000;
  long burn_in = 2000;
  long chains = 1;
  std::uint64_t seed = 1;
  std::string trace;
  std::string suite;
  std::vector<std::string> overrides;

  // output
  std::string out;
  std::string format; // "" = per-command default
};

void reject_unknown_keys(const json& obj, const char* scope,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) { known = true; break; }
    if (!known)
      throw std::invalid_argument(std::string("config: unknown key '") +
                                  it.key() + "' in " + scope);
  }
}

template <typename T>
void load_if(const json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config file '" + path + "' not readable");
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  reject_unknown_keys(root, "top level",
                      {"command", "model", "options", "output"});
  RunConfig cfg;
  load_if(root, "command", cfg.command);
  if (root.contains("model")) {
    const json& m = root.at("model");
    reject_unknown_keys(m, "model", {"d", "beta", "N", "U", "f"});
    load_if(m, "d", cfg.d);
    load_if(m, "beta", cfg.beta);
    load_if(m, "N", cfg.n);
    load_if(m, "U", cfg.u_id);
    load_if(m, "f", cfg.f_id);
  }
  if (root.contains("options")) {
    const json& o = root.at("options");
    reject_unknown_keys(o, "options",
                        {"s_min", "s_max", "points", "grid", "qmax", "route",
                         "r_min", "r_max", "s_list", "ensemble", "sweeps",
                         "burn_in", "chains", "seed", "trace", "suite",
                         "overrides"});
    load_if(o, "s_min", cfg.s_min);
    load_if(o, "s_max", cfg.s_max);
    load_if(o, "points", cfg.points);
    load_if(o, "grid", cfg.grid);
    load_if(o, "qmax", cfg.qmax);
    load_if(o, "route", cfg.route);
    load_if(o, "r_min", cfg.r_min);
    load_if(o, "r_max", cfg.r_max);
    load_if(o, "s_list", cfg.s_list);
    load_if(o, "ensemble", cfg.ensemble);
    load_if(o, "sweeps", cfg.sweeps);
    load_if(o, "burn_in", cfg.burn_in);
    load_if(o, "chains", cfg.chains);
    load_if(o, "seed", cfg.seed);
    load_if(o, "trace", cfg.trace);
    load_if(o, "suite", cfg.suite);
    load_if(o, "overrides", cfg.overrides);
  }
  if (root.contains("output")) {
    const json& out = root.at("output");
    reject_unknown_keys(out, "output", {"path", "format"});
    load_if(out, "path", cfg.out);
    load_if(out, "format", cfg.format);
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json root;
  root["command"] = cfg.command;
  root["model"] = {{"d", cfg.d},
                   {"beta", cfg.beta},
                   {"N", cfg.n},
                   {"U", cfg.u_id},
                   {"f", cfg.f_id}};
  root["options"] = {{"s_min", cfg.s_min},     {"s_max", cfg.s_max},
                     {"points", cfg.points},   {"grid", cfg.grid},
                     {"qmax", cfg.qmax},       {"route", cfg.route},
                     {"r_min", cfg.r_min},     {"r_max", cfg.r_max},
                     {"s_list", cfg.s_list},   {"ensemble", cfg.ensemble},
                     {"sweeps", cfg.sweeps},   {"burn_in", cfg.burn_in},
                     {"chains", cfg.chains},   {"seed", cfg.seed},
                     {"trace", cfg.trace},     {"suite", cfg.suite},
                     {"overrides", cfg.overrides}};
  root["output"] = {{"path", cfg.out}, {"format", cfg.format}};
  return root;
}

GasModel make_model(const RunConfig& cfg) {
  return GasModel(cfg.d, cfg.beta, cfg.n, parse_radial_function(cfg.u_id),
                  parse_radial_function(cfg.f_id));
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    out.push_back(std::stod(tok, &pos));
    if (pos != tok.size())
      throw std::invalid_argument("bad number '" + tok + "' in list");
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

class OutputSink {
public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

void write_csv_header(std::ostream& os, const RunConfig& cfg,
                      const std::string& columns) {
  os << "# config " << config_to_json(cfg).dump() << "\n";
  os << columns << "\n";
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < points; ++i)
    v[i] = lo + (hi - lo) * i / (points - 1);
  return v;
}

int cmd_droplet(const RunConfig& cfg) {
  const GasModel model = make_model(cfg);
  const auto grid = linspace(cfg.s_min, cfg.s_max, cfg.points);
  const auto droplets = tilted_radius_sweep(model, grid);
  OutputSink sink(cfg.out);
  write_csv_header(sink.stream(), cfg, "s,R_s,residual");
  for (const TiltedDroplet& td : droplets)
    sink.stream() << fmt17(td.s) << "," << fmt17(td.radius) << ","
                  << fmt17(td.residual) << "\n";
  return 0;
}

int cmd_cumulants(const RunConfig& cfg) {
  const GasModel model = make_model(cfg);
  if (cfg.qmax < 1)
    throw std::invalid_argument("--qmax must be >= 1");
  const bool want_closed = cfg.route == "closed" || cfg.route == "all";
  const bool want_jet = cfg.route == "jet" || cfg.route == "all";
  const bool want_fd = cfg.route == "fd" || cfg.route == "all";
  if (!want_closed && !want_jet && !want_fd)
    throw std::invalid_argument("--route must be one of jet, fd, closed, all");

  std::vector<CumulantReport> reports;
  for (int q = 1; q <= cfg.qmax; ++q) {
    if (want_closed) {
      if (q == 1) reports.push_back(first_cumulant(model));
      if (q == 2) reports.push_back(second_cumulant(model));
      if (q == 3) reports.push_back(third_cumulant(model));
      if (q == 4) reports.push_back(fourth_cumulant(model));
    }
    if (want_jet && q >= 3) reports.push_back(cumulant_q_jet(model, q));
    if (want_fd && q >= 2) reports.push_back(cumulant_q_fd(model, q));
  }

  OutputSink sink(cfg.out);
  write_csv_header(sink.stream(), cfg,
                   "q,route,leading_coefficient,n_scaling_exponent,"
                   "cumulant_at_N,error_estimate");
  for (const CumulantReport& r : reports)
    sink.stream() << r.order << "," << route_name(r.route) << ","
                  << fmt17(r.leading_coefficient) << ","
                  << r.n_scaling_exponent() << ","
                  << fmt17(r.value_at(model.n_particles())) << ","
                  << fmt17(r.error_estimate) << "\n";
  return 0;
}

int cmd_cgf(const RunConfig& cfg) {
  const GasModel model = make_model(cfg);
  const CGFCurve curve =
      cgf_curve(model, cfg.s_min, cfg.s_max, cfg.points, cfg.grid);
  OutputSink sink(cfg.out);
  write_csv_header(sink.stream(), cfg, "s,chi,dchi,R_s");
  for (size_t i = 0; i < curve.s_values.size(); ++i)
    sink.stream() << fmt17(curve.s_values[i]) << "," << fmt17(curve.chi[i])
                  << "," << fmt17(curve.dchi[i]) << ","
                  << fmt17(curve.droplet_radii[i]) << "\n";
  return 0;
}

int cmd_ratefn(const RunConfig& cfg) {
  const GasModel model = make_model(cfg);
  if (!(cfg.r_min > 0.0) || !(cfg.r_max > cfg.r_min))
    throw std::invalid_argument("need 0 < --r-min < --r-max");
  const RateCurve curve =
      rate_function(model, linspace(cfg.r_min, cfg.r_max, cfg.points));
  OutputSink sink(cfg.out);
  write_csv_header(sink.stream(), cfg, "Lambda,PsiPrime,Psi");
  for (const RatePoint& pt : curve.points)
    sink.stream() << fmt17(pt.lambda) << "," << fmt17(pt.psi_prime) << ","
                  << fmt17(pt.psi) << "\n";
  return 0;
}

int cmd_det(const RunConfig& cfg) {
  const auto s_values = parse_list(cfg.s_list);
  const bool ginse = cfg.ensemble == "ginse";
  if (!ginse && cfg.ensemble != "ginibre-like")
    throw std::invalid_argument("--ensemble must be ginibre-like or ginse");

  OutputSink sink(cfg.out);
  write_csv_header(sink.stream(), cfg,
                   "s,chi_exact,chi_exact_over_N2,F_asymptotic,gap");
  const double n2 = static_cast<double>(cfg.n) * cfg.n;
  if (ginse) {
    const RadialFunction f = parse_radial_function(cfg.f_id);
    for (double s : s_values) {
      const double chi = exact_cgf_ginse(cfg.n, f, s);
      sink.stream() << fmt17(s) << "," << fmt17(chi) << ","
                    << fmt17(chi / n2) << ",nan,nan\n";
    }
  } else {
    const GasModel model = make_model(cfg);
    for (double s : s_values) {
      const double chi = exact_cgf(model, s);
      const double f_asym =
          asymptotic_F(model.potential(), model.statistic(), s);
      sink.stream() << fmt17(s) << "," << fmt17(chi) << ","
                    << fmt17(chi / n2) << "," << fmt17(f_asym) << ","
                    << fmt17(std::fabs(chi / n2 - f_asym)) << "\n";
    }
  }
  return 0;
}

json chain_to_json(const ChainStats& stats) {
  json chain;
  chain["seed"] = stats.rng_seed;
  chain["acceptance_rate"] = stats.acceptance_rate;
  chain["autocorrelation_time"] = stats.autocorrelation_time_estimate;
  chain["final_step"] = stats.final_step;
  chain["ergodic_warning"] = stats.ergodic_warning;
  if (!stats.note.empty()) chain["note"] = stats.note;
  chain["cumulants"] = json::array();
  for (const CumulantEstimate& est : stats.cumulant_estimates)
    chain["cumulants"].push_back({{"q", est.order},
                                  {"value", est.value},
                                  {"std_error", est.std_error}});
  return chain;
}

int cmd_mc(const RunConfig& cfg) {
  const GasModel model = make_model(cfg);
  if (cfg.chains < 1) throw std::invalid_argument("--chains must be >= 1");

  std::vector<ChainStats> chains(cfg.chains);
  parallel_for(cfg.chains, [&](long c) {
    MCConfig mc{model};
    mc.n_sweeps = cfg.sweeps + cfg.burn_in;
    mc.burn_in_sweeps = cfg.burn_in;
    mc.rng_seed = cfg.seed + static_cast<std::uint64_t>(c);
    chains[c] = metropolis_run(mc);
  });

  json out;
  out["config"] = config_to_json(cfg);
  out["chains"] = json::array();
  for (const ChainStats& stats : chains)
    out["chains"].push_back(chain_to_json(stats));

  // pooled batch statistics across chains (equal lengths, so batches align)
  std::vector<double> pooled;
  for (const ChainStats& stats : chains)
    pooled.insert(pooled.end(), stats.samples_of_L.begin(),
                  stats.samples_of_L.end());
  ChainStats merged;
  merged.samples_of_L = std::move(pooled);
  merged.n_particles = cfg.n;
  merged.batch_count = static_cast<int>(16 * cfg.chains);
  const KStats k = k_statistics(merged.samples_of_L);
  out["pooled"] = {{"k1", k.k1}, {"k2", k.k2}, {"k3", k.k3}, {"k4", k.k4},
                   {"samples", merged.samples_of_L.size()}};

  OutputSink sink(cfg.out);
  sink.stream() << out.dump(2) << "\n";

  if (!cfg.trace.empty()) {
    std::ofstream trace(cfg.trace);
    if (!trace)
      throw std::invalid_argument("cannot open trace file '" + cfg.trace + "'");
    trace << "chain,sweep,L\n";
    for (size_t c = 0; c < chains.size(); ++c)
      for (size_t i = 0; i < chains[c].samples_of_L.size(); ++i)
        trace << c << "," << i << "," << fmt17(chains[c].samples_of_L[i])
              << "\n";
  }
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  if (cfg.suite.empty())
    throw std::invalid_argument("compare needs --suite");
  std::map<std::string, std::string> overrides;
  for (const std::string& kv : cfg.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--override expects key=value, got '" + kv +
                                  "'");
    overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  const ComparisonReport report = run_suite(cfg.suite, overrides);

  json out = json::parse(report.to_json());
  out["config"] = config_to_json(cfg);
  OutputSink sink(cfg.out);
  sink.stream() << out.dump(2) << "\n";

  if (!cfg.trace.empty()) {
    std::ofstream csv(cfg.trace);
    csv << report.to_csv();
  }
  return report.overall_pass ? 0 : 1;
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--d", cfg.d, "spatial dimension")->capture_default_str();
  cmd->add_option("--beta", cfg.beta, "inverse temperature")
      ->capture_default_str();
  cmd->add_option("--N", cfg.n, "particle number")->capture_default_str();
  cmd->add_option("--U", cfg.u_id,
                  "confining potential (harmonic:mu=<v>, monomial:q=<v>, "
                  "poly:c0,c1,...)")
      ->capture_default_str();
  cmd->add_option("--f", cfg.f_id, "linear statistic function")
      ->capture_default_str();
}

} // namespace

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    // pre-scan for --config so flags parsed afterwards take precedence
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config") {
        if (i + 1 >= argc)
          throw std::invalid_argument("--config needs a file path");
        cfg = load_config_file(argv[i + 1]);
      } else if (arg.rfind("--config=", 0) == 0) {
        cfg = load_config_file(arg.substr(9));
      }
    }

    CLI::App app{"Coulomb-gas linear statistics toolkit"};
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    struct SubSpec {
      CLI::App* cmd;
      const char* name;
    };
    std::vector<SubSpec> subs;

    CLI::App* droplet = app.add_subcommand(
        "droplet", "droplet and tilted-droplet radii as CSV");
    droplet->add_option("--s-min", cfg.s_min, "")->capture_default_str();
    droplet->add_option("--s-max", cfg.s_max, "")->capture_default_str();
    droplet->add_option("--points", cfg.points, "")->capture_default_str();
    subs.push_back({droplet, "droplet"});

    CLI::App* cumulants =
        app.add_subcommand("cumulants", "leading-order cumulants by route");
    cumulants->add_option("--qmax", cfg.qmax, "")->capture_default_str();
    cumulants->add_option("--route", cfg.route, "jet, fd, closed, or all")
        ->capture_default_str();
    subs.push_back({cumulants, "cumulants"});

    CLI::App* cgf = app.add_subcommand("cgf", "scaled CGF curve as CSV");
    cgf->add_option("--s-min", cfg.s_min, "")->capture_default_str();
    cgf->add_option("--s-max", cfg.s_max, "")->capture_default_str();
    cgf->add_option("--points", cfg.points, "")->capture_default_str();
    cgf->add_option("--grid", cfg.grid, "integration panels")
        ->capture_default_str();
    subs.push_back({cgf, "cgf"});

    CLI::App* ratefn =
        app.add_subcommand("ratefn", "large-deviation rate function as CSV");
    ratefn->add_option("--r-min", cfg.r_min, "")->capture_default_str();
    ratefn->add_option("--r-max", cfg.r_max, "")->capture_default_str();
    ratefn->add_option("--points", cfg.points, "")->capture_default_str();
    subs.push_back({ratefn, "ratefn"});

    CLI::App* det = app.add_subcommand(
        "det", "exact finite-N determinantal CGF (d=2, beta=2)");
    det->add_option("--s-list", cfg.s_list, "comma-separated tilt values")
        ->capture_default_str();
    det->add_option("--ensemble", cfg.ensemble, "ginibre-like or ginse")
        ->capture_default_str();
    subs.push_back({det, "det"});

    CLI::App* mc = app.add_subcommand("mc", "Metropolis sampling summary");
    mc->add_option("--sweeps", cfg.sweeps, "post-burn-in sweeps")
        ->capture_default_str();
    mc->add_option("--burn-in", cfg.burn_in, "")->capture_default_str();
    mc->add_option("--seed", cfg.seed, "")->capture_default_str();
    mc->add_option("--chains", cfg.chains, "")->capture_default_str();
    mc->add_option("--trace", cfg.trace, "per-sweep CSV trace path");
    subs.push_back({mc, "mc"});

    CLI::App* compare = app.add_subcommand("compare", "cross-route suites");
    compare->add_option("--suite", cfg.suite, "suite name");
    compare->add_option("--override", cfg.overrides, "key=value overrides");
    compare->add_option("--csv", cfg.trace, "also write the CSV table here");
    subs.push_back({compare, "compare"});

    for (const SubSpec& sub : subs) {
      if (std::string(sub.name) != "compare") add_model_flags(sub.cmd, cfg);
      sub.cmd->add_option("--out", cfg.out, "output path (default stdout)");
      sub.cmd->add_option("--format", cfg.format, "output format");
      // accepted here, consumed by the pre-scan above
      sub.cmd->add_option("--config", config_path, "JSON config file");
    }

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 1;
    }

    std::string command = cfg.command;
    for (const SubSpec& sub : subs)
      if (sub.cmd->parsed()) {
        if (!cfg.command.empty() && cfg.command != sub.name)
          throw std::invalid_argument(
              "config command '" + cfg.command +
              "' conflicts with subcommand '" + sub.name + "'");
        command = sub.name;
      }
    if (command.empty())
      throw std::invalid_argument(
          "no command given (droplet, cumulants, cgf, ratefn, det, mc, "
          "compare)");
    cfg.command = command;

    if (command == "droplet") return cmd_droplet(cfg);
    if (command == "cumulants") return cmd_cumulants(cfg);
    if (command == "cgf") return cmd_cgf(cfg);
    if (command == "ratefn") return cmd_ratefn(cfg);
    if (command == "det") return cmd_det(cfg);
    if (command == "mc") return cmd_mc(cfg);
    if (command == "compare") return cmd_compare(cfg);
    throw std::invalid_argument("unknown command '" + command + "'");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CoulstatError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("coulomb-linstat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace coulstat::cli
