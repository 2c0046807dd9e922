#pragma once

#include <map>
#include <string>
#include <vector>

namespace coulstat {

struct ComparisonRow {
  std::string id;
  std::string quantity;
  double value_a = 0.0;
  double value_b = 0.0;
  double tolerance = 0.0;
  bool relative = false; // tolerance interpreted relative to |value_b|
  bool passed = false;
  bool errored = false;
  std::string error;
  double runtime_ms = 0.0;
};

struct ComparisonReport {
  std::string suite;
  std::string model_descriptor;
  std::vector<ComparisonRow> rows;
  bool overall_pass = true;

  std::string to_json() const;
  std::string to_csv() const;
};

// Named cross-route check suites with desk-scale defaults:
//   cumulants-closed-vs-jet   closed q=3,4 formulas vs the jet operator
//   cgf-coulomb-vs-det        Coulomb-gas CGF vs determinantal asymptotics
//   rate-closed-vs-parametric parametric rate curve vs the closed form
//   mc-vs-exact               Metropolis sampling vs exact finite-N values
//   ginse-sanity              symplectic-ensemble CGF closed forms
// Overrides (stringly keyed, validated per suite) adjust N, sweeps, seeds.
// Every declared check appears in the report as pass, fail, or errored.
ComparisonReport run_suite(const std::string& suite_name,
                           const std::map<std::string, std::string>& overrides = {});

std::vector<std::string> suite_names();

} // namespace coulstat
