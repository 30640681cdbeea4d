#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quadrature.hpp"

namespace torsmooth {

// Flat key=value experiment description ('#' starts a comment, blank lines
// ignored). Keys:
//   fn        corpus id (required for run_experiment)
//   op        sampling operator id (required by operator-based measures)
//   measures  comma list of: omega | tau | steklov-dev | steklov-error |
//             combined | approx-error | best-approx | kfunc | semi-kfunc |
//             realization
//   n_list    comma list of sizes, strictly increasing
//   j_list    comma list of dyadic exponents (alternative to n_list; sizes
//             are 2^j and rate fits use the power_log model's convention)
//   p, r, s   norm exponent and difference/modulus orders (s <= 2r)
//   delta     fixed averaging width; omitted/0 means derive from n
//   fit       none | pure_power | power_log
//   seed      RNG seed for anything randomized
//   abs_tol, rel_tol, max_depth   quadrature overrides
struct ExperimentConfig {
  std::map<std::string, std::string> entries;

  static ExperimentConfig parse_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& def = "") const;
  double real(const std::string& key, double def) const;
  long integer(const std::string& key, long def) const;
  std::vector<long> int_list(const std::string& key) const;
  std::vector<std::string> str_list(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  QuadratureSpec quadrature() const;
};

// One computed cell. n holds the size parameter as given (a dyadic exponent
// when the experiment runs on j_list).
struct ReportRow {
  std::string fn;
  std::string op;       // "-" when no operator is involved
  std::string measure;
  double n = 0.0;
  double p = 2.0;
  double value = 0.0;
  double quad_error = 0.0;
};

struct FitRow {
  std::string measure;
  std::string model;
  double exponent = 0.0;
  double log_c = 0.0;
  double residual_rms = 0.0;
  double c_low = 0.0;
  double c_high = 0.0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<ReportRow> rows;
  std::vector<FitRow> fits;
  std::vector<CheckResult> checks;

  bool pass() const;
};

// CSV: fixed header fn,op,measure,n,p,value,quad_error; one row per cell;
// numbers printed with %.12g so identical inputs give identical bytes.
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string report_to_json(const Report& report);
// "PASS name -- detail" / "FAIL name -- detail" lines plus fit summaries.
std::string report_to_text(const Report& report);

// Computes every (measure, n) cell of the config, in parallel, aggregated in
// config order; attaches rate fits when requested. Deterministic from the
// config contents (including seed).
Report run_experiment(const ExperimentConfig& cfg);

// Named property batteries. Every check is deterministic from the seed.
Report verify_suite(const std::string& name, std::uint64_t seed);
std::vector<std::string> suite_names();

// Regenerates one of the published comparison tables, with its pinned
// expectations attached as checks: ex1 | ex1plus | step | ex2 | pr4 | pr5.
Report reproduce_example(const std::string& id);
std::vector<std::string> example_names();

}  // namespace torsmooth
