// Command-line front end. Links the shared C library only; all numerics live
// behind the torsmooth.h boundary.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torsmooth/torsmooth.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { tsm_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ReportDeleter {
  void operator()(tsm_report* r) const { tsm_report_destroy(r); }
};
using OwnedReport = std::unique_ptr<tsm_report, ReportDeleter>;

struct OperatorDeleter {
  void operator()(tsm_operator* g) const { tsm_operator_destroy(g); }
};
using OwnedOperator = std::unique_ptr<tsm_operator, OperatorDeleter>;

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = tsm_last_error();
  if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(2);
}

void require_ok(int rc, const std::string& context) {
  if (rc != TSM_OK) die(context);
}

std::string fetch_string(int (*fn)(char**), const std::string& context) {
  char* raw = nullptr;
  require_ok(fn(&raw), context);
  OwnedString owned(raw);
  return std::string(owned.get());
}

// Output destination shared by the report-producing subcommands.
struct OutputFlags {
  std::string format = "csv";
  std::string path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "file format for --out: csv | json | text")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    cmd->add_option("--out", path, "write the report to this file");
  }
};

// Text report to stdout, optional file in the requested format, exit status
// from the attached checks (0 when there are none).
int emit_report(tsm_report* rep, const OutputFlags& output, const std::string& file_override = "") {
  char* text = nullptr;
  require_ok(tsm_report_text(rep, &text), "rendering report");
  OwnedString text_owned(text);
  std::cout << text_owned.get();

  const std::string out_path = file_override.empty() ? output.path : file_override;
  if (!out_path.empty()) {
    char* payload = nullptr;
    if (output.format == "json") {
      require_ok(tsm_report_json(rep, &payload), "rendering json");
    } else if (output.format == "csv") {
      require_ok(tsm_report_csv(rep, &payload), "rendering csv");
    } else {
      require_ok(tsm_report_text(rep, &payload), "rendering text");
    }
    OwnedString payload_owned(payload);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die("cannot open output file " + out_path);
    out << payload_owned.get();
    std::cout << "wrote " << output.format << " to " << out_path << "\n";
  }

  int passed = 0;
  require_ok(tsm_report_passed(rep, &passed), "reading report status");
  return passed ? 0 : 1;
}

struct QuadFlags {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  int max_depth = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--abs-tol", abs_tol, "absolute integration tolerance");
    cmd->add_option("--rel-tol", rel_tol, "relative integration tolerance");
    cmd->add_option("--max-depth", max_depth, "integration refinement depth");
  }

  void append(std::ostringstream& cfg) const {
    if (abs_tol > 0.0) cfg << "abs_tol = " << abs_tol << "\n";
    if (rel_tol > 0.0) cfg << "rel_tol = " << rel_tol << "\n";
    if (max_depth > 0) cfg << "max_depth = " << max_depth << "\n";
  }
};

// Shared flags for subcommands that assemble an experiment config.
struct ExperimentFlags {
  std::string fn;
  std::string op;
  std::string n_list;
  std::string j_list;
  double p = 2.0;
  int r = 1;
  int s = 1;
  double delta = 0.0;
  std::string fit = "none";
  std::uint64_t seed = 1;
  QuadFlags quad;
  OutputFlags output;

  void attach(CLI::App* cmd, bool fn_required) {
    auto* fn_opt = cmd->add_option("--fn", fn, "corpus function id (see list-corpus)");
    if (fn_required) fn_opt->required();
    cmd->add_option("--op", op, "sampling operator id");
    cmd->add_option("--n", n_list, "comma list of sizes, strictly increasing");
    cmd->add_option("--j", j_list, "comma list of dyadic exponents (sizes 2^j)");
    cmd->add_option("--p", p, "norm exponent (default 2)");
    cmd->add_option("--r", r, "difference order (default 1)");
    cmd->add_option("--s", s, "derivative/modulus order (default 1)");
    cmd->add_option("--delta", delta, "fixed width; omitted derives from n");
    cmd->add_option("--fit", fit, "none | pure_power | power_log")
        ->check(CLI::IsMember({"none", "pure_power", "power_log"}));
    cmd->add_option("--seed", seed, "seed for randomized pieces");
    quad.attach(cmd);
    output.attach(cmd);
  }

  std::string config_text(const std::string& measures) const {
    std::ostringstream cfg;
    cfg << "fn = " << fn << "\n";
    if (!op.empty()) cfg << "op = " << op << "\n";
    cfg << "measures = " << measures << "\n";
    if (!n_list.empty()) cfg << "n_list = " << n_list << "\n";
    if (!j_list.empty()) cfg << "j_list = " << j_list << "\n";
    cfg << "p = " << p << "\n";
    cfg << "r = " << r << "\n";
    cfg << "s = " << s << "\n";
    if (delta > 0.0) cfg << "delta = " << delta << "\n";
    if (fit != "none") cfg << "fit = " << fit << "\n";
    cfg << "seed = " << seed << "\n";
    quad.append(cfg);
    return cfg.str();
  }

  int run(const std::string& measures) const {
    tsm_report* raw = nullptr;
    require_ok(tsm_run_experiment_text(config_text(measures).c_str(), &raw),
               "running experiment");
    OwnedReport rep(raw);
    return emit_report(rep.get(), output);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling operators and smoothness measures on the torus [0,1)"};
  app.set_version_flag("--version", std::string(tsm_version()));
  app.require_subcommand(1);

  // ---------------------------------------------------------------- corpus
  auto* list_cmd = app.add_subcommand("list-corpus", "list corpus functions");

  // --------------------------------------------------------------- measure
  auto* measure_cmd =
      app.add_subcommand("measure", "compute smoothness measures over a size sweep");
  ExperimentFlags measure_flags;
  std::string measures = "omega";
  std::string config_path;
  measure_cmd->add_option("--measures", measures,
                          "comma list: omega | tau | steklov-dev | steklov-error | combined | "
                          "approx-error | best-approx | kfunc | semi-kfunc | realization");
  measure_cmd->add_option("--config", config_path,
                          "key=value experiment file; replaces the other flags");
  measure_flags.attach(measure_cmd, /*fn_required=*/false);

  // ----------------------------------------------------------- approx-error
  auto* approx_cmd =
      app.add_subcommand("approx-error", "operator approximation error over a size sweep");
  ExperimentFlags approx_flags;
  bool with_best = false;
  approx_cmd->add_flag("--with-best", with_best, "also compute the best-approximation distance");
  approx_flags.attach(approx_cmd, /*fn_required=*/true);

  // ------------------------------------------------------------------ kfunc
  auto* kfunc_cmd = app.add_subcommand("kfunc", "K-functional family over a size sweep");
  ExperimentFlags kfunc_flags;
  std::string kfunc_kind = "kfunc";
  kfunc_cmd->add_option("--kind", kfunc_kind, "kfunc | semi-kfunc | realization")
      ->check(CLI::IsMember({"kfunc", "semi-kfunc", "realization"}));
  kfunc_flags.attach(kfunc_cmd, /*fn_required=*/true);

  // ---------------------------------------------------------------- profile
  auto* profile_cmd =
      app.add_subcommand("profile", "empirical sampling-condition constants of an operator");
  std::string profile_op;
  double profile_p = 2.0;
  int profile_s = 1;
  std::uint64_t profile_seed = 1;
  int profile_trials = 0;
  profile_cmd->add_option("--op", profile_op, "operator id")->required();
  profile_cmd->add_option("--p", profile_p, "norm exponent");
  profile_cmd->add_option("--s", profile_s, "derivative order");
  profile_cmd->add_option("--seed", profile_seed, "ensemble seed");
  profile_cmd->add_option("--trials", profile_trials, "polynomials per size");

  // ------------------------------------------------------------------ rates
  auto* rates_cmd = app.add_subcommand("rates", "fit a decay model to tabulated values");
  std::string rates_csv;
  std::string rates_measure;
  std::string rates_model = "pure_power";
  double rates_p = 2.0;
  rates_cmd->add_option("--csv", rates_csv, "input: report CSV or two-column n,value")
      ->required();
  rates_cmd->add_option("--measure", rates_measure, "row filter for report CSVs");
  rates_cmd->add_option("--model", rates_model, "pure_power | power_log")
      ->check(CLI::IsMember({"pure_power", "power_log"}));
  rates_cmd->add_option("--p", rates_p, "norm exponent for power_log");

  // ----------------------------------------------------------------- verify
  auto* verify_cmd = app.add_subcommand("verify", "run property suites");
  std::vector<std::string> verify_suites;
  std::uint64_t verify_seed = 1;
  bool verify_list = false;
  OutputFlags verify_output;
  verify_cmd->add_option("--suite", verify_suites, "suite name; repeatable; default all");
  verify_cmd->add_option("--seed", verify_seed, "suite seed");
  verify_cmd->add_flag("--list", verify_list, "print suite names and exit");
  verify_output.attach(verify_cmd);

  // -------------------------------------------------------------- reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "regenerate a published table");
  std::string repro_example;
  bool repro_list = false;
  OutputFlags repro_output;
  repro_cmd->add_option("--example", repro_example, "ex1 | ex1plus | step | ex2 | pr4 | pr5");
  repro_cmd->add_flag("--list", repro_list, "print table names and exit");
  repro_output.attach(repro_cmd);

  CLI11_PARSE(app, argc, argv);

  if (*list_cmd) {
    std::cout << fetch_string(tsm_corpus_catalog, "reading corpus catalog");
    return 0;
  }

  if (*measure_cmd) {
    if (!config_path.empty()) {
      tsm_report* raw = nullptr;
      require_ok(tsm_run_experiment_file(config_path.c_str(), &raw), "running experiment file");
      OwnedReport rep(raw);
      return emit_report(rep.get(), measure_flags.output);
    }
    if (measure_flags.fn.empty()) die("measure needs --fn or --config");
    return measure_flags.run(measures);
  }

  if (*approx_cmd) {
    if (approx_flags.op.empty()) die("approx-error needs --op");
    return approx_flags.run(with_best ? "approx-error,best-approx" : "approx-error");
  }

  if (*kfunc_cmd) {
    if (kfunc_kind == "realization" && kfunc_flags.op.empty())
      die("kfunc --kind realization needs --op");
    return kfunc_flags.run(kfunc_kind);
  }

  if (*profile_cmd) {
    tsm_operator* raw_op = nullptr;
    require_ok(tsm_operator_create(profile_op.c_str(), &raw_op), "parsing operator id");
    OwnedOperator G(raw_op);
    tsm_profile prof;
    require_ok(tsm_operator_profile(G.get(), profile_p, profile_s, profile_seed, profile_trials,
                                    &prof),
               "profiling operator");
    std::printf("operator %s  p=%g s=%d samples=%d\n", profile_op.c_str(), profile_p, profile_s,
                prof.sample_count);
    std::printf("K1 (sup node->norm ratio)      %.10g\n", prof.K1);
    std::printf("K2 (inf node->norm ratio)      %.10g\n", prof.K2);
    std::printf("K3 (Jackson-side constant)     %.10g\n", prof.K3);
    std::printf("K4 (dyadic derivative ratio)   %.10g\n", prof.K4);
    std::printf("K5 (derivative/modulus ratio)  %.10g\n", prof.K5);
    std::printf("gamma (mesh constant)          %.10g\n", prof.gamma);
    std::printf("s_max %d   sampling-bound violations %ld\n", prof.s_max, prof.mz_violations);
    return prof.mz_violations == 0 ? 0 : 1;
  }

  if (*rates_cmd) {
    std::ifstream in(rates_csv);
    if (!in) die("cannot open " + rates_csv);
    std::vector<double> ns, vs;
    std::string line;
    bool report_schema = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("fn,", 0) == 0) {
        report_schema = true;
        continue;
      }
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      try {
        if (report_schema && cells.size() >= 7) {
          if (!rates_measure.empty() && cells[2] != rates_measure) continue;
          ns.push_back(std::stod(cells[3]));
          vs.push_back(std::stod(cells[5]));
        } else if (cells.size() >= 2) {
          ns.push_back(std::stod(cells[0]));
          vs.push_back(std::stod(cells[1]));
        }
      } catch (const std::exception&) {
        die("unparseable CSV line: " + line);
      }
    }
    tsm_fit fit;
    require_ok(tsm_fit_rate(ns.data(), vs.data(), ns.size(), rates_model.c_str(), rates_p, &fit),
               "fitting rate model");
    std::printf("model=%s points=%zu exponent=%.6f residual_rms=%.3g c_low=%.6g c_high=%.6g\n",
                rates_model.c_str(), ns.size(), fit.exponent, fit.residual_rms, fit.c_low,
                fit.c_high);
    return 0;
  }

  if (*verify_cmd) {
    if (verify_list) {
      std::cout << fetch_string(tsm_suite_names, "reading suite names");
      return 0;
    }
    std::vector<std::string> suites = verify_suites;
    if (suites.empty()) {
      std::istringstream names(fetch_string(tsm_suite_names, "reading suite names"));
      std::string name;
      while (std::getline(names, name))
        if (!name.empty()) suites.push_back(name);
    }
    int status = 0;
    for (const std::string& name : suites) {
      tsm_report* raw = nullptr;
      require_ok(tsm_verify_suite(name.c_str(), verify_seed, &raw), "running suite " + name);
      OwnedReport rep(raw);
      std::string file = verify_output.path;
      if (!file.empty() && suites.size() > 1) file = name + "." + file;
      if (emit_report(rep.get(), verify_output, file) != 0) status = 1;
    }
    return status;
  }

  if (*repro_cmd) {
    if (repro_list) {
      std::cout << fetch_string(tsm_example_names, "reading table names");
      return 0;
    }
    if (repro_example.empty()) die("reproduce needs --example (or --list)");
    tsm_report* raw = nullptr;
    require_ok(tsm_reproduce_example(repro_example.c_str(), &raw),
               "reproducing table " + repro_example);
    OwnedReport rep(raw);
    return emit_report(rep.get(), repro_output);
  }

  return 0;
}
