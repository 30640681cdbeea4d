// Acceptance gate: ten numbered criteria, each reported as a single
// "PASS criterion N: ..." or "FAIL criterion N: ..." line.
//
//   acceptance              runs all ten
//   acceptance --criterion N  runs one (N in 1..10)
//
// Exit code is 0 iff every criterion that ran passed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "bench.hpp"
#include "kfunctional.hpp"
#include "node_set.hpp"
#include "operators.hpp"
#include "periodic_function.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "smoothness.hpp"
#include "trig_poly.hpp"

namespace {

using namespace torsmooth;

constexpr std::uint64_t kSeed = 20260815;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string strf(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  char buf[1024];
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Small worker pool; each job owns its slot so results are schedule-free.
void parallel(std::vector<std::function<void()>>& jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  hw = std::min<unsigned>(hw, 8);
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errs(jobs.size());
  auto worker = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        jobs[i]();
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < hw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
}

QuadratureSpec accept_quad() {
  QuadratureSpec q;
  q.abs_tol = 1e-9;
  q.rel_tol = 1e-8;
  return q;
}

std::string failing_checks(const Report& rep) {
  std::string out;
  int shown = 0;
  int failed = 0;
  for (const CheckResult& c : rep.checks) {
    if (c.pass) continue;
    ++failed;
    if (shown < 4) {
      if (!out.empty()) out += "; ";
      out += c.name + " (" + c.detail + ")";
      ++shown;
    }
  }
  if (failed > shown) out += strf("; +%d more", failed - shown);
  return out;
}

// 1. Interpolation reproduces every polynomial of its own degree exactly.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(kSeed);
  const SamplingOperator G;  // degree-n interpolation on the 2n+1 uniform nodes
  double worst = 0.0;
  int draws = 0;
  for (int n : {8, 16, 32, 64}) {
    for (int t = 0; t < 100; ++t) {
      TrigPoly T = random_real_trig_poly(n, rng);
      ApplyResult ar = apply_operator(G, from_trig_poly(T), n);
      worst = std::max(worst, (T - std::get<TrigPoly>(ar.out)).l2_norm());
      ++draws;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst < 1e-10 && secs < 10.0;
  o.detail = strf("max ||T - L_n T||_2 = %.3g over %d random polynomials, "
                  "n in {8,16,32,64}; %.2f s (< 10 s)",
                  worst, draws, secs);
  return o;
}

// 2. Explicit sampling bound: no violations over the seeded polynomial sweep.
Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = verify_suite("mz", kSeed);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = rep.pass() && secs < 30.0;
  std::string detail = rep.checks.empty() ? std::string("no checks") : rep.checks.front().detail;
  o.detail = detail + strf("; %.2f s (< 30 s)", secs);
  return o;
}

// 3. Averaging error bounded by the order-2r modulus with its explicit constant.
Outcome criterion3() {
  const QuadratureSpec quad = accept_quad();
  const double p = 2.0;
  struct Cell {
    std::string fn;
    int r;
    double delta;
    bool pass;
    double lhs, rhs, slack;
  };
  std::vector<Cell> cells;
  for (const char* id : {"sin_k:k=1", "step", "spike_at_binary:beta=0.25"}) {
    for (int r : {1, 2}) {
      for (double delta : {1.0 / 8.0, 1.0 / 32.0, 1.0 / 128.0}) {
        cells.push_back({id, r, delta, false, 0.0, 0.0, 0.0});
      }
    }
  }
  std::vector<std::function<void()>> jobs;
  for (Cell& c : cells) {
    jobs.push_back([&c, p, quad]() {
      PeriodicFunction f = make_corpus(c.fn);
      MeasureResult lhs = steklov_error(f, c.delta, c.r, p, quad);
      SmoothnessParams sp;
      sp.r = 2 * c.r;
      sp.p = p;
      sp.delta = c.delta;
      sp.quad = quad;
      MeasureResult w = omega(f, sp);
      const double kappa = 1.0 / binomial(2 * c.r, c.r);
      c.lhs = lhs.value;
      c.rhs = kappa * w.value + 2.0 * (lhs.quad_error + w.quad_error);
      c.slack = c.rhs - c.lhs;
      c.pass = c.lhs <= c.rhs;
    });
  }
  parallel(jobs);
  Outcome o;
  o.pass = true;
  double min_slack = 1e300;
  std::string bad;
  for (const Cell& c : cells) {
    min_slack = std::min(min_slack, c.slack);
    if (!c.pass) {
      o.pass = false;
      if (!bad.empty()) bad += "; ";
      bad += strf("%s r=%d d=%g: %.4g > %.4g", c.fn.c_str(), c.r, c.delta, c.lhs, c.rhs);
    }
  }
  o.detail = o.pass ? strf("%zu cells ({sin,step,spike} x r in {1,2} x delta in "
                           "{1/8,1/32,1/128}), all bounded; min slack %.3g",
                           cells.size(), min_slack)
                    : bad;
  return o;
}

// 4. Node-sampled averaging deviation bounded by kappa_1(r) (delta n)^{-1/p} tau_{2r}
//    at delta = gamma/n across the bounded corpus.
Outcome criterion4() {
  const QuadratureSpec quad = accept_quad();
  const double p = 2.0;
  struct Cell {
    std::string fn;
    int r;
    int n;
    bool perturbed;
    bool pass;
    double lhs, rhs, slack;
  };
  std::vector<Cell> cells;
  for (const char* id : {"sin_k:k=1", "step", "spike_at_binary:beta=0.25",
                         "spike_shifted:beta=0.25", "dirichlet"}) {
    for (int r : {1, 2}) {
      for (int n : {8, 16, 32, 64, 128}) {
        for (bool perturbed : {false, true}) {
          cells.push_back({id, r, n, perturbed, false, 0.0, 0.0, 0.0});
        }
      }
    }
  }
  std::vector<std::function<void()>> jobs;
  for (Cell& c : cells) {
    jobs.push_back([&c, p, quad]() {
      PeriodicFunction f = make_corpus(c.fn);
      NodeSet X = c.perturbed
                      ? perturb_nodes(uniform_nodes(c.n), Rational(1, 4),
                                      kSeed + static_cast<std::uint64_t>(c.n))
                      : uniform_nodes(c.n);
      const double delta = X.gamma() / X.size();
      MeasureResult dev = steklov_node_deviation(f, X, delta, c.r, p, quad);
      SmoothnessParams sp;
      sp.r = 2 * c.r;
      sp.p = p;
      sp.delta = delta;
      sp.quad = quad;
      MeasureResult tv = tau(f, sp);
      const double factor =
          (1.0 / binomial(2 * c.r, c.r)) * std::pow(delta * X.size(), -1.0 / p);
      c.lhs = dev.value;
      c.rhs = factor * tv.value + 2.0 * (dev.quad_error + tv.quad_error);
      c.slack = c.rhs - c.lhs;
      c.pass = c.lhs <= c.rhs;
    });
  }
  parallel(jobs);
  Outcome o;
  o.pass = true;
  double min_slack = 1e300;
  std::string bad;
  for (const Cell& c : cells) {
    min_slack = std::min(min_slack, c.slack);
    if (!c.pass) {
      o.pass = false;
      if (!bad.empty()) bad += "; ";
      bad += strf("%s r=%d n=%d%s: %.4g > %.4g", c.fn.c_str(), c.r, c.n,
                  c.perturbed ? " perturbed" : "", c.lhs, c.rhs);
    }
  }
  o.detail = o.pass ? strf("%zu cells (5 bounded functions x r in {1,2} x n in {8..128} x "
                           "{uniform,perturbed}), all bounded; min slack %.3g",
                           cells.size(), min_slack)
                    : bad;
  return o;
}

Outcome from_example(const std::string& id) {
  Report rep = reproduce_example(id);
  Outcome o;
  o.pass = rep.pass();
  int n_checks = static_cast<int>(rep.checks.size());
  if (o.pass) {
    o.detail = strf("%s: all %d table checks pass", id.c_str(), n_checks);
  } else {
    o.detail = id + ": " + failing_checks(rep);
  }
  return o;
}

// 5. The two exactly-solvable tables and the step table.
Outcome criterion5() {
  Outcome o;
  o.pass = true;
  std::string detail;
  for (const char* id : {"ex1", "ex1plus", "step"}) {
    Outcome part = from_example(id);
    o.pass = o.pass && part.pass;
    if (!detail.empty()) detail += " | ";
    detail += part.detail;
  }
  o.detail = detail;
  return o;
}

// 6. The unbounded-function rate table, with its runtime guard.
Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = from_example("ex2");
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 300.0;
  o.detail += strf("; %.1f s (< 300 s)", secs);
  return o;
}

// 7./8. The two spike-family rate tables at their published sizes.
Outcome criterion7() { return from_example("pr4"); }
Outcome criterion8() { return from_example("pr5"); }

// 9. Bounded two-sided ratios between the variational quantities and the
//    computable moduli, pooled over the smooth + spike corpus.
Outcome criterion9() {
  Report rep = verify_suite("kfunc-equivalence", kSeed);
  const char* prefixes[] = {"kfunc.vs.omega.", "semikfunc.vs.combined.",
                            "realization.vs.combined."};
  Outcome o;
  o.pass = true;
  int matched = 0;
  std::string detail;
  for (const CheckResult& c : rep.checks) {
    bool relevant = false;
    for (const char* pre : prefixes) {
      if (c.name.rfind(pre, 0) == 0) relevant = true;
    }
    if (!relevant) continue;
    ++matched;
    o.pass = o.pass && c.pass;
    if (!detail.empty()) detail += "; ";
    detail += c.name + ": " + c.detail;
  }
  if (matched == 0) {
    o.pass = false;
    detail = "no equivalence-ratio checks found";
  }
  o.detail = detail;
  return o;
}

// 10. The five property suites pass on three fixed seeds.
Outcome criterion10() {
  const std::vector<std::string> suites = {"moduli-properties", "ns", "steklov",
                                           "operator-conditions", "inverse-theorem"};
  const std::vector<std::uint64_t> seeds = {101, 202, 303};
  Outcome o;
  o.pass = true;
  int total = 0;
  std::string bad;
  for (const std::string& s : suites) {
    for (std::uint64_t seed : seeds) {
      Report rep = verify_suite(s, seed);
      total += static_cast<int>(rep.checks.size());
      if (!rep.pass()) {
        o.pass = false;
        if (!bad.empty()) bad += " | ";
        bad += s + strf("@%llu: ", static_cast<unsigned long long>(seed)) + failing_checks(rep);
      }
    }
  }
  o.detail = o.pass ? strf("5 suites x 3 seeds, %d checks, all pass", total) : bad;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::fprintf(stderr, "criterion must be 1..10\n");
    return 2;
  }

  using Fn = Outcome (*)();
  const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                         criterion6, criterion7, criterion8, criterion9, criterion10};

  bool all_pass = true;
  for (int k = 1; k <= 10; ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && o.pass;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k, o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
