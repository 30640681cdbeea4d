#include "torsmooth/torsmooth.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "kfunctional.hpp"
#include "node_set.hpp"
#include "operators.hpp"
#include "periodic_function.hpp"
#include "quadrature.hpp"
#include "rates.hpp"
#include "rational.hpp"
#include "smoothness.hpp"

struct tsm_function {
  torsmooth::PeriodicFunction fn;
};
struct tsm_nodes {
  torsmooth::NodeSet X;
};
struct tsm_operator {
  torsmooth::SamplingOperator G;
};
struct tsm_approximant {
  torsmooth::OperatorOutput out;
};
struct tsm_report {
  torsmooth::Report rep;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const std::string& msg) {
  t_last_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const torsmooth::QuadratureError& e) {
    return fail(TSM_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TSM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(TSM_ERR_UNSUPPORTED, e.what());
  } catch (const std::exception& e) {
    return fail(TSM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TSM_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int put_string(const std::string& s, char** out) {
  *out = dup_string(s);
  return *out == nullptr ? fail(TSM_ERR_INTERNAL, "out of memory") : TSM_OK;
}

torsmooth::QuadratureSpec to_spec(const tsm_quad_options* q) {
  torsmooth::QuadratureSpec spec;
  if (q != nullptr) {
    if (q->abs_tol > 0.0) spec.abs_tol = q->abs_tol;
    if (q->rel_tol > 0.0) spec.rel_tol = q->rel_tol;
    if (q->max_depth > 0) spec.max_depth = q->max_depth;
    if (q->max_evals > 0) spec.max_evals = q->max_evals;
  }
  return spec;
}

void to_measure(const torsmooth::MeasureResult& m, tsm_measure* out) {
  out->value = m.value;
  out->quad_error = m.quad_error;
  out->converged = m.converged ? 1 : 0;
  out->arg_h = m.arg_h;
}

int check_args(std::initializer_list<const void*> args) {
  for (const void* a : args) {
    if (a == nullptr) return fail(TSM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return TSM_OK;
}

/* Handle and string getters null their out-param up front so a failed call
 * never leaves the caller holding an indeterminate pointer. */
template <typename T>
void clear_out(T** out) {
  if (out != nullptr) *out = nullptr;
}

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& item : items) {
    out += item;
    out += '\n';
  }
  return out;
}

}  // namespace

extern "C" {

const char* tsm_version(void) { return "1.0.0"; }

const char* tsm_last_error(void) { return t_last_error.c_str(); }

void tsm_string_free(char* s) { std::free(s); }

void tsm_quad_defaults(tsm_quad_options* q) {
  if (q == nullptr) return;
  torsmooth::QuadratureSpec spec;
  q->abs_tol = spec.abs_tol;
  q->rel_tol = spec.rel_tol;
  q->max_depth = spec.max_depth;
  q->max_evals = spec.max_evals;
}

/* ------------------------------ corpus ------------------------------ */

int tsm_corpus_catalog(char** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] {
    std::string text;
    for (const auto& [id, description] : torsmooth::corpus_catalog()) {
      text += id;
      text += '\t';
      text += description;
      text += '\n';
    }
    return put_string(text, out);
  });
}

int tsm_function_create(const char* id, tsm_function** out) {
  if (int rc = check_args({id, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_function{torsmooth::make_corpus(id)};
    return TSM_OK;
  });
}

void tsm_function_destroy(tsm_function* f) { delete f; }

const char* tsm_function_name(const tsm_function* f) {
  return f == nullptr ? "" : f->fn.name().c_str();
}

int tsm_function_bounded(const tsm_function* f, int* out) {
  if (int rc = check_args({f, out})) return rc;
  *out = f->fn.bounded() ? 1 : 0;
  return TSM_OK;
}

int tsm_function_eval(const tsm_function* f, double x, double* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    *out = f->fn.eval_ae(x);
    return TSM_OK;
  });
}

int tsm_function_eval_exact(const tsm_function* f, long long num, long long den, double* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    *out = f->fn.eval_exact(torsmooth::Rational(num, den));
    return TSM_OK;
  });
}

/* ------------------------------ nodes ------------------------------- */

int tsm_nodes_uniform(int count, tsm_nodes** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{torsmooth::uniform_nodes(count)};
    return TSM_OK;
  });
}

int tsm_nodes_dyadic(int j, tsm_nodes** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{torsmooth::dyadic_nodes(j)};
    return TSM_OK;
  });
}

int tsm_nodes_interpolation(int degree, tsm_nodes** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{torsmooth::lagrange_nodes(degree)};
    return TSM_OK;
  });
}

int tsm_nodes_parse(const char* text, tsm_nodes** out) {
  if (int rc = check_args({text, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{torsmooth::NodeSet::parse(text)};
    return TSM_OK;
  });
}

int tsm_nodes_perturb(const tsm_nodes* base, long long eps_num, long long eps_den, uint64_t seed,
                      tsm_nodes** out) {
  if (int rc = check_args({base, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{
        torsmooth::perturb_nodes(base->X, torsmooth::Rational(eps_num, eps_den), seed)};
    return TSM_OK;
  });
}

void tsm_nodes_destroy(tsm_nodes* X) { delete X; }

int tsm_nodes_size(const tsm_nodes* X, int* out) {
  if (int rc = check_args({X, out})) return rc;
  *out = X->X.size();
  return TSM_OK;
}

int tsm_nodes_gamma(const tsm_nodes* X, double* out) {
  if (int rc = check_args({X, out})) return rc;
  return guarded([&] {
    *out = X->X.gamma();
    return TSM_OK;
  });
}

int tsm_nodes_point(const tsm_nodes* X, int k, double* out) {
  if (int rc = check_args({X, out})) return rc;
  if (k < 0 || k >= X->X.size())
    return fail(TSM_ERR_INVALID_ARGUMENT, "node index out of range");
  *out = X->X.point_double(k);
  return TSM_OK;
}

int tsm_nodes_str(const tsm_nodes* X, char** out) {
  if (int rc = check_args({X, out})) return rc;
  clear_out(out);
  return guarded([&] { return put_string(X->X.str(), out); });
}

/* --------------------------- smoothness ----------------------------- */

namespace {

torsmooth::SmoothnessParams make_params(int r, int s, double p, double delta,
                                        const tsm_quad_options* quad) {
  torsmooth::SmoothnessParams params;
  params.r = r;
  params.s = s;
  params.p = p;
  params.delta = delta;
  params.quad = to_spec(quad);
  return params;
}

}  // namespace

int tsm_omega(const tsm_function* f, int r, double p, double delta, const tsm_quad_options* quad,
              tsm_measure* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::omega(f->fn, make_params(r, 1, p, delta, quad)), out);
    return TSM_OK;
  });
}

int tsm_tau(const tsm_function* f, int r, double p, double delta, const tsm_quad_options* quad,
            tsm_measure* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::tau(f->fn, make_params(r, 1, p, delta, quad)), out);
    return TSM_OK;
  });
}

int tsm_steklov_value(const tsm_function* f, double delta, int r, double x,
                      const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::steklov_value(f->fn, delta, r, x, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_steklov_error(const tsm_function* f, double delta, int r, double p,
                      const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::steklov_error(f->fn, delta, r, p, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_steklov_node_deviation(const tsm_function* f, const tsm_nodes* X, double delta, int r,
                               double p, const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, X, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::steklov_node_deviation(f->fn, X->X, delta, r, p, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_combined_measure(const tsm_function* f, const tsm_nodes* X, int r, int s, double p,
                         double delta, const tsm_quad_options* quad, tsm_combined* out) {
  if (int rc = check_args({f, X, out})) return rc;
  return guarded([&] {
    torsmooth::CombinedResult cr =
        torsmooth::combined_modulus(f->fn, X->X, make_params(r, s, p, delta, quad));
    out->total = cr.total;
    out->node_term = cr.node_term;
    out->omega_term = cr.omega_term;
    out->quad_error = cr.quad_error;
    out->delta = cr.delta;
    return TSM_OK;
  });
}

/* ---------------------------- operators ----------------------------- */

int tsm_operator_create(const char* id, tsm_operator** out) {
  if (int rc = check_args({id, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_operator{torsmooth::SamplingOperator::parse(id)};
    return TSM_OK;
  });
}

int tsm_operator_create_with_nodes(const char* id, const tsm_nodes* X, tsm_operator** out) {
  if (int rc = check_args({id, X, out})) return rc;
  clear_out(out);
  return guarded([&] {
    torsmooth::SamplingOperator G = torsmooth::SamplingOperator::parse(id);
    G.custom_nodes = X->X;
    *out = new tsm_operator{std::move(G)};
    return TSM_OK;
  });
}

void tsm_operator_destroy(tsm_operator* G) { delete G; }

const char* tsm_operator_id(const tsm_operator* G) {
  static thread_local std::string t_id;
  if (G == nullptr) return "";
  t_id = G->G.id();
  return t_id.c_str();
}

int tsm_operator_dyadic(const tsm_operator* G, int* out) {
  if (int rc = check_args({G, out})) return rc;
  *out = G->G.takes_dyadic_exponent() ? 1 : 0;
  return TSM_OK;
}

int tsm_operator_nodes(const tsm_operator* G, int n, tsm_nodes** out) {
  if (int rc = check_args({G, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_nodes{G->G.nodes_for(n)};
    return TSM_OK;
  });
}

int tsm_operator_apply(const tsm_operator* G, const tsm_function* f, int n,
                       const tsm_quad_options* quad, tsm_approximant** out) {
  if (int rc = check_args({G, f, out})) return rc;
  clear_out(out);
  return guarded([&] {
    torsmooth::ApplyResult applied = torsmooth::apply_operator(G->G, f->fn, n, to_spec(quad));
    *out = new tsm_approximant{std::move(applied.out)};
    return TSM_OK;
  });
}

void tsm_approximant_destroy(tsm_approximant* a) { delete a; }

int tsm_approximant_eval(const tsm_approximant* a, double x, double* out) {
  if (int rc = check_args({a, out})) return rc;
  return guarded([&] {
    *out = torsmooth::op_eval(a->out, x);
    return TSM_OK;
  });
}

int tsm_approximant_derivative_norm(const tsm_approximant* a, int s, double p,
                                    const tsm_quad_options* quad, double* out) {
  if (int rc = check_args({a, out})) return rc;
  if (s < 0) return fail(TSM_ERR_INVALID_ARGUMENT, "derivative order must be >= 0");
  return guarded([&] {
    const torsmooth::OperatorOutput* target = &a->out;
    torsmooth::OperatorOutput derived;
    if (s > 0) {
      derived = torsmooth::op_derivative(a->out, s);
      target = &derived;
    }
    *out = torsmooth::op_lp_norm(*target, p, to_spec(quad)).value;
    return TSM_OK;
  });
}

int tsm_approx_error(const tsm_function* f, const tsm_operator* G, int n, double p,
                     const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, G, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::approx_error(f->fn, G->G, n, p, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_operator_profile(const tsm_operator* G, double p, int s, uint64_t seed,
                         int trials_per_size, tsm_profile* out) {
  if (int rc = check_args({G, out})) return rc;
  return guarded([&] {
    torsmooth::OperatorProfile prof =
        trials_per_size > 0
            ? torsmooth::estimate_operator_constants(G->G, p, s, seed, trials_per_size)
            : torsmooth::estimate_operator_constants(G->G, p, s, seed);
    out->K1 = prof.K1;
    out->K2 = prof.K2;
    out->K3 = prof.K3;
    out->K4 = prof.K4;
    out->K5 = prof.K5;
    out->gamma = prof.gamma;
    out->s_max = prof.s_max;
    out->sample_count = prof.sample_count;
    out->mz_violations = prof.mz_violations;
    return TSM_OK;
  });
}

/* --------------------------- k-functionals -------------------------- */

int tsm_k_functional(const tsm_function* f, int s, double delta, double p,
                     const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::k_functional(f->fn, s, delta, p, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_semi_discrete_k(const tsm_function* f, const tsm_nodes* X, int s, double p,
                        const tsm_quad_options* quad, tsm_measure* out) {
  if (int rc = check_args({f, X, out})) return rc;
  return guarded([&] {
    to_measure(torsmooth::semi_discrete_k(f->fn, X->X, s, p, to_spec(quad)), out);
    return TSM_OK;
  });
}

int tsm_realization_measure(const tsm_function* f, const tsm_operator* G, int n, int s, double p,
                            const tsm_quad_options* quad, tsm_realization* out) {
  if (int rc = check_args({f, G, out})) return rc;
  return guarded([&] {
    torsmooth::RealizationResult res =
        torsmooth::realization(f->fn, G->G, n, s, p, to_spec(quad));
    out->total = res.total;
    out->err_term = res.err_term;
    out->deriv_term = res.deriv_term;
    out->quad_error = res.quad_error;
    return TSM_OK;
  });
}

int tsm_best_approx_error(const tsm_function* f, int n, double p, const tsm_quad_options* quad,
                          tsm_best_approx* out) {
  if (int rc = check_args({f, out})) return rc;
  return guarded([&] {
    torsmooth::BestApprox ba = torsmooth::best_approx_error(f->fn, n, p, to_spec(quad));
    out->value = ba.value;
    out->error = ba.error;
    out->surrogate = ba.surrogate ? 1 : 0;
    return TSM_OK;
  });
}

/* ------------------------------ rates ------------------------------- */

int tsm_fit_rate(const double* n_values, const double* values, size_t count, const char* model,
                 double p, tsm_fit* out) {
  if (int rc = check_args({n_values, values, model, out})) return rc;
  return guarded([&] {
    std::vector<std::pair<double, double>> pairs(count);
    for (size_t i = 0; i < count; ++i) pairs[i] = {n_values[i], values[i]};
    torsmooth::RateFit fit = torsmooth::fit_rate(pairs, model, p);
    out->exponent = fit.exponent;
    out->log_c = fit.log_c;
    out->residual_rms = fit.residual_rms;
    out->c_low = fit.c_low;
    out->c_high = fit.c_high;
    return TSM_OK;
  });
}

int tsm_check_equivalence(const double* n_values, const double* a, const double* b, size_t count,
                          double max_ratio, double atol, tsm_equivalence* out) {
  if (int rc = check_args({n_values, a, b, out})) return rc;
  return guarded([&] {
    std::vector<std::pair<double, double>> va(count), vb(count);
    for (size_t i = 0; i < count; ++i) {
      va[i] = {n_values[i], a[i]};
      vb[i] = {n_values[i], b[i]};
    }
    torsmooth::EquivalenceReport rep =
        atol > 0.0 ? torsmooth::check_equivalence(va, vb, max_ratio, atol)
                   : torsmooth::check_equivalence(va, vb, max_ratio);
    out->min_ratio = rep.min_ratio;
    out->max_ratio = rep.max_ratio;
    out->matched_zeros = rep.matched_zeros;
    out->compared = rep.compared;
    out->pass = rep.pass ? 1 : 0;
    return TSM_OK;
  });
}

/* ----------------------------- reports ------------------------------ */

int tsm_run_experiment_text(const char* config_text, tsm_report** out) {
  if (int rc = check_args({config_text, out})) return rc;
  clear_out(out);
  return guarded([&] {
    torsmooth::ExperimentConfig cfg = torsmooth::ExperimentConfig::parse_text(config_text);
    *out = new tsm_report{torsmooth::run_experiment(cfg)};
    return TSM_OK;
  });
}

int tsm_run_experiment_file(const char* config_path, tsm_report** out) {
  if (int rc = check_args({config_path, out})) return rc;
  clear_out(out);
  return guarded([&] {
    torsmooth::ExperimentConfig cfg = torsmooth::ExperimentConfig::load(config_path);
    *out = new tsm_report{torsmooth::run_experiment(cfg)};
    return TSM_OK;
  });
}

int tsm_verify_suite(const char* name, uint64_t seed, tsm_report** out) {
  if (int rc = check_args({name, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_report{torsmooth::verify_suite(name, seed)};
    return TSM_OK;
  });
}

int tsm_suite_names(char** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] { return put_string(join_lines(torsmooth::suite_names()), out); });
}

int tsm_reproduce_example(const char* id, tsm_report** out) {
  if (int rc = check_args({id, out})) return rc;
  clear_out(out);
  return guarded([&] {
    *out = new tsm_report{torsmooth::reproduce_example(id)};
    return TSM_OK;
  });
}

int tsm_example_names(char** out) {
  if (int rc = check_args({out})) return rc;
  clear_out(out);
  return guarded([&] { return put_string(join_lines(torsmooth::example_names()), out); });
}

void tsm_report_destroy(tsm_report* rep) { delete rep; }

int tsm_report_passed(const tsm_report* rep, int* out) {
  if (int rc = check_args({rep, out})) return rc;
  *out = rep->rep.pass() ? 1 : 0;
  return TSM_OK;
}

int tsm_report_text(const tsm_report* rep, char** out) {
  if (int rc = check_args({rep, out})) return rc;
  clear_out(out);
  return guarded([&] { return put_string(torsmooth::report_to_text(rep->rep), out); });
}

int tsm_report_json(const tsm_report* rep, char** out) {
  if (int rc = check_args({rep, out})) return rc;
  return guarded([&] { return put_string(torsmooth::report_to_json(rep->rep), out); });
}

int tsm_report_csv(const tsm_report* rep, char** out) {
  if (int rc = check_args({rep, out})) return rc;
  return guarded([&] { return put_string(torsmooth::rows_to_csv(rep->rep.rows), out); });
}

} /* extern "C" */
