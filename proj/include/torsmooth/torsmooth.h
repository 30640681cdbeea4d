/*
 * torsmooth - sampling operators and smoothness measures on the torus [0,1)
 *
 * C interface to the shared library. All functions return TSM_OK (0) on
 * success or a TSM_ERR_* code on failure; the failing call leaves a
 * human-readable message in thread-local storage readable through
 * tsm_last_error(). Objects returned through tsm_*_create / tsm_*_apply
 * calls are owned by the caller and released with their tsm_*_destroy
 * function; strings returned through char** are released with
 * tsm_string_free.
 *
 * Unless stated otherwise, x arguments are positions on the torus (taken
 * mod 1), p is a norm exponent >= 1, and passing NULL for a
 * tsm_quad_options* selects the default integration tolerances.
 */
#ifndef TORSMOOTH_H
#define TORSMOOTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TSM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define TSM_API __attribute__((visibility("default")))
#else
#define TSM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* Status codes                                                        */
/* ------------------------------------------------------------------ */

#define TSM_OK 0
#define TSM_ERR_INVALID_ARGUMENT 1 /* bad id, parameter out of range, ... */
#define TSM_ERR_NUMERIC 2          /* integration failed to converge      */
#define TSM_ERR_UNSUPPORTED 3      /* operation undefined for this input  */
#define TSM_ERR_INTERNAL 4

TSM_API const char* tsm_version(void);

/* Message describing the most recent failure on this thread. Never NULL.
 * The buffer is owned by the library and overwritten by the next failure. */
TSM_API const char* tsm_last_error(void);

/* Releases any char* the library handed out through a char** out-param. */
TSM_API void tsm_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Opaque handles                                                      */
/* ------------------------------------------------------------------ */

typedef struct tsm_function tsm_function;       /* periodic function      */
typedef struct tsm_nodes tsm_nodes;             /* sampling node set      */
typedef struct tsm_operator tsm_operator;       /* sampling operator      */
typedef struct tsm_approximant tsm_approximant; /* one operator output    */
typedef struct tsm_report tsm_report;           /* experiment/suite run   */

/* ------------------------------------------------------------------ */
/* Plain-data result structs                                           */
/* ------------------------------------------------------------------ */

/* Integration tolerances and budgets. Zero or negative fields fall back to
 * the library defaults (fill with tsm_quad_defaults first to see them). */
typedef struct tsm_quad_options {
  double abs_tol;
  double rel_tol;
  int max_depth;
  long max_evals;
} tsm_quad_options;

typedef struct tsm_measure {
  double value;
  double quad_error; /* integration error carried by the value */
  int converged;     /* 0 when integration stalled; value is best effort */
  double arg_h;      /* maximizing step for sup-over-steps measures */
} tsm_measure;

typedef struct tsm_combined {
  double total;      /* node_term + omega_term */
  double node_term;  /* averaged-translate deviation on the nodes */
  double omega_term; /* modulus at scale 1/(node count) */
  double quad_error;
  double delta; /* averaging width actually used */
} tsm_combined;

typedef struct tsm_realization {
  double total;
  double err_term;   /* distance from f to the operator output */
  double deriv_term; /* scaled derivative seminorm of the output */
  double quad_error;
} tsm_realization;

typedef struct tsm_best_approx {
  double value;
  double error;
  int surrogate; /* 1 when p != 2: near-best upper bound, not the infimum */
} tsm_best_approx;

typedef struct tsm_fit {
  double exponent;
  double log_c;
  double residual_rms; /* log-space RMS about the fitted model */
  double c_low;        /* observed two-sided constants value/shape(n) */
  double c_high;
} tsm_fit;

typedef struct tsm_equivalence {
  double min_ratio;
  double max_ratio;
  int matched_zeros; /* pairs where both sides were zero to tolerance */
  int compared;
  int pass;
} tsm_equivalence;

typedef struct tsm_profile {
  double K1; /* sup  ||G_n f||_p / ||f||_{lp(X_n)} over the ensemble  */
  double K2; /* inf of the same ratio                                 */
  double K3; /* sup  n^s ||f - G_n f||_p / ||f^(s)||_p                */
  double K4; /* dyadic-difference derivative/value ratio              */
  double K5; /* sup  n^{-s} ||(G_n f)^(s)||_p / omega_s(G_n f, 1/n)_p */
  double gamma;
  int s_max;
  int sample_count;
  long mz_violations; /* failures of the explicit sampling bound */
} tsm_profile;

TSM_API void tsm_quad_defaults(tsm_quad_options* q);

/* ------------------------------------------------------------------ */
/* Function corpus                                                     */
/* ------------------------------------------------------------------ */

/* Newline-separated "id <TAB> description" catalog of corpus families. */
TSM_API int tsm_corpus_catalog(char** out);

/* Builds a corpus member from its id, e.g. "step", "sin_k:k=3",
 * "power_singularity:alpha=0.25", "spike_at_binary:beta=0.25". */
TSM_API int tsm_function_create(const char* id, tsm_function** out);
TSM_API void tsm_function_destroy(tsm_function* f);

/* Name the function reports in tables. Owned by the handle. */
TSM_API const char* tsm_function_name(const tsm_function* f);
TSM_API int tsm_function_bounded(const tsm_function* f, int* out);

/* Almost-everywhere view: the representative used inside integrals. */
TSM_API int tsm_function_eval(const tsm_function* f, double x, double* out);

/* Exact view at the rational point num/den: sees the values on the
 * measure-zero exceptional set that the a.e. view deliberately ignores. */
TSM_API int tsm_function_eval_exact(const tsm_function* f, long long num, long long den,
                                    double* out);

/* ------------------------------------------------------------------ */
/* Node sets                                                           */
/* ------------------------------------------------------------------ */

TSM_API int tsm_nodes_uniform(int count, tsm_nodes** out);
TSM_API int tsm_nodes_dyadic(int j, tsm_nodes** out); /* 2^j nodes k/2^j */

/* The 2*degree+1 uniform nodes consumed by degree-n interpolation. */
TSM_API int tsm_nodes_interpolation(int degree, tsm_nodes** out);

/* Space-separated "num/den" tokens. */
TSM_API int tsm_nodes_parse(const char* text, tsm_nodes** out);

/* Random rational offsets of at most eps = eps_num/eps_den times the uniform
 * spacing, deterministic in seed; eps must lie in [0, 1/2). */
TSM_API int tsm_nodes_perturb(const tsm_nodes* base, long long eps_num, long long eps_den,
                              uint64_t seed, tsm_nodes** out);
TSM_API void tsm_nodes_destroy(tsm_nodes* X);

TSM_API int tsm_nodes_size(const tsm_nodes* X, int* out);
TSM_API int tsm_nodes_gamma(const tsm_nodes* X, double* out); /* size * min gap */
TSM_API int tsm_nodes_point(const tsm_nodes* X, int k, double* out);
TSM_API int tsm_nodes_str(const tsm_nodes* X, char** out);

/* ------------------------------------------------------------------ */
/* Smoothness measures                                                 */
/* ------------------------------------------------------------------ */

/* Modulus of smoothness of order r at width delta: max over a log-spaced
 * step grid (endpoint delta included exactly) of the L_p norm of the r-th
 * difference. Values are lower approximations of the sup by construction;
 * quad_error tracks integration error only. */
TSM_API int tsm_omega(const tsm_function* f, int r, double p, double delta,
                      const tsm_quad_options* quad, tsm_measure* out);

/* Averaged modulus: L_p norm of the windowed local modulus on windows of
 * width r*delta. Defined for bounded functions and finite p only. */
TSM_API int tsm_tau(const tsm_function* f, int r, double p, double delta,
                    const tsm_quad_options* quad, tsm_measure* out);

/* One evaluation of the order-r averaged translate f_{delta,r}(x). */
TSM_API int tsm_steklov_value(const tsm_function* f, double delta, int r, double x,
                              const tsm_quad_options* quad, tsm_measure* out);

/* || f_{delta,r} - f ||_p over the whole torus. */
TSM_API int tsm_steklov_error(const tsm_function* f, double delta, int r, double p,
                              const tsm_quad_options* quad, tsm_measure* out);

/* Discrete deviation || f_{delta,r} - f ||_{lp(X)}: integral data averaged
 * around each node against the exact node value. */
TSM_API int tsm_steklov_node_deviation(const tsm_function* f, const tsm_nodes* X, double delta,
                                       int r, double p, const tsm_quad_options* quad,
                                       tsm_measure* out);

/* Two-part measure: node deviation at width delta (pass delta <= 0 to use
 * gamma(X)/|X|) plus the order-s modulus at width 1/|X|. */
TSM_API int tsm_combined_measure(const tsm_function* f, const tsm_nodes* X, int r, int s,
                                 double p, double delta, const tsm_quad_options* quad,
                                 tsm_combined* out);

/* ------------------------------------------------------------------ */
/* Sampling operators                                                  */
/* ------------------------------------------------------------------ */

/* Ids: lagrange | lagrange-z | mod-lagrange | quasi:<window> | kantorovich |
 * spline:<m>. lagrange-z requires an explicit node set (see
 * tsm_operator_create_with_nodes). */
TSM_API int tsm_operator_create(const char* id, tsm_operator** out);
TSM_API int tsm_operator_create_with_nodes(const char* id, const tsm_nodes* X,
                                           tsm_operator** out);
TSM_API void tsm_operator_destroy(tsm_operator* G);

TSM_API const char* tsm_operator_id(const tsm_operator* G);

/* 1 when the size parameter n is a dyadic exponent (2^n nodes). */
TSM_API int tsm_operator_dyadic(const tsm_operator* G, int* out);

/* The node set consumed at size parameter n. */
TSM_API int tsm_operator_nodes(const tsm_operator* G, int n, tsm_nodes** out);

/* Applies the operator once; evaluate the result as often as needed. */
TSM_API int tsm_operator_apply(const tsm_operator* G, const tsm_function* f, int n,
                               const tsm_quad_options* quad, tsm_approximant** out);
TSM_API void tsm_approximant_destroy(tsm_approximant* a);
TSM_API int tsm_approximant_eval(const tsm_approximant* a, double x, double* out);

/* L_p norm of the s-th derivative of the approximant (s = 0: the norm). */
TSM_API int tsm_approximant_derivative_norm(const tsm_approximant* a, int s, double p,
                                            const tsm_quad_options* quad, double* out);

/* || f - G_n f ||_p. */
TSM_API int tsm_approx_error(const tsm_function* f, const tsm_operator* G, int n, double p,
                             const tsm_quad_options* quad, tsm_measure* out);

/* Empirical constants of the sampling conditions over seeded polynomial
 * ensembles; trials_per_size <= 0 selects the default (50). */
TSM_API int tsm_operator_profile(const tsm_operator* G, double p, int s, uint64_t seed,
                                 int trials_per_size, tsm_profile* out);

/* ------------------------------------------------------------------ */
/* K-functionals and best approximation                                */
/* ------------------------------------------------------------------ */

/* min over a finite polynomial family of ||f-g||_p + delta^s ||g^(s)||_p. */
TSM_API int tsm_k_functional(const tsm_function* f, int s, double delta, double p,
                             const tsm_quad_options* quad, tsm_measure* out);

/* Same family at delta = 1/|X| with the discrete node term added. */
TSM_API int tsm_semi_discrete_k(const tsm_function* f, const tsm_nodes* X, int s, double p,
                                const tsm_quad_options* quad, tsm_measure* out);

/* || f - G_n f ||_p + ne^{-s} || (G_n f)^(s) ||_p, ne = |nodes_for(n)|. */
TSM_API int tsm_realization_measure(const tsm_function* f, const tsm_operator* G, int n, int s,
                                    double p, const tsm_quad_options* quad,
                                    tsm_realization* out);

/* Distance to degree-n polynomials: exact Parseval tail at p = 2, flagged
 * near-best surrogate otherwise. */
TSM_API int tsm_best_approx_error(const tsm_function* f, int n, double p,
                                  const tsm_quad_options* quad, tsm_best_approx* out);

/* ------------------------------------------------------------------ */
/* Rate fitting                                                        */
/* ------------------------------------------------------------------ */

/* model "pure_power": v ~ c n^a. model "power_log": v ~ c 2^{-n/p} n^b with
 * n a dyadic exponent. Requires count >= 4 and positive values. */
TSM_API int tsm_fit_rate(const double* n_values, const double* values, size_t count,
                         const char* model, double p, tsm_fit* out);

/* Per-n ratios a/b against a two-sided threshold; pairs where both sides are
 * below atol count as matched zeros. */
TSM_API int tsm_check_equivalence(const double* n_values, const double* a, const double* b,
                                  size_t count, double max_ratio, double atol,
                                  tsm_equivalence* out);

/* ------------------------------------------------------------------ */
/* Experiments, verification suites, reproduction tables               */
/* ------------------------------------------------------------------ */

/* Flat key=value experiment description; see the config reference in the
 * README. Deterministic from the text (including seed). */
TSM_API int tsm_run_experiment_text(const char* config_text, tsm_report** out);
TSM_API int tsm_run_experiment_file(const char* config_path, tsm_report** out);

/* Named property batteries; newline-separated names from tsm_suite_names. */
TSM_API int tsm_verify_suite(const char* name, uint64_t seed, tsm_report** out);
TSM_API int tsm_suite_names(char** out);

/* Regenerates a published comparison table with its pinned expectations
 * attached as checks; names from tsm_example_names. */
TSM_API int tsm_reproduce_example(const char* id, tsm_report** out);
TSM_API int tsm_example_names(char** out);

TSM_API void tsm_report_destroy(tsm_report* rep);
TSM_API int tsm_report_passed(const tsm_report* rep, int* out); /* 1 iff all checks pass */
TSM_API int tsm_report_text(const tsm_report* rep, char** out);
TSM_API int tsm_report_json(const tsm_report* rep, char** out);
TSM_API int tsm_report_csv(const tsm_report* rep, char** out); /* data rows only */

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TORSMOOTH_H */
