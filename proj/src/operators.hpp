#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "node_set.hpp"
#include "periodic_function.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "spline.hpp"
#include "smoothness.hpp"
#include "trig_poly.hpp"

namespace torsmooth {

// What a sampling operator produces: a trigonometric polynomial or a spline.
using OperatorOutput = std::variant<TrigPoly, SplineFn>;

double op_eval(const OperatorOutput& out, double x);
OperatorOutput op_derivative(const OperatorOutput& out, int s);
std::vector<double> op_breakpoints(const OperatorOutput& out);  // spline knots; empty for trig
int op_degree_hint(const OperatorOutput& out);  // oscillation scale for quadrature pre-split
NormResult op_lp_norm(const OperatorOutput& out, double p, QuadratureSpec spec);

// Degree-n interpolation on the 2n+1 uniform nodes, by DFT of exact samples.
TrigPoly lagrange(const PeriodicFunction& f, int n);

// Kernel-summation form of the same operator; O(n^2), kept as a cross-check.
double lagrange_kernel_sum(const PeriodicFunction& f, int n, double x);

// Degree-n interpolation on arbitrary odd node sets via the Vandermonde system
// in coefficient space. Reports the condition number; refuses nearly singular
// systems (nodes too close for the mesh constant gamma).
TrigPoly lagrange_general(const PeriodicFunction& f, const NodeSet& Z, double* cond_out = nullptr);

// Closed product form of the general interpolant. Underflows past n ~ 30;
// retained as a small-n oracle.
double lagrange_general_sine_product(const PeriodicFunction& f, const NodeSet& Z, double x);

// Interpolation on the 2^j dyadic nodes with the asymmetric frequency window
// [-2^{j-1}, 2^{j-1} - 1]; values off the grid are genuinely complex.
TrigPoly modified_lagrange(const PeriodicFunction& f, int j);

// Coefficient window for quasi-interpolation, defined on [-1/2, 1/2].
// Known names: ones, raised_cosine, triangle.
double quasi_window(const std::string& name, double u);

// Lagrange coefficients multiplied by window(l / (2n+1)).
TrigPoly quasi_interp(const PeriodicFunction& f, int n, const std::string& window);

// Lagrange applied to the width-1/(2n+1) window means of f instead of point
// values. node_quad_error_out aggregates the node-integral error estimates.
TrigPoly kantorovich(const PeriodicFunction& f, int n, const QuadratureSpec& quad = {},
                     double* node_quad_error_out = nullptr);

struct SamplingOperator {
  enum class Kind { lagrange, lagrange_general, modified_lagrange, quasi_interp, kantorovich, spline };

  Kind kind = Kind::lagrange;
  int spline_m = 4;                      // spline only
  std::string window = "raised_cosine";  // quasi_interp only
  std::optional<NodeSet> custom_nodes;   // lagrange_general only

  // Ids: lagrange | lagrange-z | mod-lagrange | quasi:<window> | kantorovich | spline:<m>
  static SamplingOperator parse(const std::string& id);
  std::string id() const;

  // The node set consumed at size parameter n. For mod-lagrange n is the
  // dyadic exponent j; for spline it is the interval count; otherwise the
  // polynomial degree (2n+1 nodes).
  NodeSet nodes_for(int n) const;

  // Natural n parameters for a target node count; used by rate sweeps.
  bool takes_dyadic_exponent() const { return kind == Kind::modified_lagrange; }
};

struct ApplyResult {
  OperatorOutput out;
  double node_quad_error = 0.0;  // kantorovich node integrals
  double cond = 0.0;             // lagrange_general system conditioning
};

ApplyResult apply_operator(const SamplingOperator& G, const PeriodicFunction& f, int n,
                           const QuadratureSpec& quad = {});

// || f - out ||_p with cuts at f's breakpoints and the output's knots.
MeasureResult approx_error(const PeriodicFunction& f, const OperatorOutput& out, double p,
                           const QuadratureSpec& quad = {});
MeasureResult approx_error(const PeriodicFunction& f, const SamplingOperator& G, int n, double p,
                           const QuadratureSpec& quad = {});

// Real random polynomial of exact degree <= n: independent normal cosine and
// sine amplitudes on every frequency.
TrigPoly random_real_trig_poly(int n, Rng& rng);

// Empirical constants of the sampling conditions, maxima/minima of observed
// ratios over seeded polynomial ensembles:
//   K1: sup ||G_n f||_p / ||f||_{lp(Xn)}      (ensemble: degree <= n)
//   K2: inf of the same ratio
//   K3: sup n^s ||f - G_n f||_p / ||f^(s)||_p (ensemble: degree 2n)
//   K4: sup ||(G_{2nu} f - G_nu f)^(s)||_p / (2^{s nu} ||G_{2nu} f - G_nu f||_p)
//   K5: sup n^{-s} ||(G_n f)^(s)||_p / omega_s(G_n f, 1/n)_p
// mz_violations counts failures of the explicit sampling bound
//   sum_k |T(x_k)|^p <= (p+1) (e/2) (2n + 1/min_gap) * integral |T|^p.
struct OperatorProfile {
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;
  double K4 = 0.0;
  double K5 = 0.0;
  double gamma = 0.0;
  int s_max = 0;
  int sample_count = 0;
  long mz_violations = 0;
};

OperatorProfile estimate_operator_constants(const SamplingOperator& G, double p, int s,
                                            std::uint64_t seed, int trials_per_size = 50);

}  // namespace torsmooth
