#include "operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#ifdef TORSMOOTH_HAVE_EIGEN
#include <Eigen/Dense>
#include <Eigen/SVD>
#endif

namespace torsmooth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int check_degree(int n) {
  if (n < 1 || n > (1 << 20)) throw std::invalid_argument("operator degree out of range");
  return n;
}

QuadratureSpec with_oscillation(QuadratureSpec spec, int degree_hint) {
  spec.min_panels = std::max(spec.min_panels, degree_hint / 2 + 1);
  return spec;
}

}  // namespace

double op_eval(const OperatorOutput& out, double x) {
  if (const TrigPoly* t = std::get_if<TrigPoly>(&out)) return t->eval_real(x);
  return std::get<SplineFn>(out).eval(x);
}

OperatorOutput op_derivative(const OperatorOutput& out, int s) {
  if (const TrigPoly* t = std::get_if<TrigPoly>(&out)) return t->derivative(s);
  return std::get<SplineFn>(out).derivative(s);
}

std::vector<double> op_breakpoints(const OperatorOutput& out) {
  if (std::holds_alternative<TrigPoly>(out)) return {};
  return std::get<SplineFn>(out).knots();
}

int op_degree_hint(const OperatorOutput& out) {
  if (const TrigPoly* t = std::get_if<TrigPoly>(&out)) return t->max_abs_freq();
  return std::get<SplineFn>(out).intervals();
}

NormResult op_lp_norm(const OperatorOutput& out, double p, QuadratureSpec spec) {
  if (p == 2.0) {
    if (const TrigPoly* t = std::get_if<TrigPoly>(&out)) return {t->l2_norm(), 0.0};
  }
  spec = with_oscillation(spec, op_degree_hint(out));
  auto g = [&out](double x) { return op_eval(out, x); };
  return lp_norm_fn(g, p, op_breakpoints(out), {}, spec);
}

TrigPoly lagrange(const PeriodicFunction& f, int n) {
  check_degree(n);
  const int N = 2 * n + 1;
  std::vector<double> samples(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) samples[static_cast<size_t>(k)] = f.eval_exact(Rational(k, N));
  return dft_interpolate(samples, -n);
}

double lagrange_kernel_sum(const PeriodicFunction& f, int n, double x) {
  check_degree(n);
  const int N = 2 * n + 1;
  double acc = 0.0;
  for (int k = 0; k < N; ++k) {
    acc += f.eval_exact(Rational(k, N)) * dirichlet_kernel(n, x - static_cast<double>(k) / N);
  }
  return acc / N;
}

TrigPoly lagrange_general(const PeriodicFunction& f, const NodeSet& Z, double* cond_out) {
#ifndef TORSMOOTH_HAVE_EIGEN
  (void)f;
  (void)Z;
  (void)cond_out;
  throw std::runtime_error("lagrange_general requires an Eigen-enabled build");
#else
  const int N = Z.size();
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("lagrange_general: node count must be odd and >= 3");
  }
  const int n = (N - 1) / 2;
  Eigen::MatrixXcd A(N, N);
  Eigen::VectorXcd y(N);
  for (int k = 0; k < N; ++k) {
    const double zk = Z.point_double(k);
    for (int c = 0; c < N; ++c) {
      const int freq = c - n;
      A(k, c) = std::polar(1.0, kTwoPi * freq * zk);
    }
    y(k) = f.eval_exact(Z.point(k));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(N - 1);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (cond_out) *cond_out = cond;
  if (!(cond < 1e12)) {
    throw std::runtime_error("lagrange_general: system numerically singular (cond=" +
                             std::to_string(cond) + ", gamma=" + std::to_string(Z.gamma()) +
                             "); nodes too close");
  }
  Eigen::VectorXcd c = svd.solve(y);
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) coeffs[static_cast<size_t>(i)] = c(i);
  return TrigPoly(-n, std::move(coeffs));
#endif
}

double lagrange_general_sine_product(const PeriodicFunction& f, const NodeSet& Z, double x) {
  const int N = Z.size();
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("lagrange_general: node count must be odd and >= 3");
  }
  double acc = 0.0;
  for (int k = 0; k < N; ++k) {
    double num = 1.0, den = 1.0;
    const double zk = Z.point_double(k);
    for (int j = 0; j < N; ++j) {
      if (j == k) continue;
      const double zj = Z.point_double(j);
      num *= std::sin(std::numbers::pi * (x - zj));
      den *= std::sin(std::numbers::pi * (zk - zj));
    }
    acc += f.eval_exact(Z.point(k)) * num / den;
  }
  return acc;
}

TrigPoly modified_lagrange(const PeriodicFunction& f, int j) {
  if (j < 2 || j > 24) throw std::invalid_argument("modified_lagrange: j must lie in 2..24");
  const int N = 1 << j;
  std::vector<double> samples(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) samples[static_cast<size_t>(k)] = f.eval_exact(Rational(k, N));
  return dft_interpolate(samples, -N / 2);
}

double quasi_window(const std::string& name, double u) {
  if (u < -0.5 || u > 0.5) return 0.0;
  if (name == "ones") return 1.0;
  if (name == "raised_cosine") return 0.5 * (1.0 + std::cos(kTwoPi * u));
  if (name == "triangle") return 1.0 - 2.0 * std::abs(u);
  throw std::invalid_argument("quasi_interp: unknown window '" + name + "'");
}

TrigPoly quasi_interp(const PeriodicFunction& f, int n, const std::string& window) {
  quasi_window(window, 0.0);  // validate the name before sampling
  TrigPoly L = lagrange(f, n);
  const int N = 2 * n + 1;
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(N));
  for (int l = -n; l <= n; ++l) {
    coeffs[static_cast<size_t>(l + n)] =
        L.coeff(l) * quasi_window(window, static_cast<double>(l) / N);
  }
  return TrigPoly(-n, std::move(coeffs));
}

TrigPoly kantorovich(const PeriodicFunction& f, int n, const QuadratureSpec& quad,
                     double* node_quad_error_out) {
  check_degree(n);
  const int N = 2 * n + 1;
  const double delta = 1.0 / N;
  std::vector<double> samples(static_cast<size_t>(N));
  double worst = 0.0;
  for (int k = 0; k < N; ++k) {
    MeasureResult sv = steklov_value(f, delta, 1, static_cast<double>(k) / N, quad);
    samples[static_cast<size_t>(k)] = sv.value;
    worst = std::max(worst, sv.quad_error);
  }
  if (node_quad_error_out) *node_quad_error_out = worst;
  return dft_interpolate(samples, -n);
}

SamplingOperator SamplingOperator::parse(const std::string& id) {
  SamplingOperator G;
  if (id == "lagrange") {
    G.kind = Kind::lagrange;
  } else if (id == "lagrange-z") {
    G.kind = Kind::lagrange_general;
  } else if (id == "mod-lagrange") {
    G.kind = Kind::modified_lagrange;
  } else if (id == "kantorovich") {
    G.kind = Kind::kantorovich;
  } else if (id.rfind("quasi:", 0) == 0) {
    G.kind = Kind::quasi_interp;
    G.window = id.substr(6);
    quasi_window(G.window, 0.0);
  } else if (id.rfind("spline:", 0) == 0) {
    G.kind = Kind::spline;
    G.spline_m = std::stoi(id.substr(7));
    if (G.spline_m < 1 || G.spline_m > 12) {
      throw std::invalid_argument("spline operator: m must lie in 1..12");
    }
  } else {
    throw std::invalid_argument("unknown operator id '" + id + "'");
  }
  return G;
}

std::string SamplingOperator::id() const {
  switch (kind) {
    case Kind::lagrange:
      return "lagrange";
    case Kind::lagrange_general:
      return "lagrange-z";
    case Kind::modified_lagrange:
      return "mod-lagrange";
    case Kind::quasi_interp:
      return "quasi:" + window;
    case Kind::kantorovich:
      return "kantorovich";
    case Kind::spline:
      return "spline:" + std::to_string(spline_m);
  }
  return "?";
}

NodeSet SamplingOperator::nodes_for(int n) const {
  switch (kind) {
    case Kind::lagrange_general:
      if (!custom_nodes) {
        throw std::invalid_argument("lagrange-z requires an explicit node set");
      }
      return *custom_nodes;
    case Kind::modified_lagrange:
      return dyadic_nodes(n);
    case Kind::spline:
      return uniform_nodes(n);
    default:
      return lagrange_nodes(n);
  }
}

ApplyResult apply_operator(const SamplingOperator& G, const PeriodicFunction& f, int n,
                           const QuadratureSpec& quad) {
  switch (G.kind) {
    case SamplingOperator::Kind::lagrange:
      return {lagrange(f, n), 0.0, 0.0};
    case SamplingOperator::Kind::lagrange_general: {
      double cond = 0.0;
      TrigPoly t = lagrange_general(f, G.nodes_for(n), &cond);
      return {std::move(t), 0.0, cond};
    }
    case SamplingOperator::Kind::modified_lagrange:
      return {modified_lagrange(f, n), 0.0, 0.0};
    case SamplingOperator::Kind::quasi_interp:
      return {quasi_interp(f, n, G.window), 0.0, 0.0};
    case SamplingOperator::Kind::kantorovich: {
      double nqe = 0.0;
      TrigPoly t = kantorovich(f, n, quad, &nqe);
      return {std::move(t), nqe, 0.0};
    }
    case SamplingOperator::Kind::spline:
      return {spline_interp(f, G.spline_m, n), 0.0, 0.0};
  }
  throw std::logic_error("apply_operator: unreachable");
}

MeasureResult approx_error(const PeriodicFunction& f, const OperatorOutput& out, double p,
                           const QuadratureSpec& quad) {
  auto g = [&f, &out](double x) { return f.eval_ae(x) - op_eval(out, x); };
  std::vector<double> cuts = f.breakpoint_positions();
  for (double b : op_breakpoints(out)) cuts.push_back(b);
  NormResult nr = lp_norm_fn(g, p, cuts, f.singular_positions(),
                             with_oscillation(quad, op_degree_hint(out)));
  return {nr.value, nr.error, true, 0.0};
}

MeasureResult approx_error(const PeriodicFunction& f, const SamplingOperator& G, int n, double p,
                           const QuadratureSpec& quad) {
  ApplyResult ar = apply_operator(G, f, n, quad);
  MeasureResult mr = approx_error(f, ar.out, p, quad);
  mr.quad_error += ar.node_quad_error;
  return mr;
}

TrigPoly random_real_trig_poly(int n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("random_real_trig_poly: negative degree");
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(2 * n + 1));
  coeffs[static_cast<size_t>(n)] = std::complex<double>(rng.normal(), 0.0);
  for (int l = 1; l <= n; ++l) {
    const std::complex<double> c(0.5 * rng.normal(), 0.5 * rng.normal());
    coeffs[static_cast<size_t>(n + l)] = c;
    coeffs[static_cast<size_t>(n - l)] = std::conj(c);
  }
  return TrigPoly(-n, std::move(coeffs));
}

namespace {

// Ensemble degree whose polynomials the operator reproduces (or, for splines,
// a probe scale well below the interval count).
int range_degree(const SamplingOperator& G, int n) {
  switch (G.kind) {
    case SamplingOperator::Kind::modified_lagrange:
      return (1 << (n - 1)) - 1;
    case SamplingOperator::Kind::spline:
      return std::max(2, n / 4);
    default:
      return n;
  }
}

double n_eff(const SamplingOperator& G, int n) {
  if (G.takes_dyadic_exponent()) return std::ldexp(1.0, n - 1);
  return static_cast<double>(n);
}

NormResult mixed_diff_norm(const OperatorOutput& a, const OperatorOutput& b, double p,
                           const QuadratureSpec& quad) {
  if (p == 2.0 && std::holds_alternative<TrigPoly>(a) && std::holds_alternative<TrigPoly>(b)) {
    return {(std::get<TrigPoly>(a) - std::get<TrigPoly>(b)).l2_norm(), 0.0};
  }
  auto g = [&a, &b](double x) { return op_eval(a, x) - op_eval(b, x); };
  std::vector<double> cuts = op_breakpoints(a);
  for (double x : op_breakpoints(b)) cuts.push_back(x);
  QuadratureSpec spec =
      with_oscillation(quad, std::max(op_degree_hint(a), op_degree_hint(b)));
  return lp_norm_fn(g, p, cuts, {}, spec);
}

}  // namespace

OperatorProfile estimate_operator_constants(const SamplingOperator& G, double p, int s,
                                            std::uint64_t seed, int trials_per_size) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("profile: p must be finite, >= 1");
  if (s < 1) throw std::invalid_argument("profile: s must be positive");
  if (trials_per_size < 1) throw std::invalid_argument("profile: need at least one trial");

  std::vector<int> sizes;
  if (G.takes_dyadic_exponent()) {
    sizes = {3, 4, 5};
  } else if (G.kind == SamplingOperator::Kind::spline) {
    sizes = {16, 24, 32, 48};
  } else {
    sizes = {4, 8, 16, 32};
  }

  OperatorProfile prof;
  prof.s_max = s;
  if (G.kind == SamplingOperator::Kind::spline) prof.s_max = std::min(s, G.spline_m - 1);
  const int su = prof.s_max;
  if (su < 1) throw std::invalid_argument("profile: spline order too low for requested s");
  prof.K2 = std::numeric_limits<double>::infinity();
  prof.gamma = std::numeric_limits<double>::infinity();

  QuadratureSpec quad;
  quad.abs_tol = 1e-9;
  quad.rel_tol = 1e-8;

  Rng rng(seed);
  const double mz_factor_base = (p + 1.0) * std::numbers::e / 2.0;

  for (size_t si = 0; si < sizes.size(); ++si) {
    const int n = sizes[si];
    const NodeSet X = G.nodes_for(n);
    prof.gamma = std::min(prof.gamma, X.gamma());
    const int deg = range_degree(G, n);
    const double ne = n_eff(G, n);

    for (int trial = 0; trial < trials_per_size; ++trial) {
      TrigPoly T = random_real_trig_poly(deg, rng);
      PeriodicFunction fT = from_trig_poly(T);
      std::vector<double> node_vals;
      node_vals.reserve(static_cast<size_t>(X.size()));
      for (const Rational& q : X.points()) node_vals.push_back(T.eval_real(q.to_double()));
      const double node_norm = discrete_lp(node_vals, p);
      if (node_norm < 1e-12) continue;  // degenerate draw

      ApplyResult ar = apply_operator(G, fT, n, quad);
      const double out_norm = op_lp_norm(ar.out, p, quad).value;
      const double ratio = out_norm / node_norm;
      prof.K1 = std::max(prof.K1, ratio);
      prof.K2 = std::min(prof.K2, ratio);
      ++prof.sample_count;

      // Explicit sampling bound: sum |T(x_k)|^p <= (p+1)(e/2)(2 deg + 1/min_gap) int |T|^p.
      double lhs = 0.0;
      for (double v : node_vals) lhs += std::pow(std::abs(v), p);
      const double tnorm =
          p == 2.0 ? T.l2_norm()
                   : op_lp_norm(OperatorOutput(T), p, quad).value;
      const double gap = X.min_gap().to_double();
      const double rhs = mz_factor_base * (2.0 * deg + 1.0 / gap) * std::pow(tnorm, p);
      if (lhs > rhs * (1.0 + 1e-9)) ++prof.mz_violations;

      // Smoothness-side constants on an out-of-range draw.
      TrigPoly S = random_real_trig_poly(2 * deg + 1, rng);
      PeriodicFunction fS = from_trig_poly(S);
      ApplyResult as = apply_operator(G, fS, n, quad);
      const double err = approx_error(fS, as.out, p, quad).value;
      const double dnorm =
          p == 2.0 ? S.derivative(su).l2_norm()
                   : op_lp_norm(OperatorOutput(S.derivative(su)), p, quad).value;
      if (dnorm > 1e-12) {
        prof.K3 = std::max(prof.K3, std::pow(ne, su) * err / dnorm);
      }

      if (si + 1 < sizes.size() && trial % 5 == 0) {
        const int n2 = sizes[si + 1];
        ApplyResult as2 = apply_operator(G, fS, n2, quad);
        const double dd = mixed_diff_norm(as2.out, as.out, p, quad).value;
        if (dd > 1e-12) {
          const double dds =
              mixed_diff_norm(op_derivative(as2.out, su), op_derivative(as.out, su), p, quad)
                  .value;
          prof.K4 = std::max(prof.K4, dds / (std::pow(n_eff(G, n2), su) * dd));
        }
      }

      if (trial % 10 == 0) {
        PeriodicFunction out_fn =
            std::holds_alternative<TrigPoly>(ar.out)
                ? from_trig_poly(std::get<TrigPoly>(ar.out), "profile_out")
                : to_periodic(std::get<SplineFn>(ar.out), "profile_out");
        SmoothnessParams sp;
        sp.r = su;
        sp.s = su;
        sp.p = p;
        sp.delta = 1.0 / ne;
        sp.h_grid_size = 12;
        sp.quad = quad;
        const double om = omega(out_fn, sp).value;
        if (om > 1e-12) {
          prof.K5 = std::max(prof.K5, std::pow(ne, -su) *
                                          op_lp_norm(op_derivative(ar.out, su), p, quad).value /
                                          om);
        }
      }
    }
  }
  if (prof.sample_count < 50) {
    throw std::runtime_error("profile: ensemble degenerate (fewer than 50 usable samples)");
  }
  return prof;
}

}  // namespace torsmooth
