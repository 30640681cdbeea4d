#include "kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace torsmooth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> trapezoid_coeffs(const PeriodicFunction& f, int max_freq,
                                                   int samples) {
  std::vector<double> vals(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    vals[static_cast<size_t>(k)] = f.eval_ae(static_cast<double>(k) / samples);
  }
  std::vector<std::complex<double>> out(static_cast<size_t>(2 * max_freq + 1));
  std::vector<std::complex<double>> tw(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    tw[static_cast<size_t>(k)] = std::polar(1.0, -kTwoPi * k / samples);
  }
  for (int l = -max_freq; l <= max_freq; ++l) {
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < samples; ++k) {
      const long long idx = (static_cast<long long>(l) * k) % samples;
      acc += vals[static_cast<size_t>(k)] * tw[static_cast<size_t>((idx + samples) % samples)];
    }
    out[static_cast<size_t>(l + max_freq)] = acc / static_cast<double>(samples);
  }
  return out;
}

}  // namespace

FourierTable fourier_table(const PeriodicFunction& f, int max_freq, const QuadratureSpec& quad) {
  if (max_freq < 0 || max_freq > (1 << 20)) {
    throw std::invalid_argument("fourier_table: frequency bound out of range");
  }
  FourierTable table;
  table.max_freq = max_freq;
  table.c.resize(static_cast<size_t>(2 * max_freq + 1));
  if (f.has_fourier_form()) {
    for (int l = -max_freq; l <= max_freq; ++l) {
      table.c[static_cast<size_t>(l + max_freq)] = f.fourier_coefficient(l);
    }
    return table;
  }
  const auto bps = f.breakpoint_positions();
  const auto sing = f.singular_positions();
  for (int l = 0; l <= max_freq; ++l) {
    QuadratureSpec spec = quad;
    spec.min_panels = std::max(spec.min_panels, l / 2 + 1);
    auto re = [&f, l](double x) { return f.eval_ae(x) * std::cos(kTwoPi * l * x); };
    auto im = [&f, l](double x) { return -f.eval_ae(x) * std::sin(kTwoPi * l * x); };
    IntegralResult ir_re = integrate_adaptive(re, 0.0, 1.0, bps, sing, spec);
    IntegralResult ir_im = l == 0 ? IntegralResult{}
                                  : integrate_adaptive(im, 0.0, 1.0, bps, sing, spec);
    const std::complex<double> c(ir_re.value, ir_im.value);
    table.c[static_cast<size_t>(l + max_freq)] = c;
    table.c[static_cast<size_t>(-l + max_freq)] = std::conj(c);  // f is real-valued
    table.coeff_error = std::max(table.coeff_error, ir_re.error + ir_im.error);
  }
  return table;
}

double vallee_poussin_taper(int n, int l) {
  const int a = std::abs(l);
  if (a <= n) return 1.0;
  if (a >= 2 * n) return 0.0;
  return static_cast<double>(2 * n - a) / n;
}

TrigPoly vallee_poussin(const PeriodicFunction& f, int n, double* coeff_error_out) {
  if (n < 1 || n > (1 << 18)) throw std::invalid_argument("vallee_poussin: n out of range");
  const int top = 2 * n - 1;
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(2 * top + 1));
  double err = 0.0;
  if (f.has_fourier_form()) {
    for (int l = -top; l <= top; ++l) {
      coeffs[static_cast<size_t>(l + top)] = f.fourier_coefficient(l) * vallee_poussin_taper(n, l);
    }
  } else {
    const int N1 = 16 * n;
    const int N2 = 32 * n;
    auto c1 = trapezoid_coeffs(f, top, N1);
    auto c2 = trapezoid_coeffs(f, top, N2);
    for (int l = -top; l <= top; ++l) {
      const auto a = c1[static_cast<size_t>(l + top)];
      const auto b = c2[static_cast<size_t>(l + top)];
      err = std::max(err, std::abs(a - b));
      coeffs[static_cast<size_t>(l + top)] = b * vallee_poussin_taper(n, l);
    }
  }
  if (coeff_error_out) *coeff_error_out = err;
  return TrigPoly(-top, std::move(coeffs));
}

BestApprox best_approx_error(const PeriodicFunction& f, int n, double p,
                             const QuadratureSpec& quad) {
  if (n < 0) throw std::invalid_argument("best_approx_error: negative degree");
  BestApprox out;
  if (p == 2.0) {
    double norm_sq;
    double norm_err = 0.0;
    if (f.has_l2_norm_sq()) {
      norm_sq = f.l2_norm_sq();
    } else {
      NormResult nr =
          lp_norm_fn([&f](double x) { return f.eval_ae(x); }, 2.0, f.breakpoint_positions(),
                     f.singular_positions(), quad);
      norm_sq = nr.value * nr.value;
      norm_err = 2.0 * nr.value * nr.error;
    }
    FourierTable table = fourier_table(f, n, quad);
    double partial = 0.0;
    double partial_err = 0.0;
    for (int l = -n; l <= n; ++l) {
      const double a = std::abs(table.at(l));
      partial += a * a;
      partial_err += 2.0 * a * table.coeff_error + table.coeff_error * table.coeff_error;
    }
    out.value = std::sqrt(std::max(0.0, norm_sq - partial));
    out.error = norm_err + partial_err;  // error on the squared tail
    return out;
  }
  if (std::isinf(p) || !(p >= 1.0)) {
    throw std::invalid_argument("best_approx_error: p must be finite and >= 1");
  }
  TrigPoly V = vallee_poussin(f, n);
  MeasureResult mr = approx_error(f, OperatorOutput(V), p, quad);
  out.value = mr.value;
  out.error = mr.quad_error;
  out.surrogate = true;
  return out;
}

namespace {

MeasureResult diff_norm(const PeriodicFunction& f, const KCandidate& cand, double p,
                        const QuadratureSpec& quad) {
  if (cand.is_zero && f.has_l2_norm_sq() && p == 2.0) {
    // ||f - 0||_2 exactly; keeps the a.e.-null corpus at a clean zero.
    return {std::sqrt(f.l2_norm_sq()), 0.0, true, 0.0};
  }
  return approx_error(f, OperatorOutput(cand.g), p, quad);
}

}  // namespace

std::vector<KCandidate> k_candidate_family(const PeriodicFunction& f, double delta_lo,
                                           double delta_hi, const QuadratureSpec& quad) {
  if (!(delta_lo > 0.0) || !(delta_hi >= delta_lo)) {
    throw std::invalid_argument("k_candidate_family: need 0 < delta_lo <= delta_hi");
  }
  std::vector<KCandidate> out;
  out.push_back({TrigPoly(), true});  // zero
  double mean;
  if (f.has_fourier_form()) {
    mean = f.fourier_coefficient(0).real();
  } else {
    mean = integrate_adaptive([&f](double x) { return f.eval_ae(x); }, 0.0, 1.0,
                              f.breakpoint_positions(), f.singular_positions(), quad)
               .value;
  }
  out.push_back({TrigPoly(0, {std::complex<double>(mean, 0.0)}), mean == 0.0});
  const double lo = 1.0 / (4.0 * delta_hi);
  const double hi = 4.0 / delta_lo;
  for (int m = 1; m <= (1 << 18); m *= 2) {
    if (m < lo) continue;
    if (m > hi) break;
    out.push_back({vallee_poussin(f, m), false});
  }
  return out;
}

MeasureResult k_functional_on(const PeriodicFunction& f, const std::vector<KCandidate>& family,
                              int s, double delta, double p, const QuadratureSpec& quad) {
  if (s < 1 || s > 16) throw std::invalid_argument("k_functional: s must lie in 1..16");
  if (!(delta > 0.0)) throw std::invalid_argument("k_functional: delta must be positive");
  MeasureResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const KCandidate& cand : family) {
    MeasureResult d = diff_norm(f, cand, p, quad);
    const double dn =
        cand.is_zero ? 0.0 : op_lp_norm(OperatorOutput(cand.g.derivative(s)), p, quad).value;
    const double obj = d.value + std::pow(delta, s) * dn;
    if (obj < best.value) {
      best.value = obj;
      best.quad_error = d.quad_error;
    }
  }
  return best;
}

MeasureResult k_functional(const PeriodicFunction& f, int s, double delta, double p,
                           const QuadratureSpec& quad) {
  return k_functional_on(f, k_candidate_family(f, delta, delta, quad), s, delta, p, quad);
}

MeasureResult semi_discrete_k(const PeriodicFunction& f, const NodeSet& X, int s, double p,
                              const QuadratureSpec& quad) {
  if (s < 1 || s > 16) throw std::invalid_argument("semi_discrete_k: s must lie in 1..16");
  const int n = X.size();
  if (n < 1) throw std::invalid_argument("semi_discrete_k: empty node set");
  const double delta = 1.0 / n;
  MeasureResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const KCandidate& cand : k_candidate_family(f, delta, delta, quad)) {
    std::vector<double> devs;
    devs.reserve(static_cast<size_t>(n));
    for (const Rational& q : X.points()) {
      const double gv = cand.is_zero ? 0.0 : cand.g.eval_real(q.to_double());
      devs.push_back(f.eval_exact(q) - gv);
    }
    MeasureResult d = diff_norm(f, cand, p, quad);
    const double dn =
        cand.is_zero ? 0.0 : op_lp_norm(OperatorOutput(cand.g.derivative(s)), p, quad).value;
    const double obj = discrete_lp(devs, p) + d.value + std::pow(delta, s) * dn;
    if (obj < best.value) {
      best.value = obj;
      best.quad_error = d.quad_error;
    }
  }
  return best;
}

RealizationResult realization(const PeriodicFunction& f, const SamplingOperator& G, int n, int s,
                              double p, const QuadratureSpec& quad) {
  if (s < 1) throw std::invalid_argument("realization: s must be positive");
  if (G.kind == SamplingOperator::Kind::spline && G.spline_m < s + 1) {
    throw std::invalid_argument("realization: spline order m must be at least s+1");
  }
  ApplyResult ar = apply_operator(G, f, n, quad);
  MeasureResult err = approx_error(f, ar.out, p, quad);
  // The derivative term is scaled by the sampling-set size, matching the
  // combined measure's internal scales (delta = gamma/|X|, omega at 1/|X|).
  const double ne = static_cast<double>(G.nodes_for(n).size());
  NormResult dn = op_lp_norm(op_derivative(ar.out, s), p, quad);
  RealizationResult out;
  out.err_term = err.value;
  out.deriv_term = std::pow(ne, -s) * dn.value;
  out.total = out.err_term + out.deriv_term;
  out.quad_error = err.quad_error + ar.node_quad_error + std::pow(ne, -s) * dn.error;
  return out;
}

}  // namespace torsmooth
