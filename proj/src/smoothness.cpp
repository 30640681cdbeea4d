#include "smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace torsmooth {

namespace {

double wrap01(double x) {
  double y = x - std::floor(x);
  return y >= 1.0 ? 0.0 : y;
}

// Signs (-1)^{r-j} C(r,j) of the forward difference.
std::vector<double> difference_weights(int r) {
  std::vector<double> w(static_cast<size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) {
    w[static_cast<size_t>(j)] = ((r - j) % 2 == 0 ? 1.0 : -1.0) * binomial(r, j);
  }
  return w;
}

std::vector<double> shifted_cut_points(const std::vector<double>& bps_mod1, double h, int r) {
  std::vector<double> out;
  out.reserve(bps_mod1.size() * (static_cast<size_t>(r) + 1));
  for (double b : bps_mod1) {
    for (int j = 0; j <= r; ++j) out.push_back(wrap01(b - j * h));
  }
  return out;
}

void check_order(int r) {
  if (r < 1 || r > 16) throw std::invalid_argument("difference order must lie in 1..16");
}

// A failed norm quadrature reports the integral of |g|^p; convert value and
// error bound back to norm units.
MeasureResult failed_norm(const QuadratureError& e, double p) {
  MeasureResult out;
  out.converged = false;
  const double vp = std::max(e.value, 0.0);
  out.value = std::pow(vp, 1.0 / p);
  out.quad_error = vp > 0.0 ? std::max(out.value - std::pow(std::max(vp - e.error, 0.0), 1.0 / p),
                                       std::pow(vp + e.error, 1.0 / p) - out.value)
                            : std::pow(e.error, 1.0 / p);
  return out;
}

}  // namespace

void SmoothnessParams::validate() const {
  check_order(r);
  if (s < 1 || s > 2 * r) throw std::invalid_argument("order s must satisfy 1 <= s <= 2r");
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent p must be >= 1");
  if (h_grid_size < 8 || window_grid_size < 8) {
    throw std::invalid_argument("candidate grids need at least 8 points");
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return std::round(v);
}

double discrete_lp(const std::vector<double>& values, double p) {
  if (values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("discrete_lp: p must be >= 1");
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

double finite_difference(const PeriodicFunction& f, double x, double h, int r) {
  check_order(r);
  const auto w = difference_weights(r);
  double acc = 0.0;
  for (int j = 0; j <= r; ++j) acc += w[static_cast<size_t>(j)] * f.eval_ae(x + j * h);
  return acc;
}

double finite_difference(const PeriodicFunction& f, const Rational& x, const Rational& h, int r) {
  check_order(r);
  const auto w = difference_weights(r);
  double acc = 0.0;
  Rational arg = x;
  for (int j = 0; j <= r; ++j) {
    acc += w[static_cast<size_t>(j)] * f.eval_exact(arg);
    if (j < r) arg = arg + h;
  }
  return acc;
}

std::vector<double> log_spaced_steps(double delta, int count) {
  if (!(delta > 0.0)) throw std::invalid_argument("log_spaced_steps: delta must be positive");
  if (count < 1) throw std::invalid_argument("log_spaced_steps: count must be positive");
  std::vector<double> hs(static_cast<size_t>(count));
  if (count == 1) {
    hs[0] = delta;
    return hs;
  }
  const double lo = std::log(delta) - 3.0 * std::log(10.0);
  const double hi = std::log(delta);
  for (int i = 0; i < count; ++i) {
    hs[static_cast<size_t>(i)] = std::exp(lo + (hi - lo) * i / (count - 1));
  }
  hs.back() = delta;  // endpoint must be exact: several identities test h = delta
  return hs;
}

MeasureResult omega_on_grid(const PeriodicFunction& f, int r, double p,
                            const std::vector<double>& h_values, const QuadratureSpec& quad) {
  check_order(r);
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("omega: p must be finite and >= 1");
  }
  const auto bps = f.breakpoint_positions();
  const auto sing = f.singular_positions();
  MeasureResult best;
  for (double h : h_values) {
    if (!(h > 0.0)) throw std::invalid_argument("omega: steps must be positive");
    auto g = [&f, h, r](double x) { return finite_difference(f, x, h, r); };
    NormResult nr = lp_norm_fn(g, p, shifted_cut_points(bps, h, r), shifted_cut_points(sing, h, r),
                               quad);
    if (nr.value > best.value) {
      best.value = nr.value;
      best.quad_error = nr.error;
      best.arg_h = h;
    }
  }
  return best;
}

MeasureResult omega(const PeriodicFunction& f, const SmoothnessParams& params) {
  params.validate();
  if (!(params.delta > 0.0)) throw std::invalid_argument("omega: delta must be positive");
  return omega_on_grid(f, params.r, params.p, log_spaced_steps(params.delta, params.h_grid_size),
                       params.quad);
}

double local_modulus(const PeriodicFunction& f, double x, int r, double delta,
                     int window_grid_size) {
  check_order(r);
  if (!(delta > 0.0)) throw std::invalid_argument("local_modulus: delta must be positive");
  const int W = std::max(window_grid_size, 8);
  const double lo = x - 0.5 * r * delta;
  const double hi = x + 0.5 * r * delta;
  const auto w = difference_weights(r);

  std::vector<double> ts;
  for (int i = 0; i <= W; ++i) ts.push_back(lo + (hi - lo) * i / W);
  auto bps_in = breakpoints_in_interval(f.breakpoint_positions(), lo, hi);
  if (bps_in.size() > static_cast<size_t>(W)) {
    // Candidate count is quadratic in the enrichment size; windows near an
    // accumulation point of features would otherwise dominate the whole norm
    // computation. Subsample evenly (the result stays a lower bound of the
    // windowed sup either way).
    std::vector<double> thin;
    const size_t m = static_cast<size_t>(W);
    for (size_t i = 0; i < m; ++i) {
      thin.push_back(bps_in[i * (bps_in.size() - 1) / (m - 1)]);
    }
    bps_in = std::move(thin);
  }
  ts.insert(ts.end(), bps_in.begin(), bps_in.end());
  std::sort(ts.begin(), ts.end());

  double best = 0.0;
  auto consider_ae = [&](double t, double h) {
    if (!(h > 0.0) || t < lo - 1e-14 || t + r * h > hi + 1e-14) return;
    double acc = 0.0;
    for (int j = 0; j <= r; ++j) acc += w[static_cast<size_t>(j)] * f.eval_ae(t + j * h);
    best = std::max(best, std::abs(acc));
  };

  for (double t : ts) {
    const double hmax = (hi - t) / r;
    if (!(hmax > 0.0)) continue;
    for (int j = 1; j <= W; ++j) consider_ae(t, hmax * j / W);
    for (double b : bps_in) {
      for (int nu : {1, (r + 1) / 2, r}) {
        if (nu < 1) continue;
        const double h = (b - t) / nu;
        if (h > 0.0 && h <= hmax) consider_ae(t, h);
      }
    }
  }

  // Mixed differences: pin the nu-th argument to a point where the exact view
  // is authoritative, evaluate the rest a.e. These reach sup values supported
  // on breakpoints and measure-zero exceptional sets.
  struct ExactPoint {
    double u;
    double value;
  };
  std::vector<ExactPoint> exact_pts;
  for (const auto& b : f.breakpoints()) {
    if (!b.exact_pos) continue;
    for (int k = -2; k <= 2; ++k) {
      const double u = b.x + k;
      if (u > lo && u < hi) exact_pts.push_back({u, f.eval_exact(*b.exact_pos)});
    }
  }
  if (f.has_exceptional_set()) {
    if (auto q = f.exceptional_proxy(lo, hi)) {
      exact_pts.push_back({q->to_double(), f.eval_exact(*q)});
    }
  }
  auto consider_pinned = [&](const ExactPoint& e, int nu, double h) {
    if (!(h > 0.0)) return;
    const double t = e.u - nu * h;
    if (t < lo - 1e-14 || t + r * h > hi + 1e-14) return;
    double acc = 0.0;
    for (int jj = 0; jj <= r; ++jj) {
      const double val = jj == nu ? e.value : f.eval_ae(t + jj * h);
      acc += w[static_cast<size_t>(jj)] * val;
    }
    best = std::max(best, std::abs(acc));
  };
  for (const auto& e : exact_pts) {
    for (int nu = 0; nu <= r; ++nu) {
      for (int j = 1; j <= W; ++j) consider_pinned(e, nu, (hi - lo) / r * j / W);
      // Largest step that keeps the pinned difference inside the window, so a
      // point near the edge still contributes its full mixed value.
      double hfit = (hi - lo) / r;
      if (nu > 0) hfit = std::min(hfit, (e.u - lo) / nu);
      if (nu < r) hfit = std::min(hfit, (hi - e.u) / (r - nu));
      consider_pinned(e, nu, hfit);
      consider_pinned(e, nu, 0.5 * hfit);
    }
  }
  return best;
}

MeasureResult tau(const PeriodicFunction& f, const SmoothnessParams& params) {
  params.validate();
  if (!f.bounded()) {
    throw std::invalid_argument("tau undefined for unbounded function " + f.name());
  }
  if (std::isinf(params.p)) throw std::invalid_argument("tau: p must be finite");
  if (!(params.delta > 0.0)) throw std::invalid_argument("tau: delta must be positive");
  const double delta = params.delta;
  const int r = params.r;
  const int W = params.window_grid_size;

  auto g = [&f, r, delta, W](double x) { return local_modulus(f, x, r, delta, W); };
  // The integrand kinks when a window edge crosses a feature of f.
  std::vector<double> cuts;
  for (double b : f.breakpoint_positions()) {
    cuts.push_back(b);
    cuts.push_back(wrap01(b - 0.5 * r * delta));
    cuts.push_back(wrap01(b + 0.5 * r * delta));
  }
  // The integrand is a gridded sup: piecewise smooth, but with kinks off the
  // declared cuts. Full machine-precision integration is not meaningful, so
  // the tolerance floor is raised and non-convergence degrades to a flag.
  QuadratureSpec spec = params.quad;
  spec.abs_tol = std::max(spec.abs_tol, 1e-8);
  spec.rel_tol = std::max(spec.rel_tol, 1e-4);
  spec.max_depth = std::min(spec.max_depth, 10);
  spec.max_evals = std::min<long>(spec.max_evals, 4000000);
  MeasureResult out;
  try {
    NormResult nr = lp_norm_fn(g, params.p, cuts, {}, spec);
    out.value = nr.value;
    out.quad_error = nr.error;
  } catch (const QuadratureError& e) {
    out = failed_norm(e, params.p);
  }
  return out;
}

MeasureResult steklov_value(const PeriodicFunction& f, double delta, int r, double x,
                            const QuadratureSpec& quad) {
  check_order(r);
  if (!(delta > 0.0)) throw std::invalid_argument("steklov: delta must be positive");
  const auto bps = f.breakpoint_positions();
  const auto sing = f.singular_positions();
  const double sign0 = (r % 2 == 1) ? 1.0 : -1.0;  // (-1)^{r+1}
  const double scale = sign0 / binomial(2 * r, r) * (2.0 / delta);
  double acc = 0.0;
  double err = 0.0;
  for (int nu = 0; nu < r; ++nu) {
    const double half_width = (r - nu) * delta / (2.0 * r);
    const double weight = ((nu % 2 == 0) ? 1.0 : -1.0) * binomial(2 * r, nu) *
                          (static_cast<double>(r) / (r - nu));
    const double a = x - half_width;
    const double b = x + half_width;
    auto g = [&f](double u) { return f.eval_ae(u); };
    IntegralResult ir = integrate_adaptive(g, a, b, breakpoints_in_interval(bps, a, b),
                                           breakpoints_in_interval(sing, a, b), quad);
    acc += weight * ir.value;
    err += std::abs(weight) * ir.error;
  }
  MeasureResult out;
  out.value = scale * acc;
  out.quad_error = std::abs(scale) * err;
  return out;
}

PeriodicFunction steklov(const PeriodicFunction& f, double delta, int r,
                         const QuadratureSpec& quad) {
  check_order(r);
  if (!(delta > 0.0)) throw std::invalid_argument("steklov: delta must be positive");
  std::vector<Breakpoint> bps;
  for (const auto& b : f.breakpoints()) {
    for (int nu = 0; nu < r; ++nu) {
      const double half_width = (r - nu) * delta / (2.0 * r);
      bps.push_back({wrap01(b.x - half_width), std::nullopt, false, 0.0});
      bps.push_back({wrap01(b.x + half_width), std::nullopt, false, 0.0});
    }
  }
  auto shared = std::make_shared<PeriodicFunction>(f);
  auto ae = [shared, delta, r, quad](double x) {
    return steklov_value(*shared, delta, r, x, quad).value;
  };
  std::string name = f.name() + "_avg(r=" + std::to_string(r) + ")";
  return PeriodicFunction(
      std::move(name), [ae](const Rational& q) { return ae(q.to_double()); }, ae, std::move(bps),
      true);
}

MeasureResult steklov_node_deviation(const PeriodicFunction& f, const NodeSet& X, double delta,
                                     int r, double p, const QuadratureSpec& quad) {
  std::vector<double> devs, errs;
  devs.reserve(static_cast<size_t>(X.size()));
  errs.reserve(static_cast<size_t>(X.size()));
  for (const Rational& q : X.points()) {
    MeasureResult sv = steklov_value(f, delta, r, q.to_double(), quad);
    devs.push_back(sv.value - f.eval_exact(q));
    errs.push_back(sv.quad_error);
  }
  MeasureResult out;
  out.value = discrete_lp(devs, p);
  out.quad_error = discrete_lp(errs, p);  // triangle inequality in lp(X)
  return out;
}

MeasureResult steklov_error(const PeriodicFunction& f, double delta, int r, double p,
                            const QuadratureSpec& quad) {
  PeriodicFunction avg = steklov(f, delta, r, quad);
  std::vector<double> cuts = f.breakpoint_positions();
  for (double b : avg.breakpoint_positions()) cuts.push_back(b);
  auto g = [&f, &avg](double x) { return avg.eval_ae(x) - f.eval_ae(x); };
  try {
    NormResult nr = lp_norm_fn(g, p, cuts, f.singular_positions(), quad);
    return {nr.value, nr.error, true, 0.0};
  } catch (const QuadratureError& e) {
    return failed_norm(e, p);
  }
}

CombinedResult combined_modulus(const PeriodicFunction& f, const NodeSet& X,
                                const SmoothnessParams& params) {
  params.validate();
  const int n = X.size();
  if (n < 1) throw std::invalid_argument("combined_modulus: empty node set");
  CombinedResult out;
  out.delta = params.delta > 0.0 ? params.delta : X.gamma() / n;
  MeasureResult node = steklov_node_deviation(f, X, out.delta, params.r, params.p, params.quad);
  SmoothnessParams op = params;
  op.r = params.s;
  op.delta = 1.0 / n;
  MeasureResult om = omega(f, op);
  out.node_term = node.value;
  out.omega_term = om.value;
  out.total = node.value + om.value;
  out.quad_error = node.quad_error + om.quad_error;
  return out;
}

}  // namespace torsmooth
