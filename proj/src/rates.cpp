#include "rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace torsmooth {

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs, const std::string& model,
                 double p) {
  if (model != "pure_power" && model != "power_log") {
    throw std::invalid_argument("fit_rate: unknown model '" + model + "'");
  }
  if (pairs.size() < 4) {
    throw std::invalid_argument("fit_rate: need at least 4 (n, value) pairs");
  }
  const bool power_log = (model == "power_log");
  if (power_log && !(p >= 1.0)) {
    throw std::invalid_argument("fit_rate: power_log model requires p >= 1");
  }

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (const auto& [n, v] : pairs) {
    if (!(n > 0.0) || !(v > 0.0) || !std::isfinite(n) || !std::isfinite(v)) {
      throw std::invalid_argument("fit_rate: n and value must be positive and finite");
    }
    // For power_log, n is the dyadic exponent: divide out the main 2^{-n/p}
    // decay and fit the remaining polynomial factor n^b.
    const double y = power_log ? std::log(v) + n * std::numbers::ln2 / p : std::log(v);
    xs.push_back(std::log(n));
    ys.push_back(y);
  }

  const auto m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("fit_rate: the n values must not all coincide");
  }

  RateFit fit;
  fit.model = model;
  fit.exponent = sxy / sxx;
  fit.log_c = my - fit.exponent * mx;

  double ss = 0.0;
  fit.c_low = std::numeric_limits<double>::infinity();
  fit.c_high = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.log_c + fit.exponent * xs[i]);
    ss += r * r;
    // value / shape with shape = n^a (times 2^{-n/p} for power_log, already
    // removed from ys): exp(y - a log n).
    const double c = std::exp(ys[i] - fit.exponent * xs[i]);
    fit.c_low = std::min(fit.c_low, c);
    fit.c_high = std::max(fit.c_high, c);
  }
  fit.residual_rms = std::sqrt(ss / m);
  return fit;
}

EquivalenceReport check_equivalence(const std::vector<std::pair<double, double>>& a,
                                    const std::vector<std::pair<double, double>>& b,
                                    double max_ratio, double atol) {
  if (!(max_ratio >= 1.0)) {
    throw std::invalid_argument("check_equivalence: max_ratio must be >= 1");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("check_equivalence: sequences have different lengths");
  }
  EquivalenceReport rep;
  rep.threshold = max_ratio;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first) {
      throw std::invalid_argument("check_equivalence: n values are not aligned");
    }
    const double va = a[i].second;
    const double vb = b[i].second;
    if (!(va >= 0.0) || !(vb >= 0.0)) {
      throw std::invalid_argument("check_equivalence: values must be non-negative");
    }
    if (va < atol && vb < atol) {
      ++rep.matched_zeros;
      continue;
    }
    if (vb == 0.0) {
      rep.ratios.push_back(std::numeric_limits<double>::infinity());
      rep.max_ratio = std::numeric_limits<double>::infinity();
      ++rep.compared;
      continue;
    }
    const double r = va / vb;
    rep.ratios.push_back(r);
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.compared;
  }
  if (rep.compared == 0) {
    rep.min_ratio = 1.0;
    rep.max_ratio = 1.0;
    rep.pass = true;
    return rep;
  }
  rep.pass = (rep.max_ratio <= max_ratio) && (rep.min_ratio >= 1.0 / max_ratio);
  return rep;
}

}  // namespace torsmooth
