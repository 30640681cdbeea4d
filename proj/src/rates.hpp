#pragma once

#include <string>
#include <utility>
#include <vector>

namespace torsmooth {

// Log-space least-squares fit of decay rates.
//   pure_power: v ~ c * n^a           (regress log v on log n)
//   power_log:  v ~ c * 2^{-n/p} n^b  (n is a dyadic exponent; the 2^{-n/p}
//                                      factor is divided out first)
// c_low/c_high are the observed two-sided constants min/max v_i / shape(n_i),
// with shape carrying no constant; they certify v ≍ shape empirically.
struct RateFit {
  std::string model;
  double exponent = 0.0;
  double log_c = 0.0;
  double residual_rms = 0.0;
  double c_low = 0.0;
  double c_high = 0.0;
};

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs, const std::string& model,
                 double p = 2.0);

// Per-n ratios A/B with two-sided acceptance: pass iff every ratio lies in
// [1/max_ratio, max_ratio]. Pairs with both values below atol count as
// matched zeros and contribute no ratio.
struct EquivalenceReport {
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int matched_zeros = 0;
  int compared = 0;
  double threshold = 0.0;
  bool pass = false;
};

EquivalenceReport check_equivalence(const std::vector<std::pair<double, double>>& a,
                                    const std::vector<std::pair<double, double>>& b,
                                    double max_ratio, double atol = 1e-10);

}  // namespace torsmooth
