#pragma once

#include <complex>
#include <vector>

#include "node_set.hpp"
#include "operators.hpp"
#include "periodic_function.hpp"
#include "quadrature.hpp"
#include "trig_poly.hpp"

namespace torsmooth {

// Fourier coefficients c_l, |l| <= max_freq. Closed forms are used where the
// function carries them; otherwise each coefficient is an adaptive integral
// (breakpoint- and singularity-aware). coeff_error bounds every entry.
struct FourierTable {
  int max_freq = 0;
  std::vector<std::complex<double>> c;  // index l + max_freq
  double coeff_error = 0.0;

  std::complex<double> at(int l) const { return c[static_cast<size_t>(l + max_freq)]; }
};

FourierTable fourier_table(const PeriodicFunction& f, int max_freq,
                           const QuadratureSpec& quad = {});

// Taper of the delayed-mean polynomial: 1 on |l| <= n, linear to 0 at |l| = 2n.
double vallee_poussin_taper(int n, int l);

// Degree 2n-1 polynomial with tapered coefficients. Generic path: trapezoid
// coefficients on 16n points, with the 32n refinement used as the value and
// the difference reported through coeff_error_out. Closed-form coefficients
// bypass the grid entirely.
TrigPoly vallee_poussin(const PeriodicFunction& f, int n, double* coeff_error_out = nullptr);

struct BestApprox {
  double value = 0.0;
  double error = 0.0;
  bool surrogate = false;  // true when p != 2: near-best upper bound, not E_n
};

// p = 2: Parseval tail sqrt(||f||_2^2 - sum_{|l|<=n} |c_l|^2) from the
// coefficient table. Other p: ||f - V_n f||_p, flagged.
BestApprox best_approx_error(const PeriodicFunction& f, int n, double p,
                             const QuadratureSpec& quad = {});

// A K-functional candidate; is_zero marks the identically-zero polynomial so
// ||f - 0||_2 can use the closed-form norm hooks instead of quadrature.
struct KCandidate {
  TrigPoly g;
  bool is_zero = false;
};

// The finite family the K-functional infima minimize over: zero, the mean,
// and V_m(f) for dyadic m spanning [1/(4 delta_hi), 4/delta_lo]. Passing a
// widened [delta_lo, delta_hi] range yields one family valid for every delta
// inside it, which makes monotonicity in delta hold by construction.
std::vector<KCandidate> k_candidate_family(const PeriodicFunction& f, double delta_lo,
                                           double delta_hi, const QuadratureSpec& quad = {});

// min over the given family of ||f - g||_p + delta^s ||g^(s)||_p.
MeasureResult k_functional_on(const PeriodicFunction& f, const std::vector<KCandidate>& family,
                              int s, double delta, double p, const QuadratureSpec& quad = {});

// min over g in {0, mean, V_m(f) : m dyadic in [1/(4 delta), 4/delta]} of
//   ||f - g||_p + delta^s ||g^(s)||_p.
MeasureResult k_functional(const PeriodicFunction& f, int s, double delta, double p,
                           const QuadratureSpec& quad = {});

// Same family with delta = 1/n, objective
//   ||f - g||_{lp(X)} + ||f - g||_p + n^{-s} ||g^(s)||_p,
// the node term comparing exact values of f against the candidate.
MeasureResult semi_discrete_k(const PeriodicFunction& f, const NodeSet& X, int s, double p,
                              const QuadratureSpec& quad = {});

struct RealizationResult {
  double total = 0.0;
  double err_term = 0.0;    // ||f - G_n f||_p
  double deriv_term = 0.0;  // n^{-s} ||(G_n f)^(s)||_p
  double quad_error = 0.0;
};

// Two-term realization through a sampling operator. Splines need m >= s+1.
RealizationResult realization(const PeriodicFunction& f, const SamplingOperator& G, int n, int s,
                              double p, const QuadratureSpec& quad = {});

}  // namespace torsmooth
