#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace torsmooth {

// Trigonometric polynomial sum_{l=lo}^{hi} c_l e^{2 pi i l x} with period 1.
// The frequency window may be asymmetric (dyadic interpolation uses
// [-2^{j-1}, 2^{j-1}-1]), in which case values are genuinely complex.
class TrigPoly {
 public:
  TrigPoly() : lo_(0), coeffs_(1, std::complex<double>(0.0, 0.0)) {}
  TrigPoly(int lo, std::vector<std::complex<double>> coeffs);

  // Symmetric window [-n, n] with all coefficients zero.
  static TrigPoly zero(int n);

  int lo_freq() const { return lo_; }
  int hi_freq() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  int max_abs_freq() const;

  std::complex<double> coeff(int freq) const;  // zero outside the window
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  std::complex<double> eval(double x) const;
  double eval_real(double x) const { return eval(x).real(); }

  // s-fold derivative: coefficient multiplier (2 pi i l)^s, exact.
  TrigPoly derivative(int s = 1) const;

  // Coefficient-wise difference operator Delta_h^r: multiplier (e^{2 pi i l h} - 1)^r.
  TrigPoly finite_difference(double h, int r) const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(double s) const;

  // Parseval: sqrt(sum |c_l|^2). Exact L2 norm, no quadrature.
  double l2_norm() const;

  double mean() const { return coeff(0).real(); }

 private:
  int lo_;
  std::vector<std::complex<double>> coeffs_;
};

// Degree-n Dirichlet kernel sum_{|l|<=n} e^{2 pi i l x} = sin((2n+1) pi x)/sin(pi x).
// Falls back to direct summation where the closed form degenerates.
double dirichlet_kernel(int n, double x);

// DFT of N samples taken at k/N, mapped onto the frequency window
// [lo, lo+N). Exact inverse of evaluation at the sample points.
TrigPoly dft_interpolate(const std::vector<double>& samples, int lo);

}  // namespace torsmooth
