#include "trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torsmooth {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigPoly::TrigPoly(int lo, std::vector<std::complex<double>> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("TrigPoly: empty coefficient list");
}

TrigPoly TrigPoly::zero(int n) {
  if (n < 0) throw std::invalid_argument("TrigPoly: negative degree");
  return TrigPoly(-n, std::vector<std::complex<double>>(2 * n + 1, {0.0, 0.0}));
}

int TrigPoly::max_abs_freq() const {
  return std::max(std::abs(lo_freq()), std::abs(hi_freq()));
}

std::complex<double> TrigPoly::coeff(int freq) const {
  const int idx = freq - lo_;
  if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
  return coeffs_[idx];
}

std::complex<double> TrigPoly::eval(double x) const {
  // Horner in z = e^{2 pi i x}, then shift by z^{lo}.
  const std::complex<double> z = std::polar(1.0, kTwoPi * x);
  std::complex<double> acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc * std::polar(1.0, kTwoPi * x * lo_);
}

TrigPoly TrigPoly::derivative(int s) const {
  if (s < 0) throw std::invalid_argument("TrigPoly: negative derivative order");
  std::vector<std::complex<double>> out(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    const double l = static_cast<double>(lo_ + static_cast<int>(j));
    std::complex<double> m(0.0, kTwoPi * l);
    std::complex<double> ms(1.0, 0.0);
    for (int i = 0; i < s; ++i) ms *= m;
    out[j] = coeffs_[j] * ms;
  }
  return TrigPoly(lo_, std::move(out));
}

TrigPoly TrigPoly::finite_difference(double h, int r) const {
  std::vector<std::complex<double>> out(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    const double l = static_cast<double>(lo_ + static_cast<int>(j));
    const std::complex<double> m = std::polar(1.0, kTwoPi * l * h) - 1.0;
    std::complex<double> ms(1.0, 0.0);
    for (int i = 0; i < r; ++i) ms *= m;
    out[j] = coeffs_[j] * ms;
  }
  return TrigPoly(lo_, std::move(out));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  const int lo = std::min(lo_freq(), o.lo_freq());
  const int hi = std::max(hi_freq(), o.hi_freq());
  std::vector<std::complex<double>> out(hi - lo + 1, std::complex<double>(0.0, 0.0));
  for (int f = lo; f <= hi; ++f) out[f - lo] = coeff(f) + o.coeff(f);
  return TrigPoly(lo, std::move(out));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + (o * -1.0); }

TrigPoly TrigPoly::operator*(double s) const {
  std::vector<std::complex<double>> out = coeffs_;
  for (auto& c : out) c *= s;
  return TrigPoly(lo_, std::move(out));
}

double TrigPoly::l2_norm() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc += std::norm(c);
  return std::sqrt(acc);
}

double dirichlet_kernel(int n, double x) {
  if (n < 0) throw std::invalid_argument("dirichlet_kernel: negative degree");
  const double s = std::sin(std::numbers::pi * x);
  if (std::abs(s) < 1e-8) {
    double acc = 1.0;
    for (int l = 1; l <= n; ++l) acc += 2.0 * std::cos(kTwoPi * l * x);
    return acc;
  }
  return std::sin((2 * n + 1) * std::numbers::pi * x) / s;
}

TrigPoly dft_interpolate(const std::vector<double>& samples, int lo) {
  const int N = static_cast<int>(samples.size());
  if (N == 0) throw std::invalid_argument("dft_interpolate: no samples");
  std::vector<std::complex<double>> twiddle(N);
  for (int k = 0; k < N; ++k) twiddle[k] = std::polar(1.0, -kTwoPi * k / N);
  std::vector<std::complex<double>> coeffs(N);
  // Conjugate symmetry of real input: each bin pair is computed once.
  for (int f = lo; f < lo + N; ++f) {
    const int fr = ((f % N) + N) % N;  // DFT bin
    const int mirror = (N - fr) % N;
    const int mf = lo + ((mirror - lo) % N + N) % N;
    if (mf < f) {
      coeffs[f - lo] = std::conj(coeffs[mf - lo]);
      continue;
    }
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < N; ++k) {
      acc += samples[k] * twiddle[static_cast<int>((static_cast<long long>(fr) * k) % N)];
    }
    coeffs[f - lo] = acc / static_cast<double>(N);
  }
  return TrigPoly(lo, std::move(coeffs));
}

}  // namespace torsmooth
