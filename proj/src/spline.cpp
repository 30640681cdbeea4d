#include "spline.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace torsmooth {

namespace {

long long positive_mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double bspline(int degree, double u) {
  if (degree < 0) throw std::invalid_argument("bspline: negative degree");
  if (u < 0.0 || u >= degree + 1.0) return 0.0;
  if (degree == 0) return 1.0;
  // Cox-de Boor on the integer knot lattice.
  return (u * bspline(degree - 1, u) + (degree + 1.0 - u) * bspline(degree - 1, u - 1.0)) /
         degree;
}

SplineFn::SplineFn(int degree, int n, double shift, std::vector<double> coef)
    : degree_(degree), n_(n), shift_(shift), coef_(std::move(coef)) {
  if (degree_ < 0) throw std::invalid_argument("SplineFn: negative degree");
  if (n_ < 1 || static_cast<int>(coef_.size()) != n_) {
    throw std::invalid_argument("SplineFn: coefficient count must equal interval count");
  }
}

double SplineFn::eval(double x) const {
  double y = x - std::floor(x);
  double t = n_ * y - shift_;
  const long long base = static_cast<long long>(std::floor(t));
  const double frac = t - static_cast<double>(base);
  double acc = 0.0;
  for (int i = 0; i <= degree_; ++i) {
    const double w = bspline(degree_, frac + i);
    if (w != 0.0) acc += coef_[static_cast<size_t>(positive_mod(base - i, n_))] * w;
  }
  return acc;
}

SplineFn SplineFn::derivative(int s) const {
  if (s < 0) throw std::invalid_argument("SplineFn: negative derivative order");
  if (s == 0) return *this;
  if (s > degree_) {
    throw std::invalid_argument("spline derivative order exceeds degree " +
                                std::to_string(degree_));
  }
  std::vector<double> d(coef_.size());
  for (int k = 0; k < n_; ++k) {
    d[static_cast<size_t>(k)] =
        n_ * (coef_[static_cast<size_t>(k)] -
              coef_[static_cast<size_t>(positive_mod(k - 1, n_))]);
  }
  return SplineFn(degree_ - 1, n_, shift_, std::move(d)).derivative(s - 1);
}

std::vector<double> SplineFn::knots() const {
  std::vector<double> out(static_cast<size_t>(n_));
  for (int k = 0; k < n_; ++k) {
    double y = (k + shift_) / n_;
    out[static_cast<size_t>(k)] = y - std::floor(y);
  }
  return out;
}

SplineFn spline_interp(const PeriodicFunction& f, int m, int n) {
  if (m < 1 || m > 12) throw std::invalid_argument("spline_interp: m must lie in 1..12");
  if (n < m + 2) throw std::invalid_argument("spline_interp: need n >= m+2 intervals");
  const int d = m - 1;
  const double shift = (m % 2 == 1 && m >= 3) ? 0.5 : 0.0;

  // Collocation is circulant: S(j/n) = sum_k coef[k] a[(j-k) mod n] with
  // a[t] = B_d(t - shift). Solve by DFT division.
  std::vector<double> a(static_cast<size_t>(n), 0.0);
  for (int t = 0; t <= d + 1; ++t) {
    const double v = bspline(d, t - shift);
    if (v != 0.0) a[static_cast<size_t>(positive_mod(t, n))] += v;
  }
  std::vector<double> samples(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) samples[static_cast<size_t>(j)] = f.eval_exact(Rational(j, n));

  using cd = std::complex<double>;
  const double w0 = -2.0 * std::numbers::pi / n;
  std::vector<cd> twiddle(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) twiddle[static_cast<size_t>(k)] = std::polar(1.0, w0 * k);

  auto dft = [&](const std::vector<double>& v) {
    std::vector<cd> out(static_cast<size_t>(n), cd(0.0, 0.0));
    for (int q = 0; q < n; ++q) {
      cd acc(0.0, 0.0);
      for (int t = 0; t < n; ++t) {
        acc += v[static_cast<size_t>(t)] *
               twiddle[static_cast<size_t>(positive_mod(1LL * q * t, n))];
      }
      out[static_cast<size_t>(q)] = acc;
    }
    return out;
  };

  std::vector<cd> ahat = dft(a);
  std::vector<cd> vhat = dft(samples);
  double amax = 0.0;
  for (const cd& z : ahat) amax = std::max(amax, std::abs(z));
  std::vector<cd> chat(static_cast<size_t>(n));
  for (int q = 0; q < n; ++q) {
    if (std::abs(ahat[static_cast<size_t>(q)]) < 1e-12 * amax) {
      throw std::runtime_error("spline_interp: collocation symbol vanishes (mode " +
                               std::to_string(q) + " of " + std::to_string(n) + ", m=" +
                               std::to_string(m) + ")");
    }
    chat[static_cast<size_t>(q)] = vhat[static_cast<size_t>(q)] / ahat[static_cast<size_t>(q)];
  }
  std::vector<double> coef(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    cd acc(0.0, 0.0);
    for (int q = 0; q < n; ++q) {
      acc += chat[static_cast<size_t>(q)] *
             std::conj(twiddle[static_cast<size_t>(positive_mod(1LL * q * k, n))]);
    }
    coef[static_cast<size_t>(k)] = acc.real() / n;
  }

  SplineFn s(d, n, shift, std::move(coef));
  double scale = 1.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  for (int j = 0; j < n; ++j) {
    const double resid = std::abs(s.eval(static_cast<double>(j) / n) -
                                  samples[static_cast<size_t>(j)]);
    if (resid > 1e-10 * scale) {
      throw std::runtime_error("spline_interp: interpolation residual " + std::to_string(resid) +
                               " at node " + std::to_string(j));
    }
  }
  return s;
}

PeriodicFunction to_periodic(const SplineFn& s, const std::string& name) {
  std::vector<Breakpoint> bps;
  for (double y : s.knots()) bps.push_back({y, std::nullopt, false, 0.0});
  auto ae = [s](double x) { return s.eval(x); };
  return PeriodicFunction(
      name, [ae](const Rational& q) { return ae(q.to_double()); }, ae, std::move(bps), true);
}

}  // namespace torsmooth
