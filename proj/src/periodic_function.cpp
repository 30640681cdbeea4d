#include "periodic_function.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace torsmooth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double x) {
  double y = x - std::floor(x);
  return y >= 1.0 ? 0.0 : y;  // floor rounding can land exactly on 1
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("corpus id: expected key=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return out;
}

double take_param(std::map<std::string, double>& params, const std::string& key, double dflt,
                  bool required) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (required) throw std::invalid_argument("corpus id: missing parameter '" + key + "'");
    return dflt;
  }
  double v = it->second;
  params.erase(it);
  return v;
}

// Smallest dyadic m/2^k in (lo,hi) with odd m (so the reduced denominator is
// exactly 2^k). Returns nullopt only for degenerate windows.
std::optional<Rational> odd_dyadic_in(double lo, double hi) {
  if (!(hi > lo)) return std::nullopt;
  for (int k = 2; k <= 60; ++k) {
    const double scale = std::ldexp(1.0, k);
    std::int64_t m = static_cast<std::int64_t>(std::ceil(lo * scale)) + 1;
    if (m % 2 == 0) ++m;
    if (static_cast<double>(m) / scale < hi) {
      return Rational(m, static_cast<std::int64_t>(1) << k);
    }
  }
  return std::nullopt;
}

struct SpikeFamily {
  int l_start;      // first spike index
  bool shifted;     // apex at 2^-l + 4^-l instead of 2^-l
  double beta;
  int l_max;

  double apex(int l) const { return std::ldexp(1.0, -l) + (shifted ? std::pow(4.0, -l) : 0.0); }
  double half_width(int l) const { return std::pow(4.0, -l); }
  double height(int l) const { return std::pow(static_cast<double>(l), -beta); }

  double eval(double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    // Supports are pairwise disjoint; only indices near -log2(x) can match.
    const int l0 = static_cast<int>(std::floor(-std::log2(x)));
    for (int l = l0 - 1; l <= l0 + 1; ++l) {
      if (l < l_start || l > l_max) continue;
      const double t = 1.0 - std::abs(x - apex(l)) / half_width(l);
      if (t > 0.0) return height(l) * t;
    }
    return 0.0;
  }
};

PeriodicFunction make_spikes(bool shifted, std::map<std::string, double>& params) {
  const double beta = take_param(params, "beta", 0.0, true);
  const double resolution = take_param(params, "resolution", 0.0, false);
  if (!(beta > 0.0)) throw std::invalid_argument("spike corpus: beta must be positive");
  int l_max = 40;
  if (resolution > 0.0) {
    l_max = std::max(l_max, static_cast<int>(std::ceil(std::log2(1.0 / resolution))));
  }
  SpikeFamily fam{shifted ? 4 : 3, shifted, beta, l_max};

  std::vector<Breakpoint> bps;
  bps.push_back({0.0, Rational(0), false, 0.0});  // accumulation point of the supports
  for (int l = fam.l_start; l <= l_max; ++l) {
    for (int off = -1; off <= 1; ++off) {
      Breakpoint b;
      b.x = fam.apex(l) + off * fam.half_width(l);
      if (2 * l <= 60) {
        // apex 2^-l (+ 4^-l) with offset in units of 4^-l: numerator over 4^l
        const std::int64_t den = static_cast<std::int64_t>(1) << (2 * l);
        const std::int64_t num =
            (static_cast<std::int64_t>(1) << l) + (shifted ? 1 : 0) + off;
        b.exact_pos = Rational(num, den);
      }
      bps.push_back(b);
    }
  }

  std::string name = shifted ? "spike_shifted" : "spike_at_binary";
  PeriodicFunction f(
      name, [fam](const Rational& q) { return fam.eval(q.to_double()); },
      [fam](double x) { return fam.eval(x); }, std::move(bps), true);
  f.set_truncation_sup(std::pow(static_cast<double>(l_max + 1), -beta));
  double norm_sq = 0.0;  // tents are disjoint: each contributes y^2 * 2w/3
  for (int l = fam.l_start; l <= l_max; ++l) {
    norm_sq += fam.height(l) * fam.height(l) * (2.0 / 3.0) * fam.half_width(l);
  }
  f.set_l2_norm_sq(norm_sq);
  f.set_fourier_form([fam](long m) {
    // Tent of half-width w and apex y at c: y * w * sinc^2(pi m w) * e^{-2 pi i m c}.
    std::complex<double> acc(0.0, 0.0);
    for (int l = fam.l_start; l <= fam.l_max; ++l) {
      const double w = fam.half_width(l);
      const double arg = std::numbers::pi * static_cast<double>(m) * w;
      const double sinc = m == 0 ? 1.0 : std::sin(arg) / arg;
      acc += fam.height(l) * w * sinc * sinc *
             std::polar(1.0, -kTwoPi * static_cast<double>(m) * fam.apex(l));
    }
    return acc;
  });
  return f;
}

}  // namespace

PeriodicFunction::PeriodicFunction(std::string name, ExactFn exact, AeFn ae,
                                   std::vector<Breakpoint> breakpoints, bool bounded)
    : name_(std::move(name)),
      exact_(std::move(exact)),
      ae_(std::move(ae)),
      breakpoints_(std::move(breakpoints)),
      bounded_(bounded) {}

double PeriodicFunction::eval_ae(double x) const { return ae_(wrap01(x)); }

double PeriodicFunction::eval_exact(const Rational& q) const { return exact_(q.mod1()); }

std::vector<double> PeriodicFunction::breakpoint_positions() const {
  std::vector<double> out;
  out.reserve(breakpoints_.size());
  for (const auto& b : breakpoints_) out.push_back(b.x);
  return out;
}

std::vector<double> PeriodicFunction::singular_positions() const {
  std::vector<double> out;
  for (const auto& b : breakpoints_) {
    if (b.singular) out.push_back(b.x);
  }
  return out;
}

std::optional<Rational> PeriodicFunction::exceptional_proxy(double lo, double hi) const {
  if (!proxy_) return std::nullopt;
  return proxy_(lo, hi);
}

std::complex<double> PeriodicFunction::fourier_coefficient(long freq) const {
  if (!fourier_) throw std::logic_error("PeriodicFunction: no closed Fourier form");
  return fourier_(freq);
}

double PeriodicFunction::l2_norm_sq() const {
  if (!has_l2_norm_sq()) throw std::logic_error("PeriodicFunction: no closed L2 norm");
  return l2_norm_sq_;
}

PeriodicFunction make_corpus(const std::string& id) {
  std::string name = id;
  std::map<std::string, double> params;
  if (auto colon = id.find(':'); colon != std::string::npos) {
    name = id.substr(0, colon);
    params = parse_params(id.substr(colon + 1));
  }

  PeriodicFunction f;
  if (name == "dirichlet") {
    // Indicator of the rationals: one a.e.-zero object, exactly one at every
    // rational sample.
    f = PeriodicFunction(
        name, [](const Rational&) { return 1.0; }, [](double) { return 0.0; }, {}, true);
    f.set_exceptional_proxy([](double lo, double hi) { return odd_dyadic_in(lo, hi); });
    f.set_fourier_form([](long) { return std::complex<double>(0.0, 0.0); });
    f.set_l2_norm_sq(0.0);
  } else if (name == "dirichlet_even_denominator") {
    f = PeriodicFunction(
        name, [](const Rational& q) { return q.den() % 2 == 0 ? 1.0 : 0.0; },
        [](double) { return 0.0; }, {}, true);
    f.set_exceptional_proxy([](double lo, double hi) { return odd_dyadic_in(lo, hi); });
    f.set_fourier_form([](long) { return std::complex<double>(0.0, 0.0); });
    f.set_l2_norm_sq(0.0);
  } else if (name == "step") {
    const Rational half(1, 2);
    auto exact = [half](const Rational& q) {
      if (q == Rational(0) || q == half) return 0.0;
      return q < half ? 1.0 : -1.0;
    };
    auto ae = [](double x) {
      if (x == 0.0 || x == 0.5) return 0.0;
      return x < 0.5 ? 1.0 : -1.0;
    };
    std::vector<Breakpoint> bps{{0.0, Rational(0), false, 0.0}, {0.5, half, false, 0.0}};
    f = PeriodicFunction(name, exact, ae, std::move(bps), true);
    f.set_fourier_form([](long m) {
      if (m % 2 == 0) return std::complex<double>(0.0, 0.0);
      return std::complex<double>(0.0, -2.0 / (std::numbers::pi * static_cast<double>(m)));
    });
    f.set_l2_norm_sq(1.0);
  } else if (name == "power_singularity") {
    const double alpha = take_param(params, "alpha", 0.0, true);
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("power_singularity: alpha must lie in (0,1)");
    }
    auto ae = [alpha](double x) { return x == 0.0 ? 0.0 : std::pow(x, -alpha); };
    std::vector<Breakpoint> bps{{0.0, Rational(0), true, alpha}};
    f = PeriodicFunction(
        name, [ae](const Rational& q) { return ae(q.mod1().to_double()); }, ae, std::move(bps),
        /*bounded=*/false);
    if (alpha < 0.5) f.set_l2_norm_sq(1.0 / (1.0 - 2.0 * alpha));
  } else if (name == "spike_at_binary") {
    f = make_spikes(false, params);
  } else if (name == "spike_shifted") {
    f = make_spikes(true, params);
  } else if (name == "sin_k") {
    const int k = static_cast<int>(take_param(params, "k", 0.0, true));
    if (k < 1) throw std::invalid_argument("sin_k: k must be a positive integer");
    auto ae = [k](double x) { return std::sin(kTwoPi * k * x); };
    f = PeriodicFunction(
        name, [ae](const Rational& q) { return ae(q.mod1().to_double()); }, ae, {}, true);
    f.set_fourier_form([k](long m) {
      if (m == k) return std::complex<double>(0.0, -0.5);
      if (m == -k) return std::complex<double>(0.0, 0.5);
      return std::complex<double>(0.0, 0.0);
    });
    f.set_l2_norm_sq(0.5);
  } else {
    throw std::invalid_argument("make_corpus: unknown corpus id '" + id + "'");
  }

  if (!params.empty()) {
    throw std::invalid_argument("make_corpus: unused parameter '" + params.begin()->first + "'");
  }
  return f;
}

std::vector<std::pair<std::string, std::string>> corpus_catalog() {
  return {
      {"dirichlet", "indicator of the rationals; zero a.e., one at every rational sample"},
      {"dirichlet_even_denominator",
       "indicator of rationals with even reduced denominator; zero a.e."},
      {"step", "sign of 1/2 - x on (0,1), zero at 0 and 1/2; two jumps"},
      {"power_singularity:alpha=A", "x^{-A} on (0,1) with value 0 at 0; unbounded, 0<A<1"},
      {"spike_at_binary:beta=B", "sum of tents of height l^{-B} at 2^{-l}, half-width 4^{-l}"},
      {"spike_shifted:beta=B", "same tents moved to 2^{-l}+4^{-l}; vanishes at dyadic points"},
      {"sin_k:k=K", "sin(2 pi K x)"},
  };
}

PeriodicFunction from_trig_poly(const TrigPoly& t, const std::string& name) {
  PeriodicFunction f(
      name, [t](const Rational& q) { return t.eval_real(q.to_double()); },
      [t](double x) { return t.eval_real(x); }, {}, true);
  f.set_fourier_form([t](long m) {
    if (m < INT32_MIN || m > INT32_MAX) return std::complex<double>(0.0, 0.0);
    return t.coeff(static_cast<int>(m));
  });
  f.set_l2_norm_sq(t.l2_norm() * t.l2_norm());
  return f;
}

}  // namespace torsmooth
