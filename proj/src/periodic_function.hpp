#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "trig_poly.hpp"

namespace torsmooth {

struct Breakpoint {
  double x = 0.0;                      // position in [0,1)
  std::optional<Rational> exact_pos;   // set when representable in int64
  bool singular = false;               // integrands get graded panels here
  double exponent = 0.0;               // growth exponent when singular
};

// A period-1 function carrying two evaluation views. eval_exact honors the
// pointwise definition at rational arguments (functions here are not
// identified up to null sets: an indicator of the rationals is a different
// object than zero). eval_ae is the representative integrals and quadrature
// see; the two views may disagree on a measure-zero set.
class PeriodicFunction {
 public:
  using ExactFn = std::function<double(const Rational&)>;
  using AeFn = std::function<double(double)>;
  // Yields a rational in (lo,hi) where the views disagree, for functions
  // whose exceptional set is dense (candidate grids must see such points).
  using ProxyFn = std::function<std::optional<Rational>(double lo, double hi)>;
  using FourierFn = std::function<std::complex<double>(long freq)>;

  PeriodicFunction() = default;
  PeriodicFunction(std::string name, ExactFn exact, AeFn ae, std::vector<Breakpoint> breakpoints,
                   bool bounded);

  const std::string& name() const { return name_; }
  bool bounded() const { return bounded_; }

  double eval_ae(double x) const;                 // wraps the argument mod 1
  double eval_exact(const Rational& q) const;     // wraps the argument mod 1

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  std::vector<double> breakpoint_positions() const;
  std::vector<double> singular_positions() const;

  bool has_exceptional_set() const { return static_cast<bool>(proxy_); }
  std::optional<Rational> exceptional_proxy(double lo, double hi) const;
  void set_exceptional_proxy(ProxyFn proxy) { proxy_ = std::move(proxy); }

  // Closed-form Fourier coefficient, when the corpus function has one; used
  // as an independent route for best-approximation tails.
  bool has_fourier_form() const { return static_cast<bool>(fourier_); }
  std::complex<double> fourier_coefficient(long freq) const;
  void set_fourier_form(FourierFn f) { fourier_ = std::move(f); }

  // sup-norm bound on whatever tail a truncated representation dropped.
  double truncation_sup() const { return truncation_sup_; }
  void set_truncation_sup(double v) { truncation_sup_ = v; }

  // Exact squared L2 norm, when known in closed form. Parseval tails are
  // computed against this instead of a quadrature value, so membership of a
  // polynomial in its own span yields an exact zero.
  bool has_l2_norm_sq() const { return l2_norm_sq_ >= 0.0; }
  double l2_norm_sq() const;
  void set_l2_norm_sq(double v) { l2_norm_sq_ = v; }

 private:
  std::string name_;
  ExactFn exact_;
  AeFn ae_;
  std::vector<Breakpoint> breakpoints_;
  bool bounded_ = true;
  ProxyFn proxy_;
  FourierFn fourier_;
  double truncation_sup_ = 0.0;
  double l2_norm_sq_ = -1.0;
};

// Builds a corpus member from its id, e.g. "step", "power_singularity:alpha=0.25",
// "sin_k:k=3", "spike_at_binary:beta=0.25,resolution=1e-12".
PeriodicFunction make_corpus(const std::string& id);

// (id template, description) pairs for every corpus family.
std::vector<std::pair<std::string, std::string>> corpus_catalog();

// Wraps a real-valued trigonometric polynomial as a smooth corpus member.
PeriodicFunction from_trig_poly(const TrigPoly& t, const std::string& name = "trig_poly");

}  // namespace torsmooth
