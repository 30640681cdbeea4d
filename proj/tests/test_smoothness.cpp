#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "periodic_function.hpp"
#include "rational.hpp"
#include "smoothness.hpp"
#include "trig_poly.hpp"

using namespace torsmooth;

namespace {

constexpr double kPi = std::numbers::pi;

SmoothnessParams params(int r, double p, double delta) {
  SmoothnessParams sp;
  sp.r = r;
  sp.p = p;
  sp.delta = delta;
  return sp;
}

// |Delta_h^r| acting on frequency-1 waves scales them by (2 sin(pi h))^r.
double sine_difference_factor(double h, int r) { return std::pow(2.0 * std::sin(kPi * h), r); }

}  // namespace

TEST_SUITE("smoothness") {
  TEST_CASE("binomial and discrete norms") {
    CHECK(binomial(4, 2) == 6.0);
    CHECK(binomial(2, 1) == 2.0);
    CHECK(binomial(0, 0) == 1.0);
    CHECK(discrete_lp({3.0, -4.0}, 2.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
    CHECK(discrete_lp({3.0, -4.0}, 1.0) == doctest::Approx(3.5).epsilon(1e-14));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(discrete_lp({3.0, -4.0}, inf) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(discrete_lp({1.0}, 0.5), std::invalid_argument);
  }

  TEST_CASE("pointwise differences agree with the coefficient-space operator") {
    TrigPoly t(-2, {std::complex<double>(0.1, 0.2), std::complex<double>(0.0, 0.5),
                    std::complex<double>(0.3, 0.0), std::complex<double>(0.0, -0.5),
                    std::complex<double>(0.1, -0.2)});
    PeriodicFunction f = from_trig_poly(t);
    for (int r : {1, 2, 3}) {
      for (double x : {0.1, 0.37}) {
        const double h = 0.05;
        const double by_coeff = t.finite_difference(h, r).eval_real(x);
        CHECK(finite_difference(f, x, h, r) == doctest::Approx(by_coeff).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("rational differences honor the exact view") {
    PeriodicFunction step = make_corpus("step");
    CHECK(finite_difference(step, Rational(1, 4), Rational(1, 2), 1) == -2.0);
    // f(1/2) - 2 f(1/4) + f(0) with the jump values pinned to zero
    CHECK(finite_difference(step, Rational(0), Rational(1, 4), 2) == -2.0);
    PeriodicFunction dir = make_corpus("dirichlet");
    // all arguments rational: differences see the exceptional set
    CHECK(finite_difference(dir, Rational(0), Rational(1, 7), 1) == 0.0);
    CHECK(finite_difference(dir, Rational(0), Rational(1, 4), 2) == 0.0);
  }

  TEST_CASE("log-spaced step grid spans three decades and ends at delta") {
    auto steps = log_spaced_steps(0.1, 16);
    REQUIRE(steps.size() == 16);
    CHECK(steps.back() == 0.1);  // endpoint exact
    CHECK(steps.front() == doctest::Approx(1e-4).epsilon(1e-12));
    for (size_t i = 1; i < steps.size(); ++i) CHECK(steps[i] > steps[i - 1]);
    CHECK_THROWS_AS(log_spaced_steps(0.0, 8), std::invalid_argument);
  }

  TEST_CASE("modulus of the sine wave matches its closed form") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    // r = 1, p = 2, delta = 0.1: sqrt(2) sin(pi/10) = 0.437016024449
    MeasureResult w = omega(f, params(1, 2.0, 0.1));
    CHECK(std::abs(w.value - std::sqrt(2.0) * std::sin(kPi * 0.1)) <= w.quad_error + 1e-9);
    CHECK(w.value == doctest::Approx(0.437016024449).epsilon(1e-9));
    CHECK(w.arg_h == doctest::Approx(0.1).epsilon(0));  // maximizer is the endpoint

    MeasureResult w3 = omega(f, params(3, 2.0, 0.1));
    CHECK(std::abs(w3.value - sine_difference_factor(0.1, 3) / std::sqrt(2.0)) <=
          w3.quad_error + 1e-9);

    MeasureResult w1 = omega(f, params(1, 1.0, 0.1));
    CHECK(std::abs(w1.value - sine_difference_factor(0.1, 1) * (2.0 / kPi)) <=
          w1.quad_error + 1e-9);
  }

  TEST_CASE("modulus of the step: jump size times shifted mass") {
    PeriodicFunction f = make_corpus("step");
    // ||Delta_h step||_p^p = 2 jumps * h * 2^p, maximized at h = delta
    MeasureResult w1 = omega(f, params(1, 1.0, 0.05));
    CHECK(std::abs(w1.value - 4.0 * 0.05) <= w1.quad_error + 1e-8);
    MeasureResult w2 = omega(f, params(1, 2.0, 0.05));
    CHECK(std::abs(w2.value - std::sqrt(8.0 * 0.05)) <= w2.quad_error + 1e-8);
  }

  TEST_CASE("modulus ignores measure-zero structure") {
    MeasureResult w = omega(make_corpus("dirichlet"), params(1, 2.0, 0.1));
    CHECK(w.value <= 1e-12);
  }

  TEST_CASE("modulus is nondecreasing in the width") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    MeasureResult lo = omega(f, params(1, 2.0, 0.05));
    MeasureResult hi = omega(f, params(1, 2.0, 0.1));
    CHECK(lo.value <= hi.value + lo.quad_error + hi.quad_error + 1e-12);
  }

  TEST_CASE("local modulus: window sup with the mean-value ceiling") {
    PeriodicFunction step = make_corpus("step");
    CHECK(local_modulus(step, 0.0, 1, 0.2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(local_modulus(step, 0.25, 1, 0.2) == 0.0);  // window inside one piece
    PeriodicFunction f = make_corpus("sin_k:k=1");
    const double lm = local_modulus(f, 0.3, 2, 0.1);
    CHECK(lm <= sine_difference_factor(0.1, 2) + 1e-12);
    CHECK(lm > 0.0);
  }

  TEST_CASE("averaged modulus of the step: 2 (2 delta)^{1/p}") {
    PeriodicFunction f = make_corpus("step");
    MeasureResult t2 = tau(f, params(1, 2.0, 0.1));
    CHECK(std::abs(t2.value - 2.0 * std::sqrt(0.2)) <= t2.quad_error + 1e-6);
    MeasureResult t1 = tau(f, params(1, 1.0, 0.1));
    CHECK(std::abs(t1.value - 0.4) <= t1.quad_error + 1e-6);
  }

  TEST_CASE("averaged modulus sees the exceptional set the integral modulus misses") {
    PeriodicFunction f = make_corpus("dirichlet");
    // local sup of the r-th difference against a dense measure-zero set is the
    // largest binomial coefficient: 1, 2, 6 for r = 1, 2, 4
    MeasureResult t1 = tau(f, params(1, 2.0, 0.1));
    CHECK(std::abs(t1.value - 1.0) <= t1.quad_error + 1e-9);
    MeasureResult t2 = tau(f, params(2, 2.0, 0.1));
    CHECK(std::abs(t2.value - 2.0) <= t2.quad_error + 1e-9);
    MeasureResult t4 = tau(f, params(4, 2.0, 0.1));
    CHECK(std::abs(t4.value - 6.0) <= t4.quad_error + 1e-9);
  }

  TEST_CASE("averaged modulus rejects unbounded functions and p = infinity") {
    PeriodicFunction f = make_corpus("power_singularity:alpha=0.25");
    CHECK_THROWS_AS(tau(f, params(1, 2.0, 0.1)), std::invalid_argument);
    SmoothnessParams sp = params(1, std::numeric_limits<double>::infinity(), 0.1);
    CHECK_THROWS_AS(tau(make_corpus("step"), sp), std::invalid_argument);
  }

  TEST_CASE("parameter validation") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    CHECK_THROWS_AS(omega(f, params(0, 2.0, 0.1)), std::invalid_argument);
    CHECK_THROWS_AS(omega(f, params(1, 0.5, 0.1)), std::invalid_argument);
    CHECK_THROWS_AS(omega(f, params(1, 2.0, 0.0)), std::invalid_argument);
  }
}
