#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "periodic_function.hpp"
#include "rational.hpp"
#include "trig_poly.hpp"

using namespace torsmooth;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("corpus") {
  TEST_CASE("catalog lists every family and the ids instantiate") {
    auto catalog = corpus_catalog();
    CHECK(catalog.size() >= 7);
    for (const char* id : {"dirichlet", "dirichlet_even_denominator", "step",
                           "power_singularity:alpha=0.25", "spike_at_binary:beta=0.25",
                           "spike_shifted:beta=0.25", "sin_k:k=2"}) {
      PeriodicFunction f = make_corpus(id);
      CHECK(!f.name().empty());
    }
    CHECK_THROWS_AS(make_corpus("no_such_function"), std::invalid_argument);
  }

  TEST_CASE("sine family") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    CHECK(f.bounded());
    CHECK(f.eval_ae(0.125) == doctest::Approx(std::sin(kPi / 4.0)).epsilon(1e-14));
    CHECK(f.eval_exact(Rational(1, 4)) == doctest::Approx(1.0).epsilon(1e-14));
    // both views wrap mod 1
    CHECK(f.eval_ae(1.125) == doctest::Approx(f.eval_ae(0.125)).epsilon(1e-14));
    CHECK(f.eval_exact(Rational(5, 4)) == doctest::Approx(1.0).epsilon(1e-14));
    PeriodicFunction f3 = make_corpus("sin_k:k=3");
    CHECK(f3.eval_ae(0.25) == doctest::Approx(std::sin(3.0 * kPi / 2.0)).epsilon(1e-14));
  }

  TEST_CASE("odd step: two jumps, zero at the jump points") {
    PeriodicFunction f = make_corpus("step");
    CHECK(f.eval_ae(0.25) == 1.0);
    CHECK(f.eval_ae(0.75) == -1.0);
    CHECK(f.eval_exact(Rational(0)) == 0.0);
    CHECK(f.eval_exact(Rational(1, 2)) == 0.0);
    CHECK(f.eval_exact(Rational(3, 2)) == 0.0);  // wraps to 1/2
    CHECK(f.breakpoint_positions().size() >= 2);
  }

  TEST_CASE("indicator of the rationals: views disagree exactly on the rationals") {
    PeriodicFunction f = make_corpus("dirichlet");
    CHECK(f.eval_ae(0.5) == 0.0);
    CHECK(f.eval_ae(0.123456) == 0.0);
    CHECK(f.eval_exact(Rational(2, 3)) == 1.0);
    CHECK(f.eval_exact(Rational(0)) == 1.0);
    REQUIRE(f.has_exceptional_set());
    auto q = f.exceptional_proxy(0.3, 0.3000001);
    REQUIRE(q.has_value());
    CHECK(q->to_double() > 0.3);
    CHECK(q->to_double() < 0.3000001);
    CHECK(f.eval_exact(*q) == 1.0);
  }

  TEST_CASE("even-denominator indicator distinguishes reduced denominators") {
    PeriodicFunction f = make_corpus("dirichlet_even_denominator");
    CHECK(f.eval_exact(Rational(1, 2)) == 1.0);
    CHECK(f.eval_exact(Rational(3, 4)) == 1.0);
    CHECK(f.eval_exact(Rational(1, 3)) == 0.0);
    CHECK(f.eval_exact(Rational(0)) == 0.0);  // 0/1 has odd denominator
    CHECK(f.eval_ae(0.75) == 0.0);
  }

  TEST_CASE("power singularity is unbounded with a flagged singular point") {
    PeriodicFunction f = make_corpus("power_singularity:alpha=0.25");
    CHECK(!f.bounded());
    CHECK(f.eval_ae(1.0 / 16.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(f.eval_exact(Rational(1, 16)) == doctest::Approx(2.0).epsilon(1e-13));
    bool has_origin = false;
    for (double s : f.singular_positions()) {
      if (s == 0.0) has_origin = true;
    }
    CHECK(has_origin);
  }

  TEST_CASE("binary-spike sum: apex heights and edge midpoints") {
    PeriodicFunction f = make_corpus("spike_at_binary:beta=0.25");
    CHECK(f.bounded());
    // apex of the l-th tent sits at 2^{-l} with height l^{-1/4}
    CHECK(f.eval_exact(Rational(1, 32)) ==
          doctest::Approx(std::pow(5.0, -0.25)).epsilon(1e-12));
    CHECK(f.eval_ae(1.0 / 32.0) == doctest::Approx(std::pow(5.0, -0.25)).epsilon(1e-12));
    // midpoint of the rising edge of the l=3 tent (half-width 4^{-3})
    const double x = 1.0 / 8.0 - 0.5 / 64.0;
    CHECK(f.eval_ae(x) == doctest::Approx(0.5 * std::pow(3.0, -0.25)).epsilon(1e-12));
    // far from every tent
    CHECK(f.eval_ae(0.75) == 0.0);
  }

  TEST_CASE("shifted spikes vanish at every dyadic point") {
    PeriodicFunction f = make_corpus("spike_shifted:beta=0.25");
    CHECK(f.eval_exact(Rational(1, 8)) == 0.0);
    CHECK(f.eval_exact(Rational(1, 16)) == 0.0);
    CHECK(f.eval_exact(Rational(0)) == 0.0);
    // apex of the l-th tent sits at 2^{-l} + 4^{-l}
    CHECK(f.eval_exact(Rational(17, 256)) ==
          doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-12));
  }

  TEST_CASE("trig-poly wrapper carries its exact hooks") {
    TrigPoly t(-1, {std::complex<double>(0.0, 0.5), std::complex<double>(0.0, 0.0),
                    std::complex<double>(0.0, -0.5)});  // sin(2 pi x)
    PeriodicFunction f = from_trig_poly(t, "wave");
    CHECK(f.name() == "wave");
    CHECK(f.eval_ae(0.25) == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(f.has_fourier_form());
    CHECK(std::abs(f.fourier_coefficient(1) - std::complex<double>(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(f.fourier_coefficient(7)) == 0.0);
    REQUIRE(f.has_l2_norm_sq());
    CHECK(f.l2_norm_sq() == doctest::Approx(0.5).epsilon(1e-14));
  }
}
