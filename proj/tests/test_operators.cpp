#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "node_set.hpp"
#include "operators.hpp"
#include "periodic_function.hpp"
#include "rng.hpp"
#include "spline.hpp"
#include "trig_poly.hpp"

using namespace torsmooth;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("operators") {
  TEST_CASE("reproducing kernel: closed form and normalization") {
    CHECK(dirichlet_kernel(3, 0.1) ==
          doctest::Approx(std::sin(7.0 * kPi * 0.1) / std::sin(kPi * 0.1)).epsilon(1e-12));
    CHECK(dirichlet_kernel(3, 0.1) == doctest::Approx(2.6180339887).epsilon(1e-9));
    CHECK(dirichlet_kernel(5, 0.0) == doctest::Approx(11.0).epsilon(1e-12));
  }

  TEST_CASE("sample interpolation inverts evaluation") {
    std::vector<double> samples{1.0, -2.0, 0.5, 3.0, 0.0};
    TrigPoly t = dft_interpolate(samples, -2);
    for (size_t k = 0; k < samples.size(); ++k) {
      CHECK(t.eval_real(static_cast<double>(k) / 5.0) ==
            doctest::Approx(samples[k]).epsilon(1e-12));
    }
  }

  TEST_CASE("interpolation reproduces polynomials of its own degree") {
    Rng rng(17);
    for (int n : {4, 16}) {
      TrigPoly T = random_real_trig_poly(n, rng);
      TrigPoly L = lagrange(from_trig_poly(T), n);
      CHECK((T - L).l2_norm() <= 1e-12 * T.l2_norm());
    }
  }

  TEST_CASE("kernel summation agrees with the DFT route off the polynomial space") {
    PeriodicFunction f = make_corpus("step");
    TrigPoly L = lagrange(f, 4);
    for (double x : {0.05, 0.33, 0.81}) {
      CHECK(L.eval_real(x) == doctest::Approx(lagrange_kernel_sum(f, 4, x)).epsilon(1e-10));
    }
  }

  TEST_CASE("general-node interpolation collapses to the uniform case") {
    PeriodicFunction f = make_corpus("step");
    double cond = 0.0;
    TrigPoly G = lagrange_general(f, lagrange_nodes(4), &cond);
    TrigPoly L = lagrange(f, 4);
    CHECK((G - L).l2_norm() <= 1e-9);
    CHECK(cond >= 1.0);
    CHECK(cond <= 10.0);
  }

  TEST_CASE("general-node interpolation matches the sine-product closed form") {
    PeriodicFunction f = make_corpus("sin_k:k=2");
    NodeSet Z = perturb_nodes(lagrange_nodes(3), Rational(1, 4), 5);
    TrigPoly G = lagrange_general(f, Z);
    for (double x : {0.15, 0.62}) {
      CHECK(G.eval_real(x) ==
            doctest::Approx(lagrange_general_sine_product(f, Z, x)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(lagrange_general(f, uniform_nodes(4)), std::invalid_argument);
  }

  TEST_CASE("dyadic interpolation matches the samples on its grid") {
    PeriodicFunction f = make_corpus("spike_at_binary:beta=0.25");
    const int j = 4;
    TrigPoly L = modified_lagrange(f, j);
    CHECK(L.lo_freq() == -8);
    CHECK(L.hi_freq() == 7);
    for (int k = 0; k < (1 << j); ++k) {
      const Rational q(k, 1 << j);
      CHECK(std::abs(L.eval(q.to_double()) -
                     std::complex<double>(f.eval_exact(q), 0.0)) <= 1e-10);
    }
  }

  TEST_CASE("coefficient windows") {
    CHECK(quasi_window("ones", 0.3) == 1.0);
    CHECK(quasi_window("raised_cosine", 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quasi_window("raised_cosine", 0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(quasi_window("triangle", 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quasi_window("triangle", 0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(quasi_interp(make_corpus("step"), 4, "boxcar"), std::invalid_argument);
  }

  TEST_CASE("all-ones window leaves interpolation untouched") {
    PeriodicFunction f = make_corpus("step");
    TrigPoly Q = quasi_interp(f, 6, "ones");
    TrigPoly L = lagrange(f, 6);
    CHECK((Q - L).l2_norm() <= 1e-12);
  }

  TEST_CASE("window means before interpolation scale frequencies by sinc") {
    const int n = 4;
    PeriodicFunction f = make_corpus("sin_k:k=1");
    double node_err = 0.0;
    TrigPoly K = kantorovich(f, n, {}, &node_err);
    // means of width 1/(2n+1) scale sin by sinc(pi/(2n+1)); interpolation
    // then reproduces the scaled wave exactly
    const double mult = std::sin(kPi / 9.0) / (kPi / 9.0);
    CHECK(K.eval_real(0.25) == doctest::Approx(mult).epsilon(1e-9));
    CHECK(node_err <= 1e-9);
    PeriodicFunction one = from_trig_poly(TrigPoly(0, {std::complex<double>(1.0, 0.0)}), "one");
    TrigPoly K1 = kantorovich(one, n);
    CHECK(K1.eval_real(0.7) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("cardinal B-splines form a partition of unity") {
    for (double u : {3.0, 3.37, 3.99}) {
      double sum = 0.0;
      for (int k = 0; k < 8; ++k) sum += bspline(3, u - k);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(bspline(0, 0.5) == 1.0);
    CHECK(bspline(0, 1.5) == 0.0);
  }

  TEST_CASE("spline interpolation matches the samples at the nodes") {
    for (int m : {2, 4}) {
      PeriodicFunction f = make_corpus("sin_k:k=1");
      SplineFn s = spline_interp(f, m, 8);
      CHECK(s.degree() == m - 1);
      for (int k = 0; k < 8; ++k) {
        const Rational q(k, 8);
        CHECK(s.eval(q.to_double()) == doctest::Approx(f.eval_exact(q)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("spline derivative lowers the degree and stops at the last one") {
    SplineFn s = spline_interp(make_corpus("sin_k:k=1"), 4, 8);
    SplineFn d = s.derivative(1);
    CHECK(d.degree() == 2);
    CHECK_THROWS(s.derivative(4));
  }

  TEST_CASE("operator ids parse and round trip") {
    for (const char* id : {"lagrange", "mod-lagrange", "quasi:triangle", "kantorovich",
                           "spline:4", "spline:2"}) {
      SamplingOperator G = SamplingOperator::parse(id);
      CHECK(G.id() == id);
    }
    CHECK(SamplingOperator::parse("spline:3").spline_m == 3);
    CHECK(SamplingOperator::parse("mod-lagrange").takes_dyadic_exponent());
    CHECK(!SamplingOperator::parse("lagrange").takes_dyadic_exponent());
    CHECK_THROWS_AS(SamplingOperator::parse("wavelet"), std::invalid_argument);
  }

  TEST_CASE("node sets consumed at size n") {
    CHECK(SamplingOperator::parse("lagrange").nodes_for(8).size() == 17);
    CHECK(SamplingOperator::parse("kantorovich").nodes_for(8).size() == 17);
    CHECK(SamplingOperator::parse("mod-lagrange").nodes_for(4).size() == 16);
    CHECK(SamplingOperator::parse("spline:4").nodes_for(12).size() == 12);
  }

  TEST_CASE("approximation error: zero inside the polynomial space, positive off it") {
    SamplingOperator G;
    MeasureResult zero = approx_error(make_corpus("sin_k:k=1"), G, 8, 2.0);
    CHECK(zero.value <= 1e-10);
    MeasureResult gibbs = approx_error(make_corpus("step"), G, 8, 2.0);
    CHECK(gibbs.value > 0.05);
    CHECK(gibbs.value < 1.0);
  }

  TEST_CASE("derivatives and norms of operator output") {
    TrigPoly t(-1, {std::complex<double>(0.0, 0.5), std::complex<double>(0.0, 0.0),
                    std::complex<double>(0.0, -0.5)});  // sin
    OperatorOutput out(t);
    CHECK(op_eval(out, 0.25) == doctest::Approx(1.0).epsilon(1e-14));
    OperatorOutput d = op_derivative(out, 1);
    CHECK(op_eval(d, 0.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    NormResult n2 = op_lp_norm(out, 2.0, {});
    CHECK(std::abs(n2.value - 1.0 / std::sqrt(2.0)) <= n2.error + 1e-10);
  }

  TEST_CASE("random polynomial ensembles are real with the advertised degree") {
    Rng rng(3);
    TrigPoly T = random_real_trig_poly(6, rng);
    CHECK(T.max_abs_freq() <= 6);
    for (double x : {0.1, 0.77}) {
      CHECK(std::abs(T.eval(x).imag()) <= 1e-12);
    }
    for (int l = 1; l <= 6; ++l) {
      CHECK(std::abs(T.coeff(-l) - std::conj(T.coeff(l))) <= 1e-15);
    }
  }

  TEST_CASE("sampling-condition profile of interpolation: an isometry on its space") {
    OperatorProfile prof = estimate_operator_constants(SamplingOperator{}, 2.0, 1, 11, 6);
    CHECK(prof.K1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(prof.K2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(prof.K3 > 0.0);
    CHECK(prof.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.mz_violations == 0);
    CHECK(prof.sample_count > 0);
  }
}
