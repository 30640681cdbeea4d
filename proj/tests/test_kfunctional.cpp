#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "kfunctional.hpp"
#include "node_set.hpp"
#include "operators.hpp"
#include "periodic_function.hpp"
#include "trig_poly.hpp"

using namespace torsmooth;

namespace {
constexpr double kPi = std::numbers::pi;

// sin(2 pi k x) has coefficients -i/2 at +k and +i/2 at -k.
TrigPoly sine_poly(int k) {
  std::vector<std::complex<double>> c(static_cast<size_t>(2 * k + 1));
  c.front() = std::complex<double>(0.0, 0.5);
  c.back() = std::complex<double>(0.0, -0.5);
  return TrigPoly(-k, std::move(c));
}
}  // namespace

TEST_SUITE("kfunctional") {
  TEST_CASE("coefficient tables: closed-form and integrated routes agree") {
    FourierTable ts = fourier_table(make_corpus("sin_k:k=1"), 3);
    CHECK(std::abs(ts.at(1) - std::complex<double>(0.0, -0.5)) <= ts.coeff_error + 1e-10);
    CHECK(std::abs(ts.at(-1) - std::complex<double>(0.0, 0.5)) <= ts.coeff_error + 1e-10);
    CHECK(std::abs(ts.at(0)) <= ts.coeff_error + 1e-10);

    // odd step: c_l = -2i/(pi l) for odd l, 0 for even l
    FourierTable tp = fourier_table(make_corpus("step"), 4);
    CHECK(std::abs(tp.at(1) - std::complex<double>(0.0, -2.0 / kPi)) <= tp.coeff_error + 1e-8);
    CHECK(std::abs(tp.at(2)) <= tp.coeff_error + 1e-8);
    CHECK(std::abs(tp.at(3) - std::complex<double>(0.0, -2.0 / (3.0 * kPi))) <=
          tp.coeff_error + 1e-8);
    CHECK_THROWS_AS(fourier_table(make_corpus("step"), -1), std::invalid_argument);
  }

  TEST_CASE("delayed-mean taper: flat top, linear skirt") {
    CHECK(vallee_poussin_taper(4, 3) == 1.0);
    CHECK(vallee_poussin_taper(4, 4) == 1.0);
    CHECK(vallee_poussin_taper(4, 6) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vallee_poussin_taper(4, 8) == 0.0);
    CHECK(vallee_poussin_taper(4, -6) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("delayed means reproduce low-degree polynomials through the generic path") {
    TrigPoly T = sine_poly(2);
    // wrap without the closed-form coefficient hooks to force the grid route
    PeriodicFunction f(
        "bare_wave", [T](const Rational& q) { return T.eval_real(q.to_double()); },
        [T](double x) { return T.eval_real(x); }, {}, true);
    double coeff_err = 0.0;
    TrigPoly V = vallee_poussin(f, 3, &coeff_err);
    CHECK((V - T).l2_norm() <= 1e-9 + coeff_err);
  }

  TEST_CASE("best approximation: exact Parseval tails at p = 2") {
    PeriodicFunction f3 = make_corpus("sin_k:k=3");
    BestApprox in = best_approx_error(f3, 3, 2.0);
    CHECK(in.value == 0.0);  // inside its own span: matched zero, no quadrature
    CHECK(!in.surrogate);
    BestApprox out = best_approx_error(f3, 2, 2.0);
    CHECK(std::abs(out.value - 1.0 / std::sqrt(2.0)) <= out.error + 1e-9);

    // step: |c_l|^2 = 4/(pi^2 l^2) on odd l, so the degree-4 tail is
    // 1 - (8/pi^2)(1 + 1/9)
    BestApprox tail = best_approx_error(make_corpus("step"), 4, 2.0);
    const double want = std::sqrt(1.0 - 8.0 / (kPi * kPi) * (1.0 + 1.0 / 9.0));
    CHECK(std::abs(tail.value - want) <= tail.error + 1e-8);
  }

  TEST_CASE("best approximation flags the near-best surrogate off p = 2") {
    BestApprox s = best_approx_error(make_corpus("step"), 4, 1.0);
    CHECK(s.surrogate);
    CHECK(s.value > 0.0);
  }

  TEST_CASE("candidate family spans zero, the mean, and the dyadic delayed means") {
    auto family = k_candidate_family(make_corpus("step"), 0.05, 0.1);
    CHECK(family.size() >= 3);
    bool has_zero = false;
    for (const auto& cand : family) has_zero = has_zero || cand.is_zero;
    CHECK(has_zero);
    CHECK_THROWS_AS(k_candidate_family(make_corpus("step"), 0.1, 0.05),
                    std::invalid_argument);
  }

  TEST_CASE("variational bound: never above the competitor built from f itself") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    // the family contains a delayed mean reproducing sin, so
    // K <= delta^s ||f'||_2 = delta * 2 pi / sqrt(2)
    const double delta = 0.1;
    MeasureResult K = k_functional(f, 1, delta, 2.0);
    CHECK(K.value <= delta * 2.0 * kPi / std::sqrt(2.0) + 1e-8);
    CHECK(K.value > 0.0);

    // constants are reproduced by the mean candidate: K vanishes
    PeriodicFunction one = from_trig_poly(TrigPoly(0, {std::complex<double>(1.0, 0.0)}), "one");
    MeasureResult K0 = k_functional(one, 1, 0.1, 2.0);
    CHECK(K0.value <= 1e-10);
  }

  TEST_CASE("bound never exceeds the zero competitor") {
    PeriodicFunction f = make_corpus("step");
    MeasureResult K = k_functional(f, 2, 0.25, 2.0);
    CHECK(K.value <= 1.0 + 1e-9);  // ||step||_2 = 1
  }

  TEST_CASE("monotone in delta over a shared candidate family") {
    PeriodicFunction f = make_corpus("step");
    auto family = k_candidate_family(f, 0.01, 0.1);
    double prev = 0.0;
    for (double delta : {0.01, 0.03, 0.1}) {
      MeasureResult K = k_functional_on(f, family, 1, delta, 2.0);
      CHECK(K.value >= prev - 1e-12);
      prev = K.value;
    }
  }

  TEST_CASE("node-aware variant dominates the plain bound at the same width") {
    PeriodicFunction f = make_corpus("step");
    NodeSet X = lagrange_nodes(8);
    MeasureResult semi = semi_discrete_k(f, X, 1, 2.0);
    MeasureResult plain = k_functional(f, 1, 1.0 / 17.0, 2.0);
    CHECK(semi.value >= plain.value - 1e-10);
  }

  TEST_CASE("two-term surrogate: interpolation of a polynomial leaves only the derivative") {
    PeriodicFunction f = make_corpus("sin_k:k=3");
    RealizationResult r = realization(f, SamplingOperator{}, 16, 1, 2.0);
    // interpolation reproduces the wave, so the error term is pure quadrature
    CHECK(r.err_term <= 1e-9);
    // scale is 1/(node count) = 1/33; ||(sin 6 pi x)'||_2 = 6 pi / sqrt 2
    const double want = 6.0 * kPi / (33.0 * std::sqrt(2.0));
    CHECK(std::abs(r.deriv_term - want) <= r.quad_error + 1e-8);
    CHECK(r.total == doctest::Approx(r.err_term + r.deriv_term).epsilon(1e-14));
  }

  TEST_CASE("two-term surrogate rejects splines smoother than the derivative order") {
    PeriodicFunction f = make_corpus("sin_k:k=1");
    CHECK_THROWS_AS(realization(f, SamplingOperator::parse("spline:2"), 8, 2, 2.0),
                    std::invalid_argument);
  }
}
