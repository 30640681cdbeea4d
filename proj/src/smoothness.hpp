#pragma once

#include <vector>

#include "node_set.hpp"
#include "periodic_function.hpp"
#include "quadrature.hpp"

namespace torsmooth {

// Shared knobs for the smoothness measures. r is the difference/averaging
// order, s the modulus order inside the combined measure (s <= 2r), p the
// norm exponent, delta the step bound. delta <= 0 means "derive from the
// node set" where that makes sense.
struct SmoothnessParams {
  int r = 1;
  int s = 1;
  double p = 2.0;
  double delta = 0.0;
  int h_grid_size = 48;
  int window_grid_size = 16;
  QuadratureSpec quad;

  void validate() const;  // throws std::invalid_argument on a bad combination
};

// Scalar measure plus the quadrature error it inherited. Values computed as
// maxima over candidate grids are lower approximations of the true sup; the
// error field only tracks integration error, not grid bias.
struct MeasureResult {
  double value = 0.0;
  double quad_error = 0.0;
  bool converged = true;
  double arg_h = 0.0;  // maximizing step, where one exists
};

struct CombinedResult {
  double total = 0.0;
  double node_term = 0.0;
  double omega_term = 0.0;
  double quad_error = 0.0;
  double delta = 0.0;  // averaging width actually used
};

double binomial(int n, int k);

// ((1/n) sum |v_k|^p)^{1/p}; max |v_k| when p is infinite.
double discrete_lp(const std::vector<double>& values, double p);

// r-th forward difference with step h, sum_{j=0}^{r} (-1)^{r-j} C(r,j) f(x+jh).
double finite_difference(const PeriodicFunction& f, double x, double h, int r);
double finite_difference(const PeriodicFunction& f, const Rational& x, const Rational& h, int r);

// h_grid_size log-spaced steps in (0, delta], endpoint included, spanning
// three decades. Shared by omega and the property tests that need nested
// grids (a sup over G1 is comparable to a sup over G2 only when G1 ⊆ G2).
std::vector<double> log_spaced_steps(double delta, int count);

// max over the given steps of ||Delta_h^r f||_p (a.e. view). Quadrature cuts
// at f's breakpoints shifted by -j h, j = 0..r.
MeasureResult omega_on_grid(const PeriodicFunction& f, int r, double p,
                            const std::vector<double>& h_values, const QuadratureSpec& quad);

// omega_r(f, delta)_p on the default log-spaced grid.
MeasureResult omega(const PeriodicFunction& f, const SmoothnessParams& params);

// Windowed sup of |Delta_h^r f(t)| over t, t+rh in [x - r delta/2, x + r delta/2].
// Candidates: uniform t and h grids, window endpoints, f's breakpoints, steps
// joining a candidate to a breakpoint, and mixed differences that pin one
// argument to a breakpoint's exact value or to an exceptional-set proxy
// rational (the a.e. view alone cannot see those).
double local_modulus(const PeriodicFunction& f, double x, int r, double delta,
                     int window_grid_size = 16);

// tau_r(f, delta)_p = || local_modulus(f, ., r, delta) ||_p. Defined for
// bounded f and finite p only.
MeasureResult tau(const PeriodicFunction& f, const SmoothnessParams& params);

// One evaluation of the averaged translate f_{delta,r}(x): each term of the
// binomial sum is substituted into a plain window integral of f.
MeasureResult steklov_value(const PeriodicFunction& f, double delta, int r, double x,
                            const QuadratureSpec& quad);

// f_{delta,r} as a function. Both views integrate the a.e. view of f; the
// result's breakpoints sit where an averaging-window edge crosses one of f's.
PeriodicFunction steklov(const PeriodicFunction& f, double delta, int r,
                         const QuadratureSpec& quad = {});

// || f_{delta,r} - f ||_{lp(X)}: the average is integral (a.e.) data, the
// subtracted node value is the exact view. The mismatch between the two views
// at the nodes is precisely what this term detects.
MeasureResult steklov_node_deviation(const PeriodicFunction& f, const NodeSet& X, double delta,
                                     int r, double p, const QuadratureSpec& quad = {});

// || f_{delta,r} - f ||_p over the whole torus (a.e. views on both sides),
// cut at the breakpoints of f and of the averaged function.
MeasureResult steklov_error(const PeriodicFunction& f, double delta, int r, double p,
                            const QuadratureSpec& quad = {});

// Two-part measure: steklov_node_deviation(f, X, delta, r, p)
//                   + omega_s(f, 1/n)_p,   n = |X|,
// with delta defaulting to gamma(X)/n, the minimal node gap.
CombinedResult combined_modulus(const PeriodicFunction& f, const NodeSet& X,
                                const SmoothnessParams& params);

}  // namespace torsmooth
