#pragma once

#include <string>
#include <vector>

#include "periodic_function.hpp"

namespace torsmooth {

// Periodic spline of the given degree on n uniform intervals, in the cardinal
// B-spline basis: S(x) = sum_k coef[k] * B_degree(n*x - shift - k), with the
// index k cyclic mod n. shift is 0 (knots at k/n) or 1/2 (knots between the
// interpolation nodes). Pieces are right-continuous, so a degree-0 spline
// takes its value on [knot_k, knot_{k+1}).
class SplineFn {
 public:
  SplineFn(int degree, int n, double shift, std::vector<double> coef);

  int degree() const { return degree_; }
  int intervals() const { return n_; }
  double shift() const { return shift_; }
  const std::vector<double>& coefficients() const { return coef_; }

  double eval(double x) const;

  // Coefficient differencing; drops the degree by s. Throws when s exceeds
  // the degree (one derivative below that is already discontinuous).
  SplineFn derivative(int s = 1) const;

  std::vector<double> knots() const;  // n knot positions in [0,1)

 private:
  int degree_;
  int n_;
  double shift_;
  std::vector<double> coef_;
};

// Cardinal B-spline with integer knots, support [0, degree+1), half-open.
double bspline(int degree, double u);

// The periodic interpolant of degree m-1 matching f (exact view) at k/n.
// Knots sit at the nodes for even m and for m = 1, and between them for odd
// m >= 3: that parity keeps the uniform collocation symbol away from zero
// (the opposite pairing is singular at z = -1 for every even n). Solved by
// DFT division; the residual is re-checked and must stay below 1e-10.
SplineFn spline_interp(const PeriodicFunction& f, int m, int n);

PeriodicFunction to_periodic(const SplineFn& s, const std::string& name);

}  // namespace torsmooth
