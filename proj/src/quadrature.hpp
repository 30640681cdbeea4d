#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace torsmooth {

// Tolerances and budgets for adaptive panel integration. Norm computations
// report the achieved error bound so downstream inequality checks can widen
// their tolerances instead of failing on quadrature noise.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 26;           // per-panel bisection depth
  int graded_levels = 60;       // geometric refinement toward singular endpoints
  int min_panels = 1;           // initial uniform resolution (oscillatory integrands)
  long max_evals = 40000000;    // hard cap on integrand evaluations
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // accumulated panel error estimate, conservative
  long evals = 0;
  bool converged = true;
};

// Thrown when refinement stalls with the error estimate still above tolerance.
// Carries the best available estimate so callers may continue deliberately.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double value, double error)
      : std::runtime_error(msg), value(value), error(error) {}
  double value;
  double error;
};

// Adaptive Gauss-Legendre (16-point panels, bisection driven by a global
// error heap). Panels are pre-split at every breakpoint; panels adjacent to a
// singular point are geometrically graded toward it before refinement starts.
// Breakpoints/singular points outside (a,b) are ignored.
IntegralResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                                  const std::vector<double>& breakpoints,
                                  const std::vector<double>& singular_points,
                                  const QuadratureSpec& spec);

struct NormResult {
  double value = 0.0;
  double error = 0.0;
};

// L_p([0,1)) norm of g, p >= 1. Throws QuadratureError on non-convergence.
NormResult lp_norm_fn(const std::function<double(double)>& g, double p,
                      const std::vector<double>& breakpoints,
                      const std::vector<double>& singular_points, const QuadratureSpec& spec);

// Positions congruent mod 1 to some b in bps that fall inside (a,b); used to
// split window integrals of periodic functions at the right spots.
std::vector<double> breakpoints_in_interval(const std::vector<double>& bps_mod1, double a,
                                            double b);

}  // namespace torsmooth
