#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gam {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct AscentOptions {
  int max_iters = 300;
  double grad_tol = 1e-7;      ///< stop when max |df/dx_i| falls below this
  double value_tol = 1e-10;    ///< stop after 3 iterations improving less than this
  double fd_step = 1e-5;       ///< relative central-difference step
};

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> trace;  ///< objective after each accepted iterate, starting with x0
  int iterations = 0;
  bool converged = false;
};

/// Central finite-difference gradient.
std::vector<double> fd_gradient(const ObjectiveFn& f, std::span<const double> x, double rel_step);

/// Maximizes f with BFGS on central finite-difference gradients and an
/// Armijo backtracking line search.
AscentResult bfgs_maximize(const ObjectiveFn& f, std::vector<double> x0, const AscentOptions& opts);

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
  std::vector<double> trace;  ///< best value after each evaluation
  int evaluations = 0;
};

/// Coarse scan of `scan_points` equispaced abscissae in [lo, hi], then
/// golden-section refinement around the best one until the bracket is
/// narrower than tol.
ScalarMax golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                  int scan_points = 20);

}  // namespace gam
