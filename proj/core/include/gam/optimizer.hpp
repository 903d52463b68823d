#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gam/constellation.hpp"
#include "gam/metrics.hpp"

namespace gam {

enum class Formulation { g1, g2, p1, p2, gp1 };

std::string_view to_string(Formulation f);
/// Accepts "g1", "G1", ... ; throws PreconditionError otherwise.
Formulation parse_formulation(std::string_view s);

/// Polynomial spiral power function f(x) = sum_k c_k x^k; radii are
/// sqrt(f(n/N)), n = 1..N.
struct SpiralPowerPoly {
  std::vector<double> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double value(double x) const;
  double derivative(double x) const;
  /// True if f(n/N) >= 0 and f'(n/N) >= 0 on every grid point n = 1..N.
  bool admissible(std::int64_t n_points) const;
};

/// How the optimizer scores a candidate.
struct MiEvaluator {
  MiMethod method = MiMethod::quadrature;
  double tol = 1e-4;          ///< quadrature refinement tolerance (bits)
  std::int64_t k_mc = 100000; ///< Monte-Carlo samples per evaluation
  std::uint64_t seed = 1;     ///< common random numbers across evaluations
};

struct OptimizationProblem {
  Formulation formulation = Formulation::g1;
  std::int64_t n_points = 16;
  double snr = 1.0;        ///< linear S
  double noise_var = 0.0;  ///< sigma^2; 0 selects the unit-power convention 1 / S
  std::optional<double> papr_cap;  ///< linear PAPR_0 > 1
  int poly_degree = 3;             ///< G2 only, 1..8
  MiEvaluator mi_eval;
  int max_iters = 300;
  double grad_tol = 1e-7;
  double value_tol = 1e-10;
  int starts = 3;                   ///< HR/disc profile, then random feasible starts
  std::uint64_t start_seed = 7;     ///< seeds the random starts
  bool decreasing_pmf = false;      ///< P1/GP1: constrain p_{n+1} <= p_n
  std::int64_t max_points = 0;      ///< 0 selects the formulation default (G1 64, GP1 32)

  double sigma2() const { return noise_var > 0.0 ? noise_var : 1.0 / snr; }
  void validate() const;
};

struct ConstraintResiduals {
  double power = 0.0;  ///< |sum p r^2 / sigma^2 - S|
  double papr = 0.0;   ///< max(0, PAPR - PAPR_0); 0 when uncapped
};

struct OptimizationResult {
  Constellation constellation;
  double mi_bits = 0.0;
  double mi_std_err = 0.0;
  double initial_mi_bits = 0.0;  ///< objective at the first start
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
  ConstraintResiduals residuals;
  int best_start = 0;
  std::optional<SpiralPowerPoly> spiral;  ///< G2: coefficients at the optimum, f(n/N) = r_n^2
  std::optional<double> xi;               ///< P2: optimal pmf ratio
  double spiral_violation = 0.0;          ///< G2: residual grid-monotonicity violation (relative)
};

/// max(0, papr(c) - papr_cap).
double papr_constraint_residual(const Constellation& c, double papr_cap);

/// Clips non-decreasing radii at the level where peak/average equals
/// papr_cap (bisection), leaving feasible profiles unchanged. Output is
/// non-decreasing; power is not renormalized.
std::vector<double> clip_radii_to_papr(std::span<const double> radii, std::span<const double> probs, double papr_cap);

OptimizationResult optimize_g1(const OptimizationProblem& p);
OptimizationResult optimize_g2(const OptimizationProblem& p);
OptimizationResult optimize_p1(const OptimizationProblem& p);
OptimizationResult optimize_p2(const OptimizationProblem& p);
OptimizationResult optimize_gp1(const OptimizationProblem& p);

/// Dispatches on p.formulation.
OptimizationResult optimize(const OptimizationProblem& p);

/// Least-squares fit of a degree-K polynomial to the GB-HR power profile
/// ln(N / (N - n + 1)) at x = n/N, n = 1..N.
SpiralPowerPoly fit_spiral_to_gb_hr(std::int64_t n_points, int degree);

}  // namespace gam
