#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gam/constellation.hpp"

namespace gam {

/// Generalized disc-GAM: indices n_low..n_high (an annulus when n_low > 1).
struct DiscSpec {
  std::int64_t n_low = 1;
  std::int64_t n_high = 1;
  PowerBudget power{1.0};

  std::int64_t size() const noexcept { return n_high - n_low + 1; }
};

/// Geometric pmf parameter matched to an entropy target.
struct PbseSolution {
  double xi = 0.0;
  double c_pbse = 0.0;  ///< radial scale for unit average power
  double entropy_nats = 0.0;
};

/// r_n = c_disc sqrt(n), uniform pmf, index offset n_low.
Constellation gen_disc(const DiscSpec& spec);

/// Geometric-bell high-rate GAM: r_n = c_gb sqrt(ln(N / (N - n))), n = 0..N-1.
Constellation gen_gb_hr(std::int64_t n_points, PowerBudget power);

/// ln N! through lgamma.
double log_factorial(std::int64_t n);

/// Entropy (nats) of the truncated geometric pmf p_n ∝ xi^(n-1), n = 1..N.
double pbse_entropy_nats(double xi, std::int64_t n_points);

/// E[n] = 1/(1-xi) - N xi^N / (1 - xi^N) under the truncated geometric pmf;
/// (N+1)/2 at xi = 1.
double geometric_mean_index(double xi, std::int64_t n_points);

/// Truncated geometric pmf ((1-xi)/(1-xi^N)) xi^(n-1), uniform at xi = 1.
std::vector<double> geometric_pmf(double xi, std::int64_t n_points);

/// Bisection for xi in (0,1) with pbse_entropy_nats(xi, N) == target.
PbseSolution solve_xi_for_entropy(std::int64_t n_points, double target_entropy_nats);

/// Probabilistic-bell GAM with minimum power for an entropy target (bits).
Constellation gen_pb_se(std::int64_t n_points, double target_entropy_bits, PowerBudget power);

/// Disc radii with a geometric pmf of ratio xi in (0, 1], scaled so that
/// average power / noise_var == snr.
Constellation gen_geometric_pmf_disc(std::int64_t n_points, double xi, double snr, double noise_var);

/// Square QAM with m_side x m_side points on the odd-integer grid.
Constellation gen_qam(std::int64_t m_side, PowerBudget power);

/// N-PSK on a circle of radius sqrt(power).
Constellation gen_psk(std::int64_t n_points, PowerBudget power);

/// Partners (n, N + 1 - n), n = 1..N, of the constant-magnitude two-symbol code.
std::vector<std::pair<std::int64_t, std::int64_t>> pair_code_indices(std::int64_t n_points);

/// Per-symbol peak over average power of the two-symbol code, 2N / (N + 1).
double pair_code_peak_ratio(std::int64_t n_points);

}  // namespace gam
