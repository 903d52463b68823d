#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gam/constellation.hpp"
#include "gam/random.hpp"

namespace gam {

/// Complex AWGN with total variance noise_var (noise_var / 2 per real
/// dimension). snr is P/noise_var for the constellation it was built for.
struct AwgnChannel {
  double noise_var = 1.0;
  double snr = 1.0;

  /// noise_var = average_power(c) / snr.
  static AwgnChannel for_constellation(const Constellation& c, double snr);
  /// Unit-power link: noise_var = 1 / snr.
  static AwgnChannel unit_power(double snr);

  ComplexPoint sample_noise(CounterRng& rng) const;
  /// Throws PreconditionError unless snr == P / noise_var within 1e-9.
  void check_consistent(const Constellation& c) const;
};

enum class MiMethod { quadrature, monte_carlo };

std::string_view to_string(MiMethod m);

struct MiEstimate {
  double bits = 0.0;
  MiMethod method = MiMethod::quadrature;
  double std_err_bits = 0.0;
  std::int64_t samples = 0;
};

struct SerEstimate {
  double ser = 0.0;
  double std_err = 0.0;
  std::int64_t samples = 0;
};

/// Gaussian-mixture output density f_Y(y) = sum_n p_n exp(-|y-x_n|^2/s2) / (pi s2).
double mixture_pdf(const Constellation& c, double sigma2, ComplexPoint y);
/// ln f_Y(y) by log-sum-exp; finite wherever some p_n > 0.
double log_mixture_pdf(const Constellation& c, double sigma2, ComplexPoint y);

/// Output differential entropy h(Y) on a fixed Cartesian grid.
///
/// Grid nodes sit at integer multiples of `spacing`, so the node set does
/// not move with the constellation; this keeps the value smooth in the
/// point positions (finite differences of it are meaningful). Each
/// mixture component is accumulated on the nodes within 8 sigma of its
/// center, which covers the disk of radius max|x_n| + 8 sigma.
class GridEntropy {
 public:
  GridEntropy(double sigma2, double spacing);

  double sigma2() const noexcept { return sigma2_; }
  double spacing() const noexcept { return spacing_; }

  /// h(Y) in bits.
  double output_entropy_bits(std::span<const ComplexPoint> points, std::span<const double> probs) const;

  /// d h(Y) / d r_n in bits per unit radius, where point n moves along its
  /// own phase direction `directions[n]` (unit modulus). This is the
  /// integral form of the derivative evaluated on the grid.
  std::vector<double> entropy_radius_gradient(std::span<const ComplexPoint> points, std::span<const double> probs,
                                              std::span<const ComplexPoint> directions) const;

 private:
  double sigma2_;
  double spacing_;
};

/// h(W) = log2(pi e sigma2).
double noise_entropy_bits(double sigma2);

/// I(Y;X) = h(Y) - h(W) by grid quadrature, refining from sigma/3 by halving
/// until successive values differ by < tol (final spacing <= sigma/6).
/// Throws NumericalError if the refinement cap is reached first.
MiEstimate mi_quadrature(const Constellation& c, const AwgnChannel& channel, double tol = 1e-4);

/// Grid spacing mi_quadrature settles on for (c, channel, tol).
double converged_spacing(const Constellation& c, const AwgnChannel& channel, double tol);

/// Monte-Carlo estimator averaging log2(p(y|x) / f_Y(y)). Deterministic in
/// (seed, k_mc) for any worker count.
MiEstimate mi_monte_carlo(const Constellation& c, const AwgnChannel& channel, std::int64_t k_mc,
                          std::uint64_t seed);

/// Gaussian tail, 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// 1 - (1 - 2Q(sqrt(pi S / (N + 1))))^2.
double ser_disc_analytic(std::int64_t n_points, double snr);

/// (1/N) sum_n [4Q(f_n) - 4Q(f_n)^2] over the GB-HR decision areas.
double ser_gb_analytic(std::int64_t n_points, double snr);

/// MAP-detected symbol error rate (minimum distance for uniform pmfs).
SerEstimate ser_monte_carlo(const Constellation& c, const AwgnChannel& channel, std::int64_t k_mc,
                            std::uint64_t seed);

}  // namespace gam
