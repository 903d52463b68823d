#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace gam {

using ComplexPoint = std::complex<double>;

/// Fraction of a turn between consecutive GAM points, (3 - sqrt 5) / 2.
inline constexpr double kGoldenFraction = 0.38196601125010515179541316563436;

/// Tolerance used when checking that a pmf sums to one.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Strictly positive average transmit power (linear units).
class PowerBudget {
 public:
  explicit PowerBudget(double avg_power);
  double value() const noexcept { return avg_power_; }

 private:
  double avg_power_;
};

/// Phase 2*pi*phi*n reduced to [0, 2*pi). The fractional part of n*phi is
/// taken in double-double arithmetic, so the phase error does not grow
/// with n (for |n| < 2^53).
double golden_angle_phase(std::int64_t n);

/// Ordered list of complex points with their probabilities.
///
/// Points of GAM schemes are stored by increasing index; point k carries
/// global index `index_offset() + k`, which fixes its phase. Non-GAM
/// baselines (QAM, PSK) use the same container with `is_gam() == false`.
class Constellation {
 public:
  Constellation() = default;

  /// Takes ownership of points and probabilities as given. Probabilities
  /// are renormalized; validate() is run before returning.
  Constellation(std::vector<ComplexPoint> points, std::vector<double> probabilities,
                std::string scheme, std::int64_t index_offset, bool gam_phase_law);

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const ComplexPoint> points() const noexcept { return points_; }
  std::span<const double> probabilities() const noexcept { return probs_; }
  const ComplexPoint& point(std::size_t k) const { return points_.at(k); }
  double probability(std::size_t k) const { return probs_.at(k); }
  double radius(std::size_t k) const { return std::abs(points_.at(k)); }
  std::vector<double> radii() const;

  const std::string& scheme() const noexcept { return scheme_; }
  std::int64_t index_offset() const noexcept { return index_offset_; }
  bool is_gam() const noexcept { return gam_; }

  /// Returns a copy with every amplitude multiplied by `gain` (> 0).
  Constellation scaled(double gain) const;

  /// Throws PreconditionError describing the first violated invariant.
  void validate() const;

 private:
  std::vector<ComplexPoint> points_;
  std::vector<double> probs_;
  std::string scheme_;
  std::int64_t index_offset_ = 0;
  bool gam_ = true;
};

/// GAM constellation x_k = radii[k] * exp(i * golden_angle_phase(offset + k)).
/// `probs` need not be normalized but must be non-negative with positive sum.
Constellation build_constellation(std::span<const double> radii, std::span<const double> probs,
                                  std::int64_t index_offset, std::string tag);

double average_power(const Constellation& c);

/// Uniform radial scaling so that average_power() equals the budget.
Constellation rescale_to_power(const Constellation& c, PowerBudget target);

/// Peak over average power, linear.
double papr(const Constellation& c);

double entropy_bits(const Constellation& c);

/// Probability-weighted mean amplitude (the DC component).
ComplexPoint constellation_mean(const Constellation& c);

/// Smallest Euclidean distance between two distinct points.
double min_distance(const Constellation& c);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace gam
