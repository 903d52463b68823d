#include "gam/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gam/errors.hpp"

namespace gam {

namespace {

// phi = kGoldenFraction + kGoldenFractionLow exactly to ~1e-34.
constexpr double kGoldenFractionLow = -1.1899991944327682e-18;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_finite(const ComplexPoint& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Signed angular difference wrapped to (-pi, pi].
double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

}  // namespace

PowerBudget::PowerBudget(double avg_power) : avg_power_(avg_power) {
  detail::require(std::isfinite(avg_power) && avg_power > 0.0, "average power must be > 0");
}

double golden_angle_phase(std::int64_t n) {
  const double x = static_cast<double>(n);
  const double t = x * kGoldenFraction;
  const double err = std::fma(x, kGoldenFraction, -t);
  double frac = (t - std::floor(t)) + (err + x * kGoldenFractionLow);
  frac -= std::floor(frac);
  const double phase = kTwoPi * frac;
  return phase >= kTwoPi ? 0.0 : phase;
}

Constellation::Constellation(std::vector<ComplexPoint> points, std::vector<double> probabilities,
                             std::string scheme, std::int64_t index_offset, bool gam_phase_law)
    : points_(std::move(points)),
      probs_(std::move(probabilities)),
      scheme_(std::move(scheme)),
      index_offset_(index_offset),
      gam_(gam_phase_law) {
  detail::require(!points_.empty(), "constellation needs at least one point");
  detail::require(points_.size() == probs_.size(), "points and probabilities differ in length");
  double total = 0.0;
  for (double p : probs_) {
    detail::require(std::isfinite(p) && p >= 0.0, "probabilities must be finite and non-negative");
    total += p;
  }
  detail::require(total > 0.0, "probability vector is all zero");
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    for (double& p : probs_) p /= total;
  }
  validate();
}

std::vector<double> Constellation::radii() const {
  std::vector<double> r(points_.size());
  std::transform(points_.begin(), points_.end(), r.begin(), [](const ComplexPoint& z) { return std::abs(z); });
  return r;
}

Constellation Constellation::scaled(double gain) const {
  detail::require(std::isfinite(gain) && gain > 0.0, "scale gain must be > 0");
  Constellation out = *this;
  for (auto& z : out.points_) z *= gain;
  return out;
}

void Constellation::validate() const {
  detail::require(!points_.empty(), "constellation is empty");
  detail::require(points_.size() == probs_.size(), "points and probabilities differ in length");
  double total = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    detail::require(is_finite(points_[k]), "point " + std::to_string(k) + " is not finite");
    detail::require(probs_[k] >= 0.0, "probability " + std::to_string(k) + " is negative");
    total += probs_[k];
  }
  detail::require(std::abs(total - 1.0) <= kProbabilityTolerance, "probabilities do not sum to 1");
  if (!gam_) return;

  double peak = 0.0;
  for (const auto& z : points_) peak = std::max(peak, std::abs(z));
  double prev = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double r = std::abs(points_[k]);
    // Radii come from products like c*sqrt(n); allow a few ulp of jitter.
    detail::require(r >= prev * (1.0 - 1e-14), "GAM radii must be non-decreasing (position " +
                                                    std::to_string(k) + ")");
    prev = std::max(prev, r);
    // The phase of a (near-)zero amplitude is not observable.
    if (r <= 1e-9 * peak) continue;
    const double expected = golden_angle_phase(index_offset_ + static_cast<std::int64_t>(k));
    const double got = std::arg(points_[k]);
    detail::require(std::abs(wrap_angle(got - expected)) <= 1e-12 * std::max(1.0, peak / r),
                    "point " + std::to_string(k) + " violates the golden-angle phase law");
  }
}

Constellation build_constellation(std::span<const double> radii, std::span<const double> probs,
                                  std::int64_t index_offset, std::string tag) {
  detail::require(!radii.empty(), "need at least one radius");
  detail::require(radii.size() == probs.size(), "radii and probabilities differ in length");
  std::vector<ComplexPoint> points(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    detail::require(std::isfinite(radii[k]) && radii[k] >= 0.0, "radii must be finite and >= 0");
    if (k > 0) detail::require(radii[k] >= radii[k - 1], "radii must be non-decreasing");
    points[k] = std::polar(radii[k], golden_angle_phase(index_offset + static_cast<std::int64_t>(k)));
  }
  return Constellation(std::move(points), std::vector<double>(probs.begin(), probs.end()), std::move(tag),
                       index_offset, true);
}

double average_power(const Constellation& c) {
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) acc += c.probability(k) * std::norm(c.point(k));
  return acc;
}

Constellation rescale_to_power(const Constellation& c, PowerBudget target) {
  const double p = average_power(c);
  detail::require(p > 0.0, "cannot rescale a zero-power constellation");
  return c.scaled(std::sqrt(target.value() / p));
}

double papr(const Constellation& c) {
  const double p = average_power(c);
  detail::require(p > 0.0, "PAPR undefined for zero average power");
  double peak = 0.0;
  for (const auto& z : c.points()) peak = std::max(peak, std::norm(z));
  return peak / p;
}

double entropy_bits(const Constellation& c) {
  double h = 0.0;
  for (double p : c.probabilities()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

ComplexPoint constellation_mean(const Constellation& c) {
  ComplexPoint m{0.0, 0.0};
  for (std::size_t k = 0; k < c.size(); ++k) m += c.probability(k) * c.point(k);
  return m;
}

double min_distance(const Constellation& c) {
  const auto pts = c.points();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::norm(pts[i] - pts[j]));
  }
  return std::sqrt(best);
}

}  // namespace gam
