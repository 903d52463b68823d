#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace gam {

/// Counter-based stream: output i is a SplitMix64 finalizer applied to
/// key + i * golden_gamma, where the key hashes (seed, stream id). Streams
/// with different ids are independent for simulation purposes, and any
/// block of a Monte-Carlo run can be regenerated without the others.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() noexcept {
    counter_ += kGamma;
    return mix(key_ + counter_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal pair via Box-Muller.
  std::complex<double> normal_pair() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Inverse-CDF sampler over a finite pmf.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> pmf);
  std::size_t operator()(CounterRng& rng) const;

 private:
  std::vector<double> cdf_;
};

}  // namespace gam
