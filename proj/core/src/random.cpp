#include "gam/random.hpp"

#include <algorithm>

#include "gam/errors.hpp"

namespace gam {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + stream * 0xd1b54a32d192ed03ULL)) {}

DiscreteSampler::DiscreteSampler(std::span<const double> pmf) : cdf_(pmf.size()) {
  detail::require(!pmf.empty(), "sampler needs a non-empty pmf");
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf[k];
    cdf_[k] = acc;
  }
  detail::require(acc > 0.0, "sampler pmf sums to zero");
  for (double& v : cdf_) v /= acc;
  cdf_.back() = 1.0;
}

std::size_t DiscreteSampler::operator()(CounterRng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

}  // namespace gam
