#include "gam/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gam/errors.hpp"

namespace gam {

Constellation gen_disc(const DiscSpec& spec) {
  detail::require(spec.n_low >= 1, "n_low must be >= 1");
  detail::require(spec.n_high >= spec.n_low, "n_high must be >= n_low");
  const auto n = spec.size();
  const double nl = static_cast<double>(spec.n_low);
  const double nh = static_cast<double>(spec.n_high);
  // sum_{n_low}^{n_high} n = (nh(nh+1) - nl(nl-1)) / 2
  const double c2 = 2.0 * spec.power.value() * static_cast<double>(n) / (nh * (nh + 1.0) - nl * (nl - 1.0));
  const double c = std::sqrt(c2);
  std::vector<double> radii(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) radii[k] = c * std::sqrt(static_cast<double>(spec.n_low + k));
  std::vector<double> probs(radii.size(), 1.0 / static_cast<double>(n));
  return build_constellation(radii, probs, spec.n_low, spec.n_low == 1 ? "disc" : "disc-generalized");
}

double log_factorial(std::int64_t n) {
  detail::require(n >= 0, "factorial of a negative number");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

Constellation gen_gb_hr(std::int64_t n_points, PowerBudget power) {
  detail::require(n_points >= 2, "n_points must be >= 2");
  const double nd = static_cast<double>(n_points);
  const double c2 = nd * power.value() / (nd * std::log(nd) - log_factorial(n_points));
  const double c = std::sqrt(c2);
  std::vector<double> radii(static_cast<std::size_t>(n_points));
  // ln(N / (N - n)) = -log1p(-n / N)
  for (std::int64_t k = 0; k < n_points; ++k) radii[k] = c * std::sqrt(-std::log1p(-static_cast<double>(k) / nd));
  std::vector<double> probs(radii.size(), 1.0 / nd);
  return build_constellation(radii, probs, 0, "gb-hr");
}

double pbse_entropy_nats(double xi, std::int64_t n_points) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  detail::require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  const double nd = static_cast<double>(n_points);
  if (xi == 1.0) return std::log(nd);
  const double lx = std::log(xi);
  const double one_minus_xn = -std::expm1(nd * lx);
  const double xn = std::exp(nd * lx);
  const double log_norm = std::log1p(-xi) - std::log(one_minus_xn);
  const double slope = nd * xn / one_minus_xn - xi / (1.0 - xi);
  return -log_norm + slope * lx;
}

std::vector<double> geometric_pmf(double xi, std::int64_t n_points) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  detail::require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  const double nd = static_cast<double>(n_points);
  std::vector<double> p(static_cast<std::size_t>(n_points));
  if (xi == 1.0) {
    std::fill(p.begin(), p.end(), 1.0 / nd);
    return p;
  }
  const double lx = std::log(xi);
  const double head = (1.0 - xi) / -std::expm1(nd * lx);
  for (std::int64_t k = 0; k < n_points; ++k) p[k] = head * std::exp(static_cast<double>(k) * lx);
  return p;
}

double geometric_mean_index(double xi, std::int64_t n_points) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  detail::require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  const double nd = static_cast<double>(n_points);
  if (xi == 1.0) return (nd + 1.0) / 2.0;
  if (1.0 - xi < 1e-4) {
    // closed form cancels badly near the uniform limit
    const auto p = geometric_pmf(xi, n_points);
    double acc = 0.0, mass = 0.0;
    for (std::int64_t k = 0; k < n_points; ++k) {
      acc += p[k] * static_cast<double>(k + 1);
      mass += p[k];
    }
    return acc / mass;
  }
  const double lx = std::log(xi);
  return 1.0 / (1.0 - xi) - nd * std::exp(nd * lx) / -std::expm1(nd * lx);
}

PbseSolution solve_xi_for_entropy(std::int64_t n_points, double target_entropy_nats) {
  detail::require(n_points >= 2, "n_points must be >= 2");
  const double hmax = std::log(static_cast<double>(n_points));
  detail::require(target_entropy_nats > 0.0 && target_entropy_nats < hmax,
                  "entropy target must lie in (0, ln N)");
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  double mid = 0.5;
  double h = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    h = pbse_entropy_nats(mid, n_points);
    if (h == target_entropy_nats || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    (h < target_entropy_nats ? lo : hi) = mid;
  }
  if (std::abs(h - target_entropy_nats) > 1e-10) {
    throw NumericalError("xi bisection did not reach the entropy target (|dH| = " +
                         std::to_string(std::abs(h - target_entropy_nats)) + ")");
  }
  return {mid, std::sqrt(1.0 / geometric_mean_index(mid, n_points)), h};
}

Constellation gen_pb_se(std::int64_t n_points, double target_entropy_bits, PowerBudget power) {
  detail::require(n_points >= 2, "n_points must be >= 2");
  detail::require(target_entropy_bits > 0.0 && target_entropy_bits < std::log2(static_cast<double>(n_points)),
                  "entropy target must lie in (0, log2 N)");
  const auto sol = solve_xi_for_entropy(n_points, target_entropy_bits * std::numbers::ln2);
  const double c = sol.c_pbse * std::sqrt(power.value());
  std::vector<double> radii(static_cast<std::size_t>(n_points));
  for (std::int64_t k = 0; k < n_points; ++k) radii[k] = c * std::sqrt(static_cast<double>(k + 1));
  return build_constellation(radii, geometric_pmf(sol.xi, n_points), 1, "pb-se");
}

Constellation gen_geometric_pmf_disc(std::int64_t n_points, double xi, double snr, double noise_var) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  detail::require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  detail::require(snr > 0.0 && noise_var > 0.0, "snr and noise variance must be > 0");
  if (xi == 1.0) {
    auto disc = gen_disc({1, n_points, PowerBudget(snr * noise_var)});
    return Constellation(std::vector<ComplexPoint>(disc.points().begin(), disc.points().end()),
                         std::vector<double>(disc.probabilities().begin(), disc.probabilities().end()), "pb-xi", 1,
                         true);
  }
  const double c = std::sqrt(snr * noise_var / geometric_mean_index(xi, n_points));
  std::vector<double> radii(static_cast<std::size_t>(n_points));
  for (std::int64_t k = 0; k < n_points; ++k) radii[k] = c * std::sqrt(static_cast<double>(k + 1));
  return build_constellation(radii, geometric_pmf(xi, n_points), 1, "pb-xi");
}

Constellation gen_qam(std::int64_t m_side, PowerBudget power) {
  detail::require(m_side >= 2 && m_side % 2 == 0, "QAM side must be even and >= 2");
  const double m = static_cast<double>(m_side);
  // mean |x|^2 on the odd-integer grid is 2(M - 1)/3 with M = m^2
  const double a = std::sqrt(power.value() * 3.0 / (2.0 * (m * m - 1.0)));
  std::vector<ComplexPoint> pts;
  pts.reserve(static_cast<std::size_t>(m_side * m_side));
  for (std::int64_t i = 0; i < m_side; ++i) {
    for (std::int64_t q = 0; q < m_side; ++q) {
      pts.emplace_back(a * (2.0 * static_cast<double>(i) - (m - 1.0)), a * (2.0 * static_cast<double>(q) - (m - 1.0)));
    }
  }
  std::vector<double> probs(pts.size(), 1.0 / static_cast<double>(pts.size()));
  return Constellation(std::move(pts), std::move(probs), "qam", 0, false);
}

Constellation gen_psk(std::int64_t n_points, PowerBudget power) {
  detail::require(n_points >= 2, "PSK needs at least 2 points");
  const double r = std::sqrt(power.value());
  std::vector<ComplexPoint> pts(static_cast<std::size_t>(n_points));
  for (std::int64_t k = 0; k < n_points; ++k) {
    pts[k] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_points));
  }
  std::vector<double> probs(pts.size(), 1.0 / static_cast<double>(n_points));
  return Constellation(std::move(pts), std::move(probs), "psk", 0, false);
}

std::vector<std::pair<std::int64_t, std::int64_t>> pair_code_indices(std::int64_t n_points) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_points));
  for (std::int64_t n = 1; n <= n_points; ++n) pairs.emplace_back(n, n_points + 1 - n);
  return pairs;
}

double pair_code_peak_ratio(std::int64_t n_points) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  const double nd = static_cast<double>(n_points);
  return 2.0 * nd / (nd + 1.0);
}

}  // namespace gam
