#include <doctest.h>

#include <cmath>

#include "gam/constellation.hpp"
#include "gam/errors.hpp"
#include "gam/schemes.hpp"

using namespace gam;

namespace {

double direct_power(const Constellation& c) {
  double p = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) p += c.probability(k) * std::norm(c.point(k));
  return p;
}

double direct_entropy_nats(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

}  // namespace

TEST_CASE("every generator meets its power budget") {
  for (double power : {0.01, 1.0, 3.7, 1000.0}) {
    const PowerBudget b(power);
    for (const auto& c : {gen_disc(DiscSpec{1, 100, b}), gen_disc(DiscSpec{37, 300, b}), gen_gb_hr(256, b),
                          gen_pb_se(64, 4.5, b), gen_geometric_pmf_disc(64, 0.93, power, 1.0), gen_qam(16, b),
                          gen_psk(8, b)}) {
      CAPTURE(c.scheme());
      CHECK(std::abs(direct_power(c) - power) <= 1e-10 * power);
    }
  }
}

TEST_CASE("disc radii grow with the square root of the index") {
  const auto c = gen_disc(DiscSpec{1, 50, PowerBudget(1.0)});
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    CHECK(c.radius(k) / c.radius(0) == doctest::Approx(std::sqrt(n)).epsilon(1e-12));
  }
}

TEST_CASE("geometric bell radii follow the inverse Rayleigh profile") {
  const std::int64_t n_points = 64;
  const auto c = gen_gb_hr(n_points, PowerBudget(1.0));
  CHECK(c.radius(0) == 0.0);
  const double scale = c.radius(1) / std::sqrt(std::log(64.0 / 63.0));
  for (std::int64_t n = 1; n < n_points; ++n) {
    const double expected = scale * std::sqrt(std::log(static_cast<double>(n_points) / (n_points - n)));
    CHECK(c.radius(static_cast<std::size_t>(n)) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(entropy_bits(c) == doctest::Approx(6.0));
}

TEST_CASE("entropy target round trip") {
  for (std::int64_t n : {4, 16, 256, 1024}) {
    for (double frac : {0.2, 0.5, 0.9, 0.999}) {
      const double target = frac * std::log(static_cast<double>(n));
      const auto sol = solve_xi_for_entropy(n, target);
      CHECK(std::abs(direct_entropy_nats(geometric_pmf(sol.xi, n)) - target) < 1e-8);
      CHECK(std::abs(pbse_entropy_nats(sol.xi, n) - target) < 1e-8);
    }
  }
  const auto c = gen_pb_se(256, 6.0, PowerBudget(1.0));
  CHECK(entropy_bits(c) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("geometric mean index matches a direct sum") {
  for (double xi : {0.5, 0.9, 0.99999, 1.0}) {
    const auto p = geometric_pmf(xi, 200);
    double m = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) m += static_cast<double>(k + 1) * p[k];
    CHECK(geometric_mean_index(xi, 200) == doctest::Approx(m).epsilon(1e-10));
  }
}

TEST_CASE("unit ratio pmf reproduces the uniform disc") {
  const double snr = 20.0;
  const auto pb = gen_geometric_pmf_disc(128, 1.0, snr, 1.0);
  const auto disc = gen_disc(DiscSpec{1, 128, PowerBudget(snr)});
  REQUIRE(pb.size() == disc.size());
  for (std::size_t k = 0; k < pb.size(); ++k) {
    CHECK(pb.point(k) == disc.point(k));
    CHECK(pb.probability(k) == disc.probability(k));
  }
}

TEST_CASE("minimum power pmf beats uniform at equal entropy") {
  // Same radii, entropy matched: the geometric pmf needs less power than a
  // truncated uniform pmf on the inner points.
  const auto pb = gen_pb_se(64, 5.0, PowerBudget(1.0));
  const auto pb_radii = pb.radii();
  std::vector<double> inner(pb_radii.begin(), pb_radii.begin() + 32);
  std::vector<double> uniform(32, 1.0);
  const auto trunc = build_constellation(inner, uniform, pb.index_offset(), "trunc");
  CHECK(entropy_bits(trunc) == doctest::Approx(5.0));
  CHECK(average_power(pb) < average_power(trunc));
}

TEST_CASE("square QAM geometry") {
  const auto c = gen_qam(32, PowerBudget(1.0));
  CHECK(c.size() == 1024);
  CHECK_FALSE(c.is_gam());
  // Peak over average of the odd-integer grid: 2 (m-1)^2 / (2 (M - 1) / 3).
  const double m = 32.0, big_m = 1024.0;
  CHECK(papr(c) == doctest::Approx(3.0 * (m - 1) * (m - 1) / (big_m - 1)).epsilon(1e-12));
  CHECK(min_distance(c) == doctest::Approx(2.0 * std::sqrt(3.0 / (2.0 * (big_m - 1)))).epsilon(1e-12));
}

TEST_CASE("constant magnitude pair code") {
  const std::int64_t n = 64;
  const auto pairs = pair_code_indices(n);
  CHECK(pairs.size() == static_cast<std::size_t>(n));
  const auto c = gen_disc(DiscSpec{1, n, PowerBudget(1.0)});
  const double energy0 = std::norm(c.point(0)) + std::norm(c.point(n - 1));
  double peak = 0.0;
  for (auto [a, b] : pairs) {
    CHECK(a + b == n + 1);
    const double e = std::norm(c.point(a - 1)) + std::norm(c.point(b - 1));
    CHECK(e == doctest::Approx(energy0).epsilon(1e-12));
    peak = std::max(peak, std::norm(c.point(a - 1)));
  }
  CHECK(pair_code_peak_ratio(n) == doctest::Approx(peak / average_power(c)).epsilon(1e-12));
}

TEST_CASE("generator preconditions") {
  CHECK_THROWS_AS(gen_gb_hr(1, PowerBudget(1.0)), PreconditionError);
  CHECK_THROWS_AS(gen_disc(DiscSpec{0, 4, PowerBudget(1.0)}), PreconditionError);
  CHECK_THROWS_AS(gen_disc(DiscSpec{5, 4, PowerBudget(1.0)}), PreconditionError);
  CHECK_THROWS_AS(gen_pb_se(16, 4.0, PowerBudget(1.0)), PreconditionError);
  CHECK_THROWS_AS(gen_geometric_pmf_disc(16, 1.5, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(gen_qam(3, PowerBudget(1.0)), PreconditionError);
  CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)));
}
