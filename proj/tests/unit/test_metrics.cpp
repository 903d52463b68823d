#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "gam/constellation.hpp"
#include "gam/errors.hpp"
#include "gam/metrics.hpp"
#include "gam/parallel.hpp"
#include "gam/schemes.hpp"

using namespace gam;

namespace {

// MI of equiprobable antipodal symbols +-a on a real Gaussian channel with
// per-dimension variance s2, by a fine trapezoid rule in one dimension.
double bpsk_mi_oracle(double a, double s2) {
  const double s = std::sqrt(s2);
  const double lo = -a - 12 * s, hi = a + 12 * s;
  const int steps = 200000;
  const double h = (hi - lo) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + i * h;
    const double g0 = std::exp(-(y - a) * (y - a) / (2 * s2));
    const double g1 = std::exp(-(y + a) * (y + a) / (2 * s2));
    // Given +a was sent: log2(2 g0 / (g0 + g1)).
    const double term = g0 > 0 ? g0 * std::log2(2 * g0 / (g0 + g1)) : 0.0;
    acc += (i == 0 || i == steps ? 0.5 : 1.0) * term;
  }
  return acc * h / std::sqrt(2 * std::numbers::pi * s2);
}

// Plain Monte-Carlo MI with its own RNG and direct sums.
std::pair<double, double> mc_oracle(const Constellation& c, double s2, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(s2 / 2));
  std::discrete_distribution<std::size_t> pick(c.probabilities().begin(), c.probabilities().end());
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto n = pick(rng);
    const ComplexPoint w{gauss(rng), gauss(rng)};
    const auto y = c.point(n) + w;
    double f = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) f += c.probability(m) * std::exp(-std::norm(y - c.point(m)) / s2);
    const double v = std::log2(std::exp(-std::norm(w) / s2) / f);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / k;
  return {mean, std::sqrt((sum2 / k - mean * mean) / k)};
}

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { setenv("GAM_THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("GAM_THREADS"); }
};

}  // namespace

TEST_CASE("channel noise has the configured variance") {
  const auto ch = AwgnChannel::unit_power(10.0);
  CounterRng rng(11, 0);
  double sr = 0, si = 0, sri = 0;
  const int k = 200000;
  for (int i = 0; i < k; ++i) {
    const auto w = ch.sample_noise(rng);
    sr += w.real() * w.real();
    si += w.imag() * w.imag();
    sri += w.real() * w.imag();
  }
  CHECK(sr / k == doctest::Approx(0.05).epsilon(0.02));
  CHECK(si / k == doctest::Approx(0.05).epsilon(0.02));
  CHECK(std::abs(sri / k) < 0.002);
}

TEST_CASE("channel consistency is enforced") {
  const auto c = gen_disc(DiscSpec{1, 16, PowerBudget(2.0)});
  const auto ch = AwgnChannel::for_constellation(c, 10.0);
  CHECK(ch.noise_var == doctest::Approx(0.2));
  CHECK_NOTHROW(ch.check_consistent(c));
  CHECK_THROWS_AS(AwgnChannel::unit_power(10.0).check_consistent(c), PreconditionError);
}

TEST_CASE("quadrature matches a one-dimensional antipodal reference") {
  for (double snr : {0.5, 3.0, 10.0}) {
    const auto c = gen_psk(2, PowerBudget(1.0));
    const auto mi = mi_quadrature(c, AwgnChannel::unit_power(snr), 1e-7);
    CHECK(mi.bits == doctest::Approx(bpsk_mi_oracle(1.0, 0.5 / snr)).epsilon(2e-6));
  }
}

TEST_CASE("quadrature agrees with an independent Monte-Carlo estimate") {
  const auto c = gen_gb_hr(16, PowerBudget(1.0));
  const double s2 = 1.0 / 15.0;
  const auto [mc, se] = mc_oracle(c, s2, 200000, 99);
  const auto q = mi_quadrature(c, AwgnChannel::unit_power(15.0), 1e-6);
  CHECK(std::abs(q.bits - mc) < 4 * se + 1e-3);
  const auto lib_mc = mi_monte_carlo(c, AwgnChannel::unit_power(15.0), 200000, 5);
  CHECK(std::abs(q.bits - lib_mc.bits) < 4 * lib_mc.std_err_bits + 1e-3);
}

TEST_CASE("mutual information limits") {
  const auto c = gen_disc(DiscSpec{1, 64, PowerBudget(1.0)});
  CHECK(mi_quadrature(c, AwgnChannel::unit_power(from_db(-40.0))).bits < 1e-3);
  const auto qpsk = gen_psk(4, PowerBudget(1.0));
  CHECK(mi_quadrature(qpsk, AwgnChannel::unit_power(from_db(30.0))).bits == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("mutual information is rotation invariant") {
  const auto c = gen_gb_hr(32, PowerBudget(1.0));
  std::vector<ComplexPoint> rotated(c.points().begin(), c.points().end());
  for (auto& z : rotated) z *= std::polar(1.0, 0.7);
  const Constellation r(rotated, {c.probabilities().begin(), c.probabilities().end()}, "rotated", 0, false);
  const auto ch = AwgnChannel::unit_power(20.0);
  CHECK(mi_quadrature(c, ch, 1e-6).bits == doctest::Approx(mi_quadrature(r, ch, 1e-6).bits).epsilon(1e-5));
}

TEST_CASE("Monte-Carlo estimates do not depend on the worker count") {
  const auto c = gen_gb_hr(64, PowerBudget(1.0));
  const auto ch = AwgnChannel::unit_power(100.0);
  MiEstimate a, b;
  SerEstimate sa, sb;
  {
    ThreadsEnv env("1");
    a = mi_monte_carlo(c, ch, 50000, 3);
    sa = ser_monte_carlo(c, ch, 50000, 3);
  }
  {
    ThreadsEnv env("4");
    b = mi_monte_carlo(c, ch, 50000, 3);
    sb = ser_monte_carlo(c, ch, 50000, 3);
  }
  CHECK(a.bits == b.bits);
  CHECK(a.std_err_bits == b.std_err_bits);
  CHECK(sa.ser == sb.ser);
  CHECK(mi_monte_carlo(c, ch, 50000, 4).bits != a.bits);
}

TEST_CASE("output entropy is not below the noise entropy") {
  const auto c = gen_disc(DiscSpec{1, 8, PowerBudget(1.0)});
  const double s2 = 0.1;
  const GridEntropy g(s2, std::sqrt(s2) / 6);
  CHECK(g.output_entropy_bits(c.points(), c.probabilities()) >= noise_entropy_bits(s2));
  CHECK(noise_entropy_bits(s2) == doctest::Approx(std::log2(std::numbers::pi * std::numbers::e * s2)));
}

TEST_CASE("mixture density integrates to one") {
  const auto c = gen_gb_hr(16, PowerBudget(1.0));
  const double s2 = 0.2, h = 0.02;
  double total = 0.0;
  for (double x = -5; x <= 5; x += h)
    for (double y = -5; y <= 5; y += h) total += mixture_pdf(c, s2, {x, y}) * h * h;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::log(mixture_pdf(c, s2, {0.3, 0.1})) == doctest::Approx(log_mixture_pdf(c, s2, {0.3, 0.1})));
  CHECK(std::isfinite(log_mixture_pdf(c, 1e-4, {100.0, 0.0})));
}

TEST_CASE("Gaussian tail") {
  CHECK(q_function(0.0) == doctest::Approx(0.5));
  CHECK(q_function(3.0) == doctest::Approx(0.5 * std::erfc(3.0 / std::sqrt(2.0))));
}

TEST_CASE("disc SER closed form") {
  const double snr = from_db(25.0);
  const double q = 0.5 * std::erfc(std::sqrt(std::numbers::pi * snr / 257.0) / std::sqrt(2.0));
  CHECK(ser_disc_analytic(256, snr) == doctest::Approx(1.0 - (1.0 - 2 * q) * (1.0 - 2 * q)));
  const auto c = gen_disc(DiscSpec{1, 256, PowerBudget(1.0)});
  const auto mc = ser_monte_carlo(c, AwgnChannel::unit_power(snr), 100000, 1);
  CHECK(mc.ser / ser_disc_analytic(256, snr) < 1.5);
  CHECK(mc.ser / ser_disc_analytic(256, snr) > 1.0 / 1.5);
}

TEST_CASE("SER is zero without noise influence and small constellations are exact") {
  const auto bpsk = gen_psk(2, PowerBudget(1.0));
  const double snr = 2.0;
  const auto mc = ser_monte_carlo(bpsk, AwgnChannel::unit_power(snr), 400000, 8);
  // Antipodal error probability: Q(sqrt(2 S)).
  const double ref = q_function(std::sqrt(2.0 * snr));
  CHECK(std::abs(mc.ser - ref) < 4 * mc.std_err);
}

TEST_CASE("metric preconditions") {
  const auto c = gen_disc(DiscSpec{1, 8, PowerBudget(1.0)});
  CHECK_THROWS_AS(mi_monte_carlo(c, AwgnChannel::unit_power(1.0), 0, 1), PreconditionError);
  CHECK_THROWS_AS(mi_quadrature(c, AwgnChannel::unit_power(1.0), -1.0), PreconditionError);
  CHECK_THROWS_AS(AwgnChannel::unit_power(0.0), PreconditionError);
}
