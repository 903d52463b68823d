#include "gam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gam/errors.hpp"
#include "gam/parallel.hpp"
#include "neighbor_index.hpp"

namespace gam {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;
constexpr double kCutoffSigmas = 8.0;
constexpr std::int64_t kBandRows = 32;
constexpr std::int64_t kMcBlock = 4096;
constexpr std::int64_t kMaxGridCells = 400'000'000;

// One mixture component laid out on the grid as an outer product gy x gx.
struct Footprint {
  std::int64_t col0 = 0;
  std::int64_t row0 = 0;
  std::size_t offset = 0;  // into the shared weight buffer: gx then gy
};

struct GridLayout {
  std::int64_t width = 0;  // nodes per footprint side
  std::int64_t col_min = 0, col_max = 0, row_min = 0, row_max = 0;
  std::vector<Footprint> prints;
  std::vector<double> weights;

  std::int64_t columns() const { return col_max - col_min + 1; }
  std::int64_t rows() const { return row_max - row_min + 1; }
  const double* gx(std::size_t n) const { return weights.data() + prints[n].offset; }
  const double* gy(std::size_t n) const { return weights.data() + prints[n].offset + width; }
};

GridLayout layout_grid(std::span<const ComplexPoint> points, double sigma2, double h) {
  const double sigma = std::sqrt(sigma2);
  const auto half = static_cast<std::int64_t>(std::ceil(kCutoffSigmas * sigma / h));
  GridLayout g;
  g.width = 2 * half + 2;
  g.prints.resize(points.size());
  g.weights.resize(points.size() * 2 * static_cast<std::size_t>(g.width));
  g.col_min = g.row_min = std::numeric_limits<std::int64_t>::max();
  g.col_max = g.row_max = std::numeric_limits<std::int64_t>::min();
  for (std::size_t n = 0; n < points.size(); ++n) {
    auto& fp = g.prints[n];
    fp.col0 = static_cast<std::int64_t>(std::floor(points[n].real() / h)) - half;
    fp.row0 = static_cast<std::int64_t>(std::floor(points[n].imag() / h)) - half;
    fp.offset = n * 2 * static_cast<std::size_t>(g.width);
    double* gx = g.weights.data() + fp.offset;
    double* gy = gx + g.width;
    for (std::int64_t i = 0; i < g.width; ++i) {
      const double dx = static_cast<double>(fp.col0 + i) * h - points[n].real();
      const double dy = static_cast<double>(fp.row0 + i) * h - points[n].imag();
      gx[i] = std::exp(-dx * dx / sigma2);
      gy[i] = std::exp(-dy * dy / sigma2);
    }
    g.col_min = std::min(g.col_min, fp.col0);
    g.col_max = std::max(g.col_max, fp.col0 + g.width - 1);
    g.row_min = std::min(g.row_min, fp.row0);
    g.row_max = std::max(g.row_max, fp.row0 + g.width - 1);
  }
  if (g.columns() * g.rows() > kMaxGridCells) {
    throw NumericalError("quadrature grid too large (" + std::to_string(g.columns() * g.rows()) +
                         " nodes); use the Monte-Carlo estimator");
  }
  return g;
}

// Accumulates f_Y on rows [r0, r1) into buf (row-major, layout columns).
void fill_band(const GridLayout& g, std::span<const double> probs, double norm, std::int64_t r0, std::int64_t r1,
               std::vector<double>& buf) {
  const auto cols = g.columns();
  buf.assign(static_cast<std::size_t>((r1 - r0) * cols), 0.0);
  for (std::size_t n = 0; n < g.prints.size(); ++n) {
    if (probs[n] <= 0.0) continue;
    const auto& fp = g.prints[n];
    const auto lo = std::max(r0, fp.row0);
    const auto hi = std::min(r1, fp.row0 + g.width);
    if (lo >= hi) continue;
    const double* gx = g.gx(n);
    const double* gy = g.gy(n);
    const double w = probs[n] * norm;
    for (auto r = lo; r < hi; ++r) {
      const double wy = w * gy[r - fp.row0];
      double* dst = buf.data() + (r - r0) * cols + (fp.col0 - g.col_min);
      for (std::int64_t c = 0; c < g.width; ++c) dst[c] += wy * gx[c];
    }
  }
}

// Per-sample state for Welford merging in block order.
struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const auto total = n + o.n;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
    n = total;
  }
};

double pmf_spread_log(std::span<const double> probs) {
  double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
  for (double p : probs) {
    if (p <= 0.0) continue;
    pmax = std::max(pmax, p);
    pmin = std::min(pmin, p);
  }
  return std::log(pmax / pmin);
}

struct RefinedEntropy {
  double bits = 0.0;
  double spacing = 0.0;
};

RefinedEntropy refine_entropy(const Constellation& c, double sigma2, double tol) {
  detail::require(tol > 0.0, "quadrature tolerance must be > 0");
  detail::require(sigma2 > 0.0, "noise variance must be > 0");
  const double sigma = std::sqrt(sigma2);
  double h = sigma / 3.0;
  double prev = GridEntropy(sigma2, h).output_entropy_bits(c.points(), c.probabilities());
  constexpr int kMaxRefinements = 4;  // down to sigma / 48
  for (int level = 1; level <= kMaxRefinements; ++level) {
    h *= 0.5;
    const double cur = GridEntropy(sigma2, h).output_entropy_bits(c.points(), c.probabilities());
    if (std::abs(cur - prev) < tol) return {cur, h};
    prev = cur;
  }
  throw NumericalError("quadrature did not converge to tol " + std::to_string(tol) + " at spacing sigma/48");
}

}  // namespace

AwgnChannel AwgnChannel::for_constellation(const Constellation& c, double snr) {
  detail::require(std::isfinite(snr) && snr > 0.0, "SNR must be > 0");
  const double p = average_power(c);
  detail::require(p > 0.0, "constellation has zero power");
  return {p / snr, snr};
}

AwgnChannel AwgnChannel::unit_power(double snr) {
  detail::require(std::isfinite(snr) && snr > 0.0, "SNR must be > 0");
  return {1.0 / snr, snr};
}

ComplexPoint AwgnChannel::sample_noise(CounterRng& rng) const {
  return std::sqrt(noise_var / 2.0) * rng.normal_pair();
}

void AwgnChannel::check_consistent(const Constellation& c) const {
  detail::require(noise_var > 0.0, "noise variance must be > 0");
  const double s = average_power(c) / noise_var;
  detail::require(std::abs(s - snr) <= 1e-9 * std::max(1.0, snr), "channel SNR inconsistent with constellation power");
}

std::string_view to_string(MiMethod m) { return m == MiMethod::quadrature ? "quad" : "mc"; }

double log_mixture_pdf(const Constellation& c, double sigma2, ComplexPoint y) {
  detail::require(sigma2 > 0.0, "noise variance must be > 0");
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c.probability(n) <= 0.0) continue;
    top = std::max(top, std::log(c.probability(n)) - std::norm(y - c.point(n)) / sigma2);
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c.probability(n) <= 0.0) continue;
    acc += std::exp(std::log(c.probability(n)) - std::norm(y - c.point(n)) / sigma2 - top);
  }
  return top + std::log(acc) - std::log(std::numbers::pi * sigma2);
}

double mixture_pdf(const Constellation& c, double sigma2, ComplexPoint y) {
  return std::exp(log_mixture_pdf(c, sigma2, y));
}

GridEntropy::GridEntropy(double sigma2, double spacing) : sigma2_(sigma2), spacing_(spacing) {
  detail::require(sigma2 > 0.0 && std::isfinite(sigma2), "noise variance must be > 0");
  detail::require(spacing > 0.0 && std::isfinite(spacing), "grid spacing must be > 0");
}

double GridEntropy::output_entropy_bits(std::span<const ComplexPoint> points, std::span<const double> probs) const {
  detail::require(!points.empty() && points.size() == probs.size(), "points and probabilities differ in length");
  const auto g = layout_grid(points, sigma2_, spacing_);
  const double norm = 1.0 / (std::numbers::pi * sigma2_);
  const auto bands = static_cast<std::size_t>((g.rows() + kBandRows - 1) / kBandRows);
  std::vector<double> partial(bands, 0.0);
  parallel_for(bands, [&](std::size_t b) {
    const auto r0 = g.row_min + static_cast<std::int64_t>(b) * kBandRows;
    const auto r1 = std::min(r0 + kBandRows, g.row_max + 1);
    std::vector<double> buf;
    fill_band(g, probs, norm, r0, r1, buf);
    double acc = 0.0;
    for (double f : buf) {
      if (f > 0.0) acc += f * std::log(f);
    }
    partial[b] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return -total * spacing_ * spacing_ * kInvLn2;
}

std::vector<double> GridEntropy::entropy_radius_gradient(std::span<const ComplexPoint> points,
                                                         std::span<const double> probs,
                                                         std::span<const ComplexPoint> directions) const {
  detail::require(points.size() == probs.size() && points.size() == directions.size(),
                  "points, probabilities and directions differ in length");
  const auto g = layout_grid(points, sigma2_, spacing_);
  const double norm = 1.0 / (std::numbers::pi * sigma2_);
  const auto n_pts = points.size();
  const auto bands = static_cast<std::size_t>((g.rows() + kBandRows - 1) / kBandRows);
  std::vector<double> partial(bands * n_pts, 0.0);
  const auto cols = g.columns();
  parallel_for(bands, [&](std::size_t b) {
    const auto r0 = g.row_min + static_cast<std::int64_t>(b) * kBandRows;
    const auto r1 = std::min(r0 + kBandRows, g.row_max + 1);
    std::vector<double> buf;
    fill_band(g, probs, norm, r0, r1, buf);
    for (double& f : buf) f = f > 0.0 ? 1.0 + std::log(f) : 0.0;
    for (std::size_t n = 0; n < n_pts; ++n) {
      const auto& fp = g.prints[n];
      const auto lo = std::max(r0, fp.row0);
      const auto hi = std::min(r1, fp.row0 + g.width);
      if (lo >= hi) continue;
      const double* gx = g.gx(n);
      const double* gy = g.gy(n);
      const double ux = directions[n].real(), uy = directions[n].imag();
      const double rn = points[n].real() * ux + points[n].imag() * uy;
      double acc = 0.0;
      for (auto r = lo; r < hi; ++r) {
        const double yy = static_cast<double>(r) * spacing_;
        const double* lnf = buf.data() + (r - r0) * cols + (fp.col0 - g.col_min);
        double row = 0.0;
        for (std::int64_t c = 0; c < g.width; ++c) {
          const double yx = static_cast<double>(fp.col0 + c) * spacing_;
          row += gx[c] * lnf[c] * (yx * ux + yy * uy - rn);
        }
        acc += gy[r - fp.row0] * row;
      }
      partial[b * n_pts + n] = acc;
    }
  });
  std::vector<double> grad(n_pts, 0.0);
  for (std::size_t b = 0; b < bands; ++b) {
    for (std::size_t n = 0; n < n_pts; ++n) grad[n] += partial[b * n_pts + n];
  }
  const double h2 = spacing_ * spacing_;
  for (std::size_t n = 0; n < n_pts; ++n) grad[n] *= -kInvLn2 * probs[n] * norm * (2.0 / sigma2_) * h2;
  return grad;
}

double noise_entropy_bits(double sigma2) {
  return std::log2(std::numbers::pi * std::numbers::e * sigma2);
}

double converged_spacing(const Constellation& c, const AwgnChannel& channel, double tol) {
  return refine_entropy(c, channel.noise_var, tol).spacing;
}

MiEstimate mi_quadrature(const Constellation& c, const AwgnChannel& channel, double tol) {
  const auto h = refine_entropy(c, channel.noise_var, tol);
  return {std::max(0.0, h.bits - noise_entropy_bits(channel.noise_var)), MiMethod::quadrature, 0.0, 0};
}

MiEstimate mi_monte_carlo(const Constellation& c, const AwgnChannel& channel, std::int64_t k_mc, std::uint64_t seed) {
  detail::require(k_mc >= 1, "k_mc must be >= 1");
  detail::require(channel.noise_var > 0.0, "noise variance must be > 0");
  const double s2 = channel.noise_var;
  const auto probs = c.probabilities();
  const auto pts = c.points();
  const DiscreteSampler sampler(probs);
  const detail::NeighborIndex index(pts, 3.0 * std::sqrt(s2));
  // Terms beyond this excess distance are < e^-40 of the transmitted one.
  const double excess2 = s2 * (40.0 + pmf_spread_log(probs));
  const auto blocks = static_cast<std::size_t>((k_mc + kMcBlock - 1) / kMcBlock);
  std::vector<Moments> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    CounterRng rng(seed, b);
    const auto begin = static_cast<std::int64_t>(b) * kMcBlock;
    const auto end = std::min(k_mc, begin + kMcBlock);
    Moments m;
    for (auto i = begin; i < end; ++i) {
      const auto k = sampler(rng);
      const ComplexPoint w = channel.sample_noise(rng);
      const ComplexPoint y = pts[k] + w;
      const double w2 = std::norm(w);
      double acc = 0.0;
      index.for_each_within(y, std::sqrt(w2 + excess2), [&](std::uint32_t n, double d2) {
        acc += probs[n] * std::exp(-(d2 - w2) / s2);
      });
      m.add(-std::log2(acc));
    }
    parts[b] = m;
  });
  Moments total;
  for (const auto& m : parts) total.merge(m);
  const double var = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  return {total.mean, MiMethod::monte_carlo, std::sqrt(var / static_cast<double>(total.n)), k_mc};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double ser_disc_analytic(std::int64_t n_points, double snr) {
  detail::require(n_points >= 1, "n_points must be >= 1");
  detail::require(snr > 0.0, "SNR must be > 0");
  const double q = q_function(std::sqrt(std::numbers::pi * snr / (static_cast<double>(n_points) + 1.0)));
  const double s = 1.0 - 2.0 * q;
  return std::clamp(1.0 - s * s, 0.0, 1.0);
}

double ser_gb_analytic(std::int64_t n_points, double snr) {
  detail::require(n_points >= 2, "n_points must be >= 2");
  detail::require(snr > 0.0, "SNR must be > 0");
  const double nd = static_cast<double>(n_points);
  const double denom = 2.0 * (nd * std::log(nd) - std::lgamma(nd + 1.0));
  double acc = 0.0;
  for (std::int64_t n = 0; n < n_points; ++n) {
    // ln((N - n) / (N - n - 1)); infinite area for the outermost point
    const double area = n == n_points - 1 ? std::numeric_limits<double>::infinity()
                                          : std::log1p(1.0 / (nd - static_cast<double>(n) - 1.0));
    const double q = q_function(std::sqrt(snr * nd * std::numbers::pi * area / denom));
    acc += 4.0 * q - 4.0 * q * q;
  }
  return std::clamp(acc / nd, 0.0, 1.0);
}

SerEstimate ser_monte_carlo(const Constellation& c, const AwgnChannel& channel, std::int64_t k_mc,
                            std::uint64_t seed) {
  detail::require(k_mc >= 1, "k_mc must be >= 1");
  detail::require(channel.noise_var > 0.0, "noise variance must be > 0");
  const double s2 = channel.noise_var;
  const auto probs = c.probabilities();
  const auto pts = c.points();
  std::vector<double> log_p(probs.size());
  double pmax = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    log_p[n] = probs[n] > 0.0 ? std::log(probs[n]) : -std::numeric_limits<double>::infinity();
    pmax = std::max(pmax, probs[n]);
  }
  const double log_pmax = std::log(pmax);
  const DiscreteSampler sampler(probs);
  const detail::NeighborIndex index(pts, 3.0 * std::sqrt(s2));
  const auto blocks = static_cast<std::size_t>((k_mc + kMcBlock - 1) / kMcBlock);
  std::vector<std::int64_t> errors(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    CounterRng rng(seed, b);
    const auto begin = static_cast<std::int64_t>(b) * kMcBlock;
    const auto end = std::min(k_mc, begin + kMcBlock);
    std::int64_t errs = 0;
    for (auto i = begin; i < end; ++i) {
      const auto k = sampler(rng);
      const ComplexPoint w = channel.sample_noise(rng);
      const ComplexPoint y = pts[k] + w;
      // No point farther than this can beat the transmitted one under MAP.
      const double r2 = std::norm(w) + s2 * (log_pmax - log_p[k]);
      std::size_t best = k;
      double best_metric = log_p[k] - std::norm(w) / s2;
      index.for_each_within(y, std::sqrt(r2) * (1.0 + 1e-12), [&](std::uint32_t n, double d2) {
        const double m = log_p[n] - d2 / s2;
        if (m > best_metric || (m == best_metric && n < best)) {
          best_metric = m;
          best = n;
        }
      });
      if (best != k) ++errs;
    }
    errors[b] = errs;
  });
  std::int64_t total = 0;
  for (auto e : errors) total += e;
  const double ser = static_cast<double>(total) / static_cast<double>(k_mc);
  return {ser, std::sqrt(ser * (1.0 - ser) / static_cast<double>(k_mc)), k_mc};
}

}  // namespace gam
