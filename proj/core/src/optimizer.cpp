#include "gam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "gam/ascent.hpp"
#include "gam/errors.hpp"
#include "gam/schemes.hpp"

namespace gam {

namespace {

constexpr double kPaprPenalty = 10.0;
constexpr double kSpiralPenalty = 100.0;
constexpr std::int64_t kG1DefaultCap = 64;
constexpr std::int64_t kGp1DefaultCap = 32;

std::vector<ComplexPoint> phasors(std::int64_t n_points, std::int64_t offset) {
  std::vector<ComplexPoint> u(static_cast<std::size_t>(n_points));
  for (std::int64_t k = 0; k < n_points; ++k) u[k] = std::polar(1.0, golden_angle_phase(offset + k));
  return u;
}

double weighted_power(std::span<const double> radii, std::span<const double> probs) {
  double acc = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) acc += probs[k] * radii[k] * radii[k];
  return acc;
}

// Uniform rescale so that sum p r^2 == target. Returns false for a zero profile.
bool rescale(std::vector<double>& radii, std::span<const double> probs, double target) {
  const double pw = weighted_power(radii, probs);
  if (!(pw > 0.0) || !std::isfinite(pw)) return false;
  const double g = std::sqrt(target / pw);
  for (double& r : radii) r *= g;
  return true;
}

double raw_papr(std::span<const double> radii, std::span<const double> probs) {
  double peak = 0.0;
  for (double r : radii) peak = std::max(peak, r * r);
  return peak / weighted_power(radii, probs);
}

std::vector<double> softmax(std::span<const double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double total = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) total += (p[k] = std::exp(z[k] - top));
  for (double& v : p) v /= total;
  return p;
}

// Non-increasing pmf: log-weights fall by softplus(t_k) from one point to the next.
std::vector<double> decreasing_pmf(std::span<const double> t) {
  std::vector<double> logw(t.size() + 1, 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double sp = t[k] > 30.0 ? t[k] : std::log1p(std::exp(t[k]));
    logw[k + 1] = logw[k] - sp;
  }
  return softmax(logw);
}

std::vector<double> cumulative_squares(std::span<const double> s, double min_step = 0.0) {
  std::vector<double> r(s.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) r[k] = (acc += s[k] * s[k] + (k > 0 ? min_step : 0.0));
  return r;
}

// GP1 keeps r_{n+1} > r_n strictly.
constexpr double kStrictStep = 1e-9;

// Inverse of cumulative_squares for a non-decreasing profile; increments
// are floored so that no coordinate starts on the s = 0 saddle.
std::vector<double> increments_from_radii(std::span<const double> radii) {
  const double floor_inc = 1e-3 * radii.back() / static_cast<double>(radii.size());
  std::vector<double> s(radii.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    s[k] = std::sqrt(std::max(radii[k] - prev, floor_inc));
    prev = radii[k];
  }
  return s;
}

// Scores radius/probability profiles that already satisfy the SNR equality.
class MiObjective {
 public:
  MiObjective(const OptimizationProblem& p, std::int64_t offset, std::string tag)
      : problem_(p), offset_(offset), tag_(std::move(tag)), u_(phasors(p.n_points, offset)),
        grid_(p.sigma2(), std::sqrt(p.sigma2()) / 6.0) {}

  // Pins the grid spacing to what mi_quadrature converges to at the start.
  void calibrate(std::span<const double> radii, std::span<const double> probs) {
    if (problem_.mi_eval.method != MiMethod::quadrature) return;
    const auto c = make(radii, probs);
    grid_ = GridEntropy(problem_.sigma2(), converged_spacing(c, channel(), problem_.mi_eval.tol));
  }

  double operator()(std::span<const double> radii, std::span<const double> probs) const {
    if (problem_.mi_eval.method == MiMethod::quadrature) {
      std::vector<ComplexPoint> pts(radii.size());
      for (std::size_t k = 0; k < radii.size(); ++k) pts[k] = radii[k] * u_[k];
      return grid_.output_entropy_bits(pts, probs) - noise_entropy_bits(problem_.sigma2());
    }
    const auto c = make(radii, probs);
    return mi_monte_carlo(c, channel(), problem_.mi_eval.k_mc, problem_.mi_eval.seed).bits;
  }

  Constellation make(std::span<const double> radii, std::span<const double> probs) const {
    std::vector<ComplexPoint> pts(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) pts[k] = radii[k] * u_[k];
    return Constellation(std::move(pts), std::vector<double>(probs.begin(), probs.end()), tag_, offset_, true);
  }

  AwgnChannel channel() const { return {problem_.sigma2(), problem_.snr}; }

  // Tolerance below which two objective values count as tied.
  double tie_tolerance() const { return problem_.mi_eval.method == MiMethod::quadrature ? problem_.mi_eval.tol : 0.0; }

 private:
  const OptimizationProblem& problem_;
  std::int64_t offset_;
  std::string tag_;
  std::vector<ComplexPoint> u_;
  GridEntropy grid_;
};

struct Candidate {
  std::vector<double> radii;
  std::vector<double> probs;
};

// Radii/probs decoder from an unconstrained parameter vector, or nullopt
// when the parameters do not describe a usable profile.
using Decoder = std::function<std::optional<Candidate>(std::span<const double>)>;
using Penalty = std::function<double(std::span<const double>)>;

struct MultiStart {
  AscentResult best;
  int best_start = 0;
};

MultiStart run_starts(const std::vector<std::vector<double>>& starts, const ObjectiveFn& objective,
                      const OptimizationProblem& p, double tie_tol) {
  AscentOptions opts;
  opts.max_iters = p.max_iters;
  opts.grad_tol = p.grad_tol;
  opts.value_tol = p.value_tol;
  MultiStart out;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    auto res = bfgs_maximize(objective, starts[i], opts);
    if (i == 0) {
      out.best = std::move(res);
      continue;
    }
    // Earlier starts win ties within the evaluator tolerance.
    if (res.value > out.best.value + tie_tol) {
      out.best = std::move(res);
      out.best_start = static_cast<int>(i);
    }
  }
  return out;
}

ObjectiveFn make_objective(const Decoder& decode, const MiObjective& mi, const Penalty& penalty) {
  return [&decode, &mi, penalty](std::span<const double> x) {
    const auto cand = decode(x);
    if (!cand) return -1e6;
    double v = mi(cand->radii, cand->probs);
    if (penalty) v -= penalty(x);
    return v;
  };
}

OptimizationResult finish(const OptimizationProblem& p, const MiObjective& mi, const Candidate& cand,
                          const MultiStart& ms, const Candidate& initial) {
  OptimizationResult out;
  out.constellation = mi.make(cand.radii, cand.probs);
  const auto ch = mi.channel();
  if (p.mi_eval.method == MiMethod::quadrature) {
    out.mi_bits = mi_quadrature(out.constellation, ch, p.mi_eval.tol).bits;
  } else {
    const auto est = mi_monte_carlo(out.constellation, ch, p.mi_eval.k_mc, p.mi_eval.seed);
    out.mi_bits = est.bits;
    out.mi_std_err = est.std_err_bits;
  }
  out.initial_mi_bits = mi(initial.radii, initial.probs);
  out.objective_trace = ms.best.trace;
  out.iterations = ms.best.iterations;
  out.converged = ms.best.converged;
  out.best_start = ms.best_start;
  out.residuals.power = std::abs(average_power(out.constellation) / p.sigma2() - p.snr);
  out.residuals.papr = p.papr_cap ? papr_constraint_residual(out.constellation, *p.papr_cap) : 0.0;
  return out;
}

// Enforces the SNR equality and, when capped, the PAPR bound on a
// non-decreasing radius profile.
bool make_feasible(std::vector<double>& radii, std::span<const double> probs, const OptimizationProblem& p) {
  const double target = p.snr * p.sigma2();
  if (!rescale(radii, probs, target)) return false;
  if (p.papr_cap) {
    radii = clip_radii_to_papr(radii, probs, *p.papr_cap);
    if (!rescale(radii, probs, target)) return false;
  }
  return true;
}

double papr_excess_penalty(std::vector<double> radii, std::span<const double> probs, const OptimizationProblem& p) {
  if (!p.papr_cap) return 0.0;
  const double excess = std::max(0.0, raw_papr(radii, probs) - *p.papr_cap);
  return kPaprPenalty * excess * excess;
}

std::mt19937_64 start_rng(const OptimizationProblem& p, std::uint64_t salt) {
  std::seed_seq seq{p.start_seed, salt, static_cast<std::uint64_t>(p.n_points)};
  return std::mt19937_64(seq);
}

std::vector<double> least_squares(std::vector<double> a, std::vector<double> b, std::size_t rows, std::size_t cols) {
  // Householder QR, a is row-major rows x cols.
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i * cols + k] * a[i * cols + k];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[k * cols + k] > 0.0 ? -norm : norm;
    std::vector<double> v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = a[i * cols + k];
    v[0] -= alpha;
    const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    if (vv == 0.0) continue;
    for (std::size_t j = k; j < cols; ++j) {
      double d = 0.0;
      for (std::size_t i = k; i < rows; ++i) d += v[i - k] * a[i * cols + j];
      d = 2.0 * d / vv;
      for (std::size_t i = k; i < rows; ++i) a[i * cols + j] -= d * v[i - k];
    }
    double d = 0.0;
    for (std::size_t i = k; i < rows; ++i) d += v[i - k] * b[i];
    d = 2.0 * d / vv;
    for (std::size_t i = k; i < rows; ++i) b[i] -= d * v[i - k];
  }
  std::vector<double> x(cols, 0.0);
  for (std::size_t k = cols; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < cols; ++j) acc -= a[k * cols + j] * x[j];
    x[k] = acc / a[k * cols + k];
  }
  return x;
}

std::int64_t point_cap(const OptimizationProblem& p, std::int64_t fallback) {
  return p.max_points > 0 ? p.max_points : fallback;
}

}  // namespace

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::g1: return "g1";
    case Formulation::g2: return "g2";
    case Formulation::p1: return "p1";
    case Formulation::p2: return "p2";
    case Formulation::gp1: return "gp1";
  }
  return "?";
}

Formulation parse_formulation(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  for (auto f : {Formulation::g1, Formulation::g2, Formulation::p1, Formulation::p2, Formulation::gp1}) {
    if (lower == to_string(f)) return f;
  }
  throw PreconditionError("unknown formulation '" + std::string(s) + "' (expected g1, g2, p1, p2 or gp1)");
}

double SpiralPowerPoly::value(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

double SpiralPowerPoly::derivative(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

bool SpiralPowerPoly::admissible(std::int64_t n_points) const {
  const double nd = static_cast<double>(n_points);
  if (value(1.0 / nd) < 0.0) return false;
  for (std::int64_t n = 1; n <= n_points; ++n) {
    if (derivative(static_cast<double>(n) / nd) < 0.0) return false;
  }
  return true;
}

void OptimizationProblem::validate() const {
  detail::require(n_points >= 2, "n_points must be >= 2");
  detail::require(std::isfinite(snr) && snr > 0.0, "SNR must be > 0");
  detail::require(noise_var >= 0.0 && std::isfinite(noise_var), "noise variance must be >= 0 (0 = 1/S)");
  if (papr_cap) detail::require(*papr_cap > 1.0, "PAPR cap must be > 1 (linear)");
  if (formulation == Formulation::g2) detail::require(poly_degree >= 1 && poly_degree <= 8, "poly degree must be 1..8");
  detail::require(max_iters >= 1, "max_iters must be >= 1");
  detail::require(starts >= 1, "need at least one start");
  detail::require(mi_eval.tol > 0.0, "evaluator tolerance must be > 0");
  detail::require(mi_eval.k_mc >= 1, "k_mc must be >= 1");
}

double papr_constraint_residual(const Constellation& c, double papr_cap) {
  detail::require(papr_cap > 1.0, "PAPR cap must be > 1");
  return std::max(0.0, papr(c) - papr_cap);
}

std::vector<double> clip_radii_to_papr(std::span<const double> radii, std::span<const double> probs, double papr_cap) {
  detail::require(papr_cap > 1.0, "PAPR cap must be > 1");
  detail::require(radii.size() == probs.size() && !radii.empty(), "radii and probabilities differ in length");
  std::vector<double> out(radii.begin(), radii.end());
  if (raw_papr(out, probs) <= papr_cap) return out;
  auto clipped_papr = [&](double level) {
    double num = level * level, den = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double r = std::min(radii[k], level);
      den += probs[k] * r * r;
    }
    return num / den;
  };
  // peak/average of the clipped profile grows monotonically with the level
  double lo = 0.0, hi = *std::max_element(radii.begin(), radii.end());
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (clipped_papr(mid) > papr_cap ? hi : lo) = mid;
  }
  for (double& r : out) r = std::min(r, lo);
  return out;
}

SpiralPowerPoly fit_spiral_to_gb_hr(std::int64_t n_points, int degree) {
  detail::require(n_points >= 2, "n_points must be >= 2");
  detail::require(degree >= 1 && degree <= 8, "poly degree must be 1..8");
  const auto rows = static_cast<std::size_t>(n_points);
  const auto cols = static_cast<std::size_t>(degree + 1);
  std::vector<double> a(rows * cols), b(rows);
  const double nd = static_cast<double>(n_points);
  for (std::size_t j = 0; j < rows; ++j) {
    const double x = static_cast<double>(j + 1) / nd;
    double pw = 1.0;
    for (std::size_t k = 0; k < cols; ++k, pw *= x) a[j * cols + k] = pw;
    b[j] = -std::log1p(-static_cast<double>(j) / nd);
  }
  return {least_squares(std::move(a), std::move(b), rows, cols)};
}

OptimizationResult optimize_g1(const OptimizationProblem& p) {
  p.validate();
  detail::require(p.formulation == Formulation::g1, "problem is not a G1 formulation");
  detail::require(p.n_points <= point_cap(p, kG1DefaultCap), "n_points above the G1 cap");
  const auto n = static_cast<std::size_t>(p.n_points);
  const std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  MiObjective mi(p, 0, "g1");

  const Decoder decode = [&](std::span<const double> s) -> std::optional<Candidate> {
    Candidate c{cumulative_squares(s), probs};
    if (!make_feasible(c.radii, probs, p)) return std::nullopt;
    return c;
  };
  const Penalty penalty = [&](std::span<const double> s) { return papr_excess_penalty(cumulative_squares(s), probs, p); };

  std::vector<std::vector<double>> starts;
  const auto hr = gen_gb_hr(p.n_points, PowerBudget(p.snr * p.sigma2())).radii();
  starts.push_back(increments_from_radii(hr));
  std::vector<double> disc(n);
  for (std::size_t k = 0; k < n; ++k) disc[k] = std::sqrt(static_cast<double>(k + 1));
  starts.push_back(increments_from_radii(disc));
  auto rng = start_rng(p, 1);
  std::uniform_real_distribution<double> unif(0.3, 1.7);
  while (static_cast<int>(starts.size()) < p.starts) {
    std::vector<double> s(n);
    for (double& v : s) v = unif(rng);
    starts.push_back(s);
  }
  starts.resize(static_cast<std::size_t>(p.starts));

  const auto first = decode(starts[0]);
  mi.calibrate(first->radii, first->probs);
  const auto ms = run_starts(starts, make_objective(decode, mi, penalty), p, mi.tie_tolerance());
  return finish(p, mi, *decode(ms.best.x), ms, *first);
}

OptimizationResult optimize_g2(const OptimizationProblem& p) {
  p.validate();
  detail::require(p.formulation == Formulation::g2, "problem is not a G2 formulation");
  const auto n = static_cast<std::size_t>(p.n_points);
  const double nd = static_cast<double>(n);
  const std::vector<double> probs(n, 1.0 / nd);
  MiObjective mi(p, 1, "g2");

  auto power_profile = [&](std::span<const double> c) {
    SpiralPowerPoly poly{std::vector<double>(c.begin(), c.end())};
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = poly.value(static_cast<double>(k + 1) / nd);
    return f;
  };
  auto violation = [&](std::span<const double> c) {
    SpiralPowerPoly poly{std::vector<double>(c.begin(), c.end())};
    const auto f = power_profile(c);
    double scale = 0.0;
    for (double v : f) scale += std::abs(v);
    scale = std::max(scale / nd, 1e-300);
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = std::max(0.0, -poly.derivative(static_cast<double>(k + 1) / nd)) / scale;
      v += d * d;
    }
    const double low = std::max(0.0, -f[0]) / scale;
    return v + low * low;
  };
  const Decoder decode = [&](std::span<const double> c) -> std::optional<Candidate> {
    auto f = power_profile(c);
    Candidate cand{std::vector<double>(n), probs};
    double run = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      run = std::max(run, std::sqrt(std::max(f[k], 0.0)));
      cand.radii[k] = run;
    }
    if (!make_feasible(cand.radii, probs, p)) return std::nullopt;
    return cand;
  };
  const Penalty penalty = [&](std::span<const double> c) {
    auto f = power_profile(c);
    std::vector<double> r(n);
    double run = 0.0;
    for (std::size_t k = 0; k < n; ++k) r[k] = run = std::max(run, std::sqrt(std::max(f[k], 0.0)));
    double pen = kSpiralPenalty * violation(c);
    if (weighted_power(r, probs) > 0.0) pen += papr_excess_penalty(r, probs, p);
    return pen;
  };
  auto normalized = [&](std::vector<double> c) {
    const auto f = power_profile(c);
    const double mean = std::accumulate(f.begin(), f.end(), 0.0) / nd;
    for (double& v : c) v /= mean;
    return c;
  };

  const auto k1 = static_cast<std::size_t>(p.poly_degree + 1);
  std::vector<std::vector<double>> starts;
  starts.push_back(normalized(fit_spiral_to_gb_hr(p.n_points, p.poly_degree).coeffs));
  std::vector<double> disc(k1, 0.0);
  disc[1] = 1.0;
  starts.push_back(normalized(disc));
  auto rng = start_rng(p, 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(starts.size()) < p.starts) {
    std::vector<double> c(k1, 0.0);
    for (std::size_t k = 1; k < k1; ++k) c[k] = unif(rng);
    starts.push_back(normalized(c));
  }
  starts.resize(static_cast<std::size_t>(p.starts));

  const auto first = decode(starts[0]);
  mi.calibrate(first->radii, first->probs);
  const auto ms = run_starts(starts, make_objective(decode, mi, penalty), p, mi.tie_tolerance());
  auto out = finish(p, mi, *decode(ms.best.x), ms, *first);

  // Report f scaled so that f(n/N) = r_n^2 of the returned constellation.
  const auto raw = power_profile(ms.best.x);
  double raw_pw = 0.0;
  for (double v : raw) raw_pw += std::max(v, 0.0) / nd;
  SpiralPowerPoly poly{ms.best.x};
  for (double& v : poly.coeffs) v *= p.snr * p.sigma2() / raw_pw;
  out.spiral = poly;
  out.spiral_violation = violation(ms.best.x);
  return out;
}

OptimizationResult optimize_p1(const OptimizationProblem& p) {
  p.validate();
  detail::require(p.formulation == Formulation::p1, "problem is not a P1 formulation");
  const auto n = static_cast<std::size_t>(p.n_points);
  std::vector<double> base(n);
  for (std::size_t k = 0; k < n; ++k) base[k] = std::sqrt(static_cast<double>(k + 1));
  MiObjective mi(p, 1, "p1");

  const Decoder decode = [&](std::span<const double> z) -> std::optional<Candidate> {
    Candidate c{base, p.decreasing_pmf ? decreasing_pmf(z) : softmax(z)};
    if (!make_feasible(c.radii, c.probs, p)) return std::nullopt;
    return c;
  };
  const Penalty penalty = [&](std::span<const double> z) {
    return papr_excess_penalty(base, p.decreasing_pmf ? decreasing_pmf(z) : softmax(z), p);
  };

  const std::size_t dim = p.decreasing_pmf ? n - 1 : n;
  std::vector<std::vector<double>> starts;
  // uniform, then a geometric tilt, then random
  starts.emplace_back(dim, p.decreasing_pmf ? -6.0 : 0.0);
  std::vector<double> tilt(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    tilt[k] = p.decreasing_pmf ? std::log(std::expm1(0.2)) : -0.2 * static_cast<double>(k);
  }
  starts.push_back(tilt);
  auto rng = start_rng(p, 3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(starts.size()) < p.starts) {
    std::vector<double> z(dim);
    for (double& v : z) v = gauss(rng) - (p.decreasing_pmf ? 3.0 : 0.0);
    starts.push_back(z);
  }
  starts.resize(static_cast<std::size_t>(p.starts));

  const auto first = decode(starts[0]);
  mi.calibrate(first->radii, first->probs);
  const auto ms = run_starts(starts, make_objective(decode, mi, penalty), p, mi.tie_tolerance());
  return finish(p, mi, *decode(ms.best.x), ms, *first);
}

OptimizationResult optimize_p2(const OptimizationProblem& p) {
  p.validate();
  detail::require(p.formulation == Formulation::p2, "problem is not a P2 formulation");
  MiObjective mi(p, 1, "p2");
  auto candidate = [&](double xi) {
    const auto c = gen_geometric_pmf_disc(p.n_points, xi, p.snr, p.sigma2());
    Candidate cand{c.radii(), std::vector<double>(c.probabilities().begin(), c.probabilities().end())};
    if (p.papr_cap) make_feasible(cand.radii, cand.probs, p);
    return cand;
  };
  const auto uniform = candidate(1.0);
  mi.calibrate(uniform.radii, uniform.probs);
  auto score = [&](double xi) {
    const auto cand = candidate(xi);
    double v = mi(cand.radii, cand.probs);
    if (p.papr_cap) v -= papr_excess_penalty(gen_geometric_pmf_disc(p.n_points, xi, p.snr, p.sigma2()).radii(), cand.probs, p);
    return v;
  };
  const auto best = golden_section_maximize(score, 1e-3, 1.0, 1e-4, 20);
  MultiStart ms;
  ms.best.x = {best.x};
  ms.best.value = best.value;
  ms.best.trace = best.trace;
  ms.best.iterations = best.evaluations;
  ms.best.converged = true;
  // The scan starts at xi = 1e-3; report the uniform (disc) pmf as the reference start.
  auto out = finish(p, mi, candidate(best.x), ms, uniform);
  out.xi = best.x;
  return out;
}

OptimizationResult optimize_gp1(const OptimizationProblem& p) {
  p.validate();
  detail::require(p.formulation == Formulation::gp1, "problem is not a GP1 formulation");
  detail::require(p.n_points <= point_cap(p, kGp1DefaultCap), "n_points above the GP1 cap");
  const auto n = static_cast<std::size_t>(p.n_points);
  const std::size_t pdim = p.decreasing_pmf ? n - 1 : n;
  MiObjective mi(p, 0, "gp1");

  auto split_probs = [&](std::span<const double> x) {
    const auto z = x.subspan(n, pdim);
    return p.decreasing_pmf ? decreasing_pmf(z) : softmax(z);
  };
  const Decoder decode = [&](std::span<const double> x) -> std::optional<Candidate> {
    Candidate c{cumulative_squares(x.first(n), kStrictStep), split_probs(x)};
    if (!make_feasible(c.radii, c.probs, p)) return std::nullopt;
    return c;
  };
  const Penalty penalty = [&](std::span<const double> x) {
    return papr_excess_penalty(cumulative_squares(x.first(n), kStrictStep), split_probs(x), p);
  };

  auto join = [&](std::vector<double> s, double z0) {
    s.resize(n + pdim, z0);
    return s;
  };
  const double z_uniform = p.decreasing_pmf ? -6.0 : 0.0;
  std::vector<std::vector<double>> starts;
  const auto hr = gen_gb_hr(p.n_points, PowerBudget(p.snr * p.sigma2())).radii();
  starts.push_back(join(increments_from_radii(hr), z_uniform));
  std::vector<double> disc(n);
  for (std::size_t k = 0; k < n; ++k) disc[k] = std::sqrt(static_cast<double>(k + 1));
  starts.push_back(join(increments_from_radii(disc), z_uniform));
  auto rng = start_rng(p, 4);
  std::uniform_real_distribution<double> unif(0.3, 1.7);
  std::normal_distribution<double> gauss(0.0, 0.5);
  while (static_cast<int>(starts.size()) < p.starts) {
    std::vector<double> x(n + pdim);
    for (std::size_t k = 0; k < n; ++k) x[k] = unif(rng);
    for (std::size_t k = n; k < n + pdim; ++k) x[k] = gauss(rng) + z_uniform;
    starts.push_back(x);
  }
  starts.resize(static_cast<std::size_t>(p.starts));

  const auto first = decode(starts[0]);
  mi.calibrate(first->radii, first->probs);
  const auto ms = run_starts(starts, make_objective(decode, mi, penalty), p, mi.tie_tolerance());
  return finish(p, mi, *decode(ms.best.x), ms, *first);
}

OptimizationResult optimize(const OptimizationProblem& p) {
  switch (p.formulation) {
    case Formulation::g1: return optimize_g1(p);
    case Formulation::g2: return optimize_g2(p);
    case Formulation::p1: return optimize_p1(p);
    case Formulation::p2: return optimize_p2(p);
    case Formulation::gp1: return optimize_gp1(p);
  }
  throw PreconditionError("unknown formulation");
}

}  // namespace gam
