#include "gam/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gam/errors.hpp"

namespace gam {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> fd_gradient(const ObjectiveFn& f, std::span<const double> x, double rel_step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

AscentResult bfgs_maximize(const ObjectiveFn& f, std::vector<double> x0, const AscentOptions& opts) {
  detail::require(!x0.empty(), "ascent needs at least one variable");
  const std::size_t n = x0.size();
  AscentResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (!std::isfinite(res.value)) throw NumericalError("objective is not finite at the starting point");
  res.trace.push_back(res.value);

  // Inverse Hessian of -f, row-major.
  std::vector<double> hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  bool scaled = false;

  std::vector<double> grad = fd_gradient(f, res.x, opts.fd_step);
  std::vector<double> dir(n), trial(n), s(n), y(n), hy(n);
  int stalls = 0;

  for (int it = 0; it < opts.max_iters; ++it) {
    if (max_abs(grad) < opts.grad_tol) {
      res.converged = true;
      break;
    }
    // Ascent direction d = H grad.
    for (std::size_t i = 0; i < n; ++i) dir[i] = dot(std::span(hinv).subspan(i * n, n), grad);
    double slope = dot(grad, dir);
    if (!(slope > 0.0)) {
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
      dir = grad;
      slope = dot(grad, dir);
      scaled = false;
    }
    // First step: keep the trial move at unit length.
    double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / std::sqrt(dot(dir, dir)));
    double fv = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = res.x[i] + alpha * dir[i];
      fv = f(trial);
      if (std::isfinite(fv) && fv >= res.value + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    res.iterations = it + 1;
    if (!accepted) {
      // No ascent along a fresh gradient direction: stationary to FD accuracy.
      if (!scaled || std::equal(dir.begin(), dir.end(), grad.begin())) {
        res.converged = true;
        break;
      }
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
      scaled = false;
      continue;
    }
    const double gain = fv - res.value;
    const auto new_grad = fd_gradient(f, trial, opts.fd_step);
    // Curvature pair for -f.
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial[i] - res.x[i];
      y[i] = -(new_grad[i] - grad[i]);
    }
    res.x = trial;
    res.value = fv;
    grad = new_grad;
    res.trace.push_back(fv);

    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (!scaled) {
        const double g0 = sy / dot(y, y);
        for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = g0;
        scaled = true;
      }
      for (std::size_t i = 0; i < n; ++i) hy[i] = dot(std::span(hinv).subspan(i * n, n), y);
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
    }

    stalls = gain < opts.value_tol ? stalls + 1 : 0;
    if (stalls >= 3) {
      res.converged = true;
      break;
    }
  }
  return res;
}

ScalarMax golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                  int scan_points) {
  detail::require(hi > lo, "empty search interval");
  detail::require(tol > 0.0, "tolerance must be > 0");
  detail::require(scan_points >= 3, "need at least 3 scan points");
  ScalarMax out;
  out.value = -std::numeric_limits<double>::infinity();
  auto eval = [&](double x) {
    const double v = f(x);
    ++out.evaluations;
    // Strict improvement only: earlier evaluations win ties.
    if (v > out.value) {
      out.value = v;
      out.x = x;
    }
    out.trace.push_back(out.value);
    return v;
  };
  const double step = (hi - lo) / (scan_points - 1);
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan_points; ++i) {
    const double v = eval(lo + step * i);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = lo + step * std::min(scan_points - 1, best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  return out;
}

}  // namespace gam
