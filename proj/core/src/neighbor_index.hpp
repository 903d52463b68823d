#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gam::detail {

// Uniform bucket grid over a point set, for radius queries.
class NeighborIndex {
 public:
  NeighborIndex(std::span<const std::complex<double>> points, double cell) : points_(points) {
    double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
    for (const auto& z : points) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    // Keep the bucket count near the point count.
    const double extent = std::max(x1 - x0, y1 - y0);
    const double floor_cell = extent / std::max(1.0, std::sqrt(static_cast<double>(points.size())));
    cell_ = std::max({cell, floor_cell, 1e-300});
    x0_ = x0;
    y0_ = y0;
    nx_ = static_cast<std::int64_t>((x1 - x0) / cell_) + 1;
    ny_ = static_cast<std::int64_t>((y1 - y0) / cell_) + 1;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::int64_t> owner(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      owner[k] = bucket(points[k]);
      ++counts[owner[k] + 1];
    }
    for (std::size_t b = 1; b < counts.size(); ++b) counts[b] += counts[b - 1];
    start_ = counts;
    items_.resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) items_[counts[owner[k]]++] = static_cast<std::uint32_t>(k);
  }

  // Calls f(index, squared distance) for every point with |y - x| <= radius,
  // in increasing bucket order and increasing index within a bucket.
  template <class F>
  void for_each_within(std::complex<double> y, double radius, F&& f) const {
    const double r2 = radius * radius;
    const auto cx0 = clamp_x(std::floor((y.real() - radius - x0_) / cell_));
    const auto cx1 = clamp_x(std::floor((y.real() + radius - x0_) / cell_));
    const auto cy0 = clamp_y(std::floor((y.imag() - radius - y0_) / cell_));
    const auto cy1 = clamp_y(std::floor((y.imag() + radius - y0_) / cell_));
    for (auto cy = cy0; cy <= cy1; ++cy) {
      for (auto cx = cx0; cx <= cx1; ++cx) {
        const auto b = cy * nx_ + cx;
        for (auto i = start_[b]; i < start_[b + 1]; ++i) {
          const auto k = items_[i];
          const double d2 = std::norm(y - points_[k]);
          if (d2 <= r2) f(k, d2);
        }
      }
    }
  }

 private:
  std::int64_t bucket(std::complex<double> z) const {
    const auto cx = clamp_x(std::floor((z.real() - x0_) / cell_));
    const auto cy = clamp_y(std::floor((z.imag() - y0_) / cell_));
    return cy * nx_ + cx;
  }
  std::int64_t clamp_x(double v) const { return static_cast<std::int64_t>(std::clamp(v, 0.0, double(nx_ - 1))); }
  std::int64_t clamp_y(double v) const { return static_cast<std::int64_t>(std::clamp(v, 0.0, double(ny_ - 1))); }

  std::span<const std::complex<double>> points_;
  double cell_ = 1.0;
  double x0_ = 0.0, y0_ = 0.0;
  std::int64_t nx_ = 1, ny_ = 1;
  std::vector<std::int64_t> start_;
  std::vector<std::uint32_t> items_;
};

}  // namespace gam::detail
