// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEM_GRID_HPP
#define QMEM_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmem {

/// Time samples over one stage, strictly increasing from 0 to the stage
/// duration T (in units of the pulse duration).
using Grid = std::vector<double>;

inline constexpr std::size_t kDefaultGridPoints = 2000;

inline void check_grid(std::span<const double> grid) {
  if (grid.size() < 2) {
    throw std::invalid_argument("grid needs at least two points");
  }
  if (grid.front() != 0.0) {
    throw std::invalid_argument("grid must start at t = 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  if (!std::isfinite(grid.back())) {
    throw std::invalid_argument("grid end must be finite");
  }
}

inline Grid uniform_grid(double duration, std::size_t points = kDefaultGridPoints) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be positive");
  }
  if (points < 2) {
    throw std::invalid_argument("uniform grid needs at least two points");
  }
  Grid grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = duration * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = duration;
  return grid;
}

enum class Cluster { none, start, end, both };

/// Uniform grid merged with geometrically spaced points that resolve the
/// endpoint(s) named by `cluster` down to a step of `min_step * duration`.
/// Used for the divergent mode-matched couplings.
inline Grid graded_grid(double duration, std::size_t uniform_points, std::size_t geometric_points,
                        double min_step, Cluster cluster) {
  Grid grid = uniform_grid(duration, uniform_points);
  if (cluster == Cluster::none || geometric_points == 0) {
    return grid;
  }
  if (!(min_step > 0.0 && min_step < 1.0)) {
    throw std::invalid_argument("graded grid min_step must lie in (0, 1)");
  }
  const double ratio = std::pow(1.0 / min_step, 1.0 / static_cast<double>(geometric_points));
  std::vector<double> offsets;
  offsets.reserve(geometric_points);
  double offset = min_step;
  for (std::size_t i = 0; i < geometric_points && offset < 1.0; ++i) {
    offsets.push_back(offset * duration);
    offset *= ratio;
  }
  if (cluster == Cluster::start || cluster == Cluster::both) {
    grid.insert(grid.end(), offsets.begin(), offsets.end());
  }
  if (cluster == Cluster::end || cluster == Cluster::both) {
    for (double o : offsets) {
      grid.push_back(duration - o);
    }
  }
  std::sort(grid.begin(), grid.end());
  const double merge = 1e-3 * min_step * duration;
  Grid merged;
  merged.reserve(grid.size());
  for (double t : grid) {
    if (merged.empty() || t - merged.back() > merge) {
      merged.push_back(t);
    }
  }
  merged.front() = 0.0;
  merged.back() = duration;
  return merged;
}

/// Sorted union of two grids on the same interval.
inline Grid union_grid(std::span<const double> a, std::span<const double> b) {
  Grid out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  const double scale = std::max(a.back(), b.back());
  Grid merged;
  merged.reserve(out.size());
  for (double t : out) {
    if (merged.empty() || t - merged.back() > 1e-14 * scale) {
      merged.push_back(t);
    }
  }
  return merged;
}

inline double trapezoid(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) {
    throw std::invalid_argument("trapezoid: grid and values differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    sum += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return sum;
}

inline std::vector<double> cumulative_trapezoid(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) {
    throw std::invalid_argument("cumulative_trapezoid: grid and values differ in length");
  }
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return out;
}

/// Piecewise-linear interpolation, clamped to the end values outside the grid.
inline double interpolate(std::span<const double> grid, std::span<const double> values, double t) {
  if (t <= grid.front()) {
    return values.front();
  }
  if (t >= grid.back()) {
    return values.back();
  }
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return (1.0 - w) * values[lo] + w * values[hi];
}

inline std::vector<double> resample(std::span<const double> grid, std::span<const double> values,
                                    std::span<const double> target) {
  std::vector<double> out(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    out[i] = interpolate(grid, values, target[i]);
  }
  return out;
}

/// A real temporal mode f(t) on [0, T] with trapezoid norm ∫f² dt = 1.
class ModeFunction {
 public:
  static constexpr double kNormTolerance = 1e-9;

  ModeFunction(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    check_grid(grid_);
    if (grid_.size() != values_.size()) {
      throw std::invalid_argument("mode function: grid and values differ in length");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("mode function values must be finite");
      }
    }
    const double norm = squared_norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw std::invalid_argument("mode function is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
  }

  /// Scales `values` to unit norm on `grid`.
  static ModeFunction normalized(Grid grid, std::vector<double> values) {
    check_grid(grid);
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(), [](double v) { return v * v; });
    const double norm = trapezoid(grid, sq);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw std::invalid_argument("mode function has zero or non-finite norm");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : values) {
      v *= scale;
    }
    return ModeFunction(std::move(grid), std::move(values));
  }

  template <typename Fn>
  static ModeFunction from_function(Grid grid, Fn&& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = fn(grid[i]);
    }
    return normalized(std::move(grid), std::move(values));
  }

  /// f(t) = 1/√T.
  static ModeFunction flat(Grid grid) {
    check_grid(grid);
    std::vector<double> values(grid.size(), 1.0 / std::sqrt(grid.back()));
    return ModeFunction(std::move(grid), std::move(values));
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double duration() const { return grid_.back(); }
  std::size_t size() const { return grid_.size(); }
  double operator()(double t) const { return interpolate(grid_, values_, t); }

  double squared_norm() const {
    std::vector<double> sq(values_.size());
    std::transform(values_.begin(), values_.end(), sq.begin(), [](double v) { return v * v; });
    return trapezoid(grid_, sq);
  }

  /// Linear resampling onto another grid of the same duration, renormalized.
  ModeFunction resampled(const Grid& target) const {
    if (std::abs(target.back() - duration()) > 1e-12 * duration()) {
      throw std::invalid_argument("resampled: durations differ");
    }
    return normalized(target, resample(grid_, values_, target));
  }

  /// Unit vector of the mode in the basis of flat bin modes between grid
  /// points: component i is the bin-mean of f times √(t_{i+1} − t_i).
  std::vector<double> bin_amplitudes() const {
    std::vector<double> v(grid_.size() - 1);
    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
      const double tau = grid_[i + 1] - grid_[i];
      v[i] = 0.5 * (values_[i] + values_[i + 1]) * std::sqrt(tau);
      norm += v[i] * v[i];
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (double& x : v) {
      x *= scale;
    }
    return v;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// ∫ f g dt by the trapezoid rule on the union of both grids.
inline double mode_inner_product(const ModeFunction& f, const ModeFunction& g) {
  if (std::abs(f.duration() - g.duration()) > 1e-12 * std::max(f.duration(), g.duration())) {
    throw std::invalid_argument("mode_inner_product: mode durations differ");
  }
  if (f.grid() == g.grid()) {
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < prod.size(); ++i) {
      prod[i] = f.values()[i] * g.values()[i];
    }
    return trapezoid(f.grid(), prod);
  }
  const Grid grid = union_grid(f.grid(), g.grid());
  std::vector<double> prod(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    prod[i] = f(grid[i]) * g(grid[i]);
  }
  return trapezoid(grid, prod);
}

}  // namespace qmem

#endif  // QMEM_GRID_HPP
