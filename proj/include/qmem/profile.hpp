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

#ifndef QMEM_PROFILE_HPP
#define QMEM_PROFILE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/grid.hpp"

namespace qmem {

enum class ProfileShape {
  custom,
  constant,
  storage_optimal,    // flat-mode mode-matched storage, 1/√(C T + 4t)
  retrieval_optimal,  // flat-mode mode-matched retrieval, 1/√(C T + 4(T − t))
  beamsplitter,       // 1/(2√(t + T))
  retrieval_a,        // √(a / (2T − 2t))
  mode_matched,       // mode-matched to a non-flat f, no closed form in t
};

inline const char* to_string(ProfileShape s) {
  switch (s) {
    case ProfileShape::custom: return "custom";
    case ProfileShape::constant: return "constant";
    case ProfileShape::storage_optimal: return "storage-optimal";
    case ProfileShape::retrieval_optimal: return "retrieval-optimal";
    case ProfileShape::beamsplitter: return "beamsplitter";
    case ProfileShape::retrieval_a: return "retrieval-a";
    case ProfileShape::mode_matched: return "mode-matched";
  }
  return "?";
}

/// Analytic description of a profile, when it has one.
struct ProfileTag {
  ProfileShape shape = ProfileShape::custom;
  double duration = 0.0;
  double truncation = std::numeric_limits<double>::infinity();  // φ
  double level = 0.0;           // constant κ̃
  double regularization = 0.0;  // C of the mode-matched solution
  double gain = 0.0;            // a of the retrieval-a profile
};

/// Time-dependent coupling κ̃(t) ≥ 0 on a grid, with its running integral
/// ∫₀ᵗ κ̃² du. The running integral is computed by the trapezoid rule unless
/// the constructor is handed an exact one.
class CouplingProfile {
 public:
  CouplingProfile(Grid grid, std::vector<double> values, ProfileTag tag = {})
      : grid_(std::move(grid)), values_(std::move(values)), tag_(tag) {
    validate();
    std::vector<double> sq(values_.size());
    std::transform(values_.begin(), values_.end(), sq.begin(), [](double v) { return v * v; });
    cumulative_ = cumulative_trapezoid(grid_, sq);
    finish_tag();
  }

  CouplingProfile(Grid grid, std::vector<double> values, std::vector<double> cumulative, ProfileTag tag)
      : grid_(std::move(grid)), values_(std::move(values)), cumulative_(std::move(cumulative)), tag_(tag) {
    validate();
    if (cumulative_.size() != grid_.size() || cumulative_.front() != 0.0) {
      throw std::invalid_argument("coupling profile: running integral must match grid and start at 0");
    }
    for (std::size_t i = 1; i < cumulative_.size(); ++i) {
      if (!std::isfinite(cumulative_[i]) || cumulative_[i] < cumulative_[i - 1]) {
        throw std::invalid_argument("coupling profile: running integral must be finite and nondecreasing");
      }
    }
    finish_tag();
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  const ProfileTag& tag() const { return tag_; }
  double duration() const { return grid_.back(); }
  std::size_t size() const { return grid_.size(); }

  /// ∫₀ᵀ κ̃² dt.
  double squared_integral() const { return cumulative_.back(); }
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }
  bool is_zero() const { return max_value() == 0.0; }

  /// κ̃(t), from the closed form when the tag has one, otherwise interpolated.
  double evaluate(double t) const {
    const double T = tag_.duration;
    double v = 0.0;
    switch (tag_.shape) {
      case ProfileShape::constant:
        v = tag_.level;
        break;
      case ProfileShape::storage_optimal:
        v = std::sqrt(1.0 / (tag_.regularization * T + 4.0 * t));
        break;
      case ProfileShape::retrieval_optimal:
        v = std::sqrt(1.0 / (tag_.regularization * T + 4.0 * (T - t)));
        break;
      case ProfileShape::beamsplitter:
        v = 0.5 / std::sqrt(t + T);
        break;
      case ProfileShape::retrieval_a:
        v = std::sqrt(tag_.gain / (2.0 * (T - t)));
        break;
      default:
        return interpolate(grid_, values_, t);
    }
    return std::min(v, tag_.truncation);
  }

 private:
  void validate() const {
    check_grid(grid_);
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("coupling profile: grid and values differ in length");
    }
    for (double v : values_) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("coupling profile values must be finite and nonnegative");
      }
      if (v > tag_.truncation * (1.0 + 1e-12)) {
        throw std::invalid_argument("coupling profile exceeds its truncation level");
      }
    }
  }

  void finish_tag() {
    tag_.duration = grid_.back();
  }

  Grid grid_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
  ProfileTag tag_;
};

/// κ̃(t) = √(k²/T), so that ∫κ̃² dt = k².
inline CouplingProfile constant_profile(Grid grid, double squared_integral) {
  if (!(squared_integral >= 0.0) || !std::isfinite(squared_integral)) {
    throw std::invalid_argument("constant_profile: squared integral must be finite and >= 0");
  }
  check_grid(grid);
  const double level = std::sqrt(squared_integral / grid.back());
  std::vector<double> values(grid.size(), level);
  std::vector<double> cumulative(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cumulative[i] = level * level * grid[i];
  }
  ProfileTag tag;
  tag.shape = ProfileShape::constant;
  tag.level = level;
  return CouplingProfile(std::move(grid), std::move(values), std::move(cumulative), tag);
}

inline CouplingProfile zero_profile(Grid grid) { return constant_profile(std::move(grid), 0.0); }

/// Same shape sampled on a new grid, running integral from the trapezoid rule.
inline CouplingProfile resample_profile(const CouplingProfile& p, Grid target) {
  if (std::abs(target.back() - p.duration()) > 1e-12 * p.duration()) {
    throw std::invalid_argument("resample_profile: durations differ");
  }
  std::vector<double> values(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    values[i] = p.evaluate(target[i]);
  }
  return CouplingProfile(std::move(target), std::move(values), p.tag());
}

}  // namespace qmem

#endif  // QMEM_PROFILE_HPP
