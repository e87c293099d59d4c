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

#ifndef QMEM_SYMPLECTIC_HPP
#define QMEM_SYMPLECTIC_HPP

// Quadrature conventions used throughout qmem:
//   ħ = 1, [x, p] = i, a = (x + i p)/√2, vacuum variance 1/2 per quadrature.
//   Multi-mode quadrature vectors are ordered (x₁, p₁, x₂, p₂, …).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/errors.hpp"

namespace qmem {

using Matrix = Eigen::MatrixXd;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;

/// Standard skew form ⊕ [[0, 1], [-1, 0]] on `modes` modes.
inline Matrix omega(std::size_t modes) {
  Matrix w = Matrix::Zero(2 * modes, 2 * modes);
  for (std::size_t k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

inline Mat2 omega2() {
  Mat2 w;
  w << 0.0, 1.0, -1.0, 0.0;
  return w;
}

/// max |SᵀΩS − Ω|.
inline double symplectic_error(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic_error: matrix must be square with even dimension");
  }
  const std::size_t modes = static_cast<std::size_t>(s.rows() / 2);
  // SᵀΩS = Σ_k (x_kᵀ p_k − p_kᵀ x_k) over the rows of S.
  Matrix form = Matrix::Zero(s.rows(), s.cols());
  for (std::size_t k = 0; k < modes; ++k) {
    const auto x = s.row(static_cast<Eigen::Index>(2 * k));
    const auto p = s.row(static_cast<Eigen::Index>(2 * k + 1));
    form.noalias() += x.transpose() * p - p.transpose() * x;
  }
  return (form - omega(modes)).cwiseAbs().maxCoeff();
}

/// Rotation of one mode's phase space by θ.
inline Mat2 rotation_matrix(double theta) {
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// Linear quadrature transform on n modes, checked against SᵀΩS = Ω.
class SymplecticMap {
 public:
  static constexpr double kTolerance = 1e-9;

  SymplecticMap(Matrix s, std::vector<std::string> labels, double tolerance = kTolerance)
      : s_(std::move(s)), labels_(std::move(labels)) {
    if (s_.rows() != s_.cols() || s_.rows() % 2 != 0) {
      throw std::invalid_argument("symplectic map must be square with even dimension");
    }
    if (labels_.size() != modes()) {
      throw std::invalid_argument("symplectic map needs one label per mode");
    }
    const double err = symplectic_error(s_);
    if (!(err <= tolerance)) {
      throw NumericalError("map violates the symplectic form by " + std::to_string(err));
    }
  }

  const Matrix& matrix() const { return s_; }
  std::size_t modes() const { return static_cast<std::size_t>(s_.rows() / 2); }
  const std::vector<std::string>& labels() const { return labels_; }
  double error() const { return symplectic_error(s_); }

  /// This map followed by `next` (same mode layout).
  SymplecticMap then(const SymplecticMap& next) const {
    if (next.modes() != modes()) {
      throw std::invalid_argument("then: mode counts differ");
    }
    return SymplecticMap(next.s_ * s_, labels_, 10 * kTolerance);
  }

 private:
  Matrix s_;
  std::vector<std::string> labels_;
};

/// x → x/√ε, p → p√ε.
inline SymplecticMap squeeze_transform(double epsilon) {
  if (!(epsilon >= 1.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("squeeze_transform: epsilon must be >= 1");
  }
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0 / std::sqrt(epsilon);
  s(1, 1) = std::sqrt(epsilon);
  return SymplecticMap(std::move(s), {"mode"});
}

/// Covariance of a squeezed vacuum with squeezing factor ε (x variance 1/(2ε)).
inline Mat2 squeezed_vacuum_covariance(double epsilon) {
  if (!(epsilon >= 1.0)) {
    throw std::invalid_argument("squeezing factor must be >= 1");
  }
  Mat2 v = Mat2::Zero();
  v(0, 0) = 0.5 / epsilon;
  v(1, 1) = 0.5 * epsilon;
  return v;
}

}  // namespace qmem

#endif  // QMEM_SYMPLECTIC_HPP
