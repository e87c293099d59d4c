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

#ifndef QMEM_CASCADE_HPP
#define QMEM_CASCADE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/symplectic.hpp"

namespace qmem {

/// Linear map on (atom, light bin 0, …, light bin n−1) produced by letting
/// each light bin interact with the atom once, in order. Step i is a 4×4
/// matrix on (x_A, p_A, X_i, P_i); the atom is the only carrier between bins.
class CascadeMap {
 public:
  using Light = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  /// Linear functional cᵀ r over all modes: atom coefficients and one row of
  /// (X_i, P_i) coefficients per light bin.
  struct Functional {
    Vec2 atom = Vec2::Zero();
    Light light;
  };

  explicit CascadeMap(std::vector<Mat4> steps) : steps_(std::move(steps)) {}

  std::size_t size() const { return steps_.size(); }
  const std::vector<Mat4>& steps() const { return steps_; }

  static Mat2 atom_atom(const Mat4& s) { return s.block<2, 2>(0, 0); }
  static Mat2 atom_light(const Mat4& s) { return s.block<2, 2>(0, 2); }
  static Mat2 light_atom(const Mat4& s) { return s.block<2, 2>(2, 0); }
  static Mat2 light_light(const Mat4& s) { return s.block<2, 2>(2, 2); }

  /// Atom-out ← atom-in block.
  Mat2 atom_block() const {
    Mat2 acc = Mat2::Identity();
    for (const Mat4& s : steps_) {
      acc = atom_atom(s) * acc;
    }
    return acc;
  }

  /// Expresses a functional of output quadratures in terms of input ones.
  Functional pullback(const Functional& output) const {
    if (static_cast<std::size_t>(output.light.rows()) != size()) {
      throw std::invalid_argument("pullback: functional has wrong number of light bins");
    }
    Functional input;
    input.light.resize(output.light.rows(), 2);
    Vec2 atom = output.atom;
    for (std::size_t k = size(); k-- > 0;) {
      const Mat4& s = steps_[k];
      const Vec2 light = output.light.row(static_cast<Eigen::Index>(k)).transpose();
      input.light.row(static_cast<Eigen::Index>(k)) =
          (atom_light(s).transpose() * atom + light_light(s).transpose() * light).transpose();
      atom = atom_atom(s).transpose() * atom + light_atom(s).transpose() * light;
    }
    input.atom = atom;
    return input;
  }

  Functional zero_functional() const {
    Functional f;
    f.light = Light::Zero(static_cast<Eigen::Index>(size()), 2);
    return f;
  }

  /// Dense (2 + 2n)-square matrix in the mode order above.
  Matrix dense() const {
    const Eigen::Index dim = static_cast<Eigen::Index>(2 + 2 * size());
    Matrix full = Matrix::Identity(dim, dim);
    Eigen::Matrix<double, 4, Eigen::Dynamic> rows(4, dim);
    for (std::size_t k = 0; k < size(); ++k) {
      const Eigen::Index l = static_cast<Eigen::Index>(2 + 2 * k);
      rows.row(0) = full.row(0);
      rows.row(1) = full.row(1);
      rows.row(2) = full.row(l);
      rows.row(3) = full.row(l + 1);
      const Eigen::Matrix<double, 4, Eigen::Dynamic> updated = steps_[k] * rows;
      full.row(0) = updated.row(0);
      full.row(1) = updated.row(1);
      full.row(l) = updated.row(2);
      full.row(l + 1) = updated.row(3);
    }
    return full;
  }

  SymplecticMap to_symplectic(double tolerance = SymplecticMap::kTolerance) const {
    std::vector<std::string> labels;
    labels.reserve(size() + 1);
    labels.emplace_back("atom");
    for (std::size_t k = 0; k < size(); ++k) {
      labels.push_back("light" + std::to_string(k));
    }
    return SymplecticMap(dense(), std::move(labels), tolerance);
  }

  /// Largest commutator violation of any single step.
  double max_step_symplectic_error() const {
    double worst = 0.0;
    for (const Mat4& s : steps_) {
      worst = std::max(worst, symplectic_error(Matrix(s)));
    }
    return worst;
  }

 private:
  std::vector<Mat4> steps_;
};

/// max-norm of the difference of the dense matrices of two cascades with the
/// same number of bins, without materializing either matrix.
inline double max_abs_difference(const CascadeMap& a, const CascadeMap& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("max_abs_difference: cascades have different bin counts");
  }
  const std::size_t n = a.size();
  const auto& sa = a.steps();
  const auto& sb = b.steps();
  double worst = (a.atom_block() - b.atom_block()).cwiseAbs().maxCoeff();

  // light_i ← atom_in
  Mat2 pa = Mat2::Identity(), pb = Mat2::Identity();
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, (CascadeMap::light_atom(sa[i]) * pa - CascadeMap::light_atom(sb[i]) * pb)
                                .cwiseAbs()
                                .maxCoeff());
    pa = CascadeMap::atom_atom(sa[i]) * pa;
    pb = CascadeMap::atom_atom(sb[i]) * pb;
  }
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(
        worst, (CascadeMap::light_light(sa[j]) - CascadeMap::light_light(sb[j])).cwiseAbs().maxCoeff());
    // carried atom state sourced by light_j
    Mat2 ga = CascadeMap::atom_light(sa[j]);
    Mat2 gb = CascadeMap::atom_light(sb[j]);
    for (std::size_t i = j + 1; i < n; ++i) {
      worst = std::max(worst, (CascadeMap::light_atom(sa[i]) * ga - CascadeMap::light_atom(sb[i]) * gb)
                                  .cwiseAbs()
                                  .maxCoeff());
      ga = CascadeMap::atom_atom(sa[i]) * ga;
      gb = CascadeMap::atom_atom(sb[i]) * gb;
    }
    // atom_out ← light_j
    worst = std::max(worst, (ga - gb).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace qmem

#endif  // QMEM_CASCADE_HPP
