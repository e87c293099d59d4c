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

#ifndef QMEM_CHANNEL_HPP
#define QMEM_CHANNEL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qmem/errors.hpp"
#include "qmem/symplectic.hpp"

namespace qmem {

/// Smallest eigenvalue of N + (i/2)(Ω − MΩMᵀ); nonnegative iff the channel is
/// completely positive.
inline double cp_margin(const Mat2& m, const Mat2& n) {
  const Mat2 w = omega2();
  const Mat2 skew = 0.5 * (w - m * w * m.transpose());
  Eigen::Matrix2cd h = n.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

/// Single-mode Gaussian channel: means d → M d, covariances V → M V Mᵀ + N.
class GaussianChannel {
 public:
  static constexpr double kTolerance = 1e-9;

  GaussianChannel(const Mat2& m, const Mat2& n, double tolerance = kTolerance) : m_(m), n_(n) {
    if (!m_.allFinite() || !n_.allFinite()) {
      throw NumericalError("channel has non-finite entries");
    }
    if (std::abs(n_(0, 1) - n_(1, 0)) > tolerance * (1.0 + n_.cwiseAbs().maxCoeff())) {
      throw NumericalError("channel noise matrix is not symmetric");
    }
    n_(0, 1) = n_(1, 0) = 0.5 * (n_(0, 1) + n_(1, 0));
    const double margin = cp_margin(m_, n_);
    if (margin < -tolerance) {
      throw NumericalError("channel is not completely positive (margin " + std::to_string(margin) + ")");
    }
  }

  static GaussianChannel identity() { return {Mat2::Identity(), Mat2::Zero()}; }

  /// Beam-splitter admixture of vacuum with amplitude transmissivity t.
  static GaussianChannel pure_loss(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("pure_loss: transmissivity must lie in [0, 1]");
    }
    return {t * Mat2::Identity(), 0.5 * (1.0 - t * t) * Mat2::Identity()};
  }

  /// Output replaced by vacuum.
  static GaussianChannel full_loss() { return pure_loss(0.0); }

  /// Quantum-limited amplifier with power gain G ≥ 1.
  static GaussianChannel amplifier(double gain) {
    if (!(gain >= 1.0)) {
      throw std::invalid_argument("amplifier: gain must be >= 1");
    }
    return {std::sqrt(gain) * Mat2::Identity(), 0.5 * (gain - 1.0) * Mat2::Identity()};
  }

  static GaussianChannel unitary(const Mat2& s) { return {s, Mat2::Zero()}; }
  static GaussianChannel rotation(double theta) { return unitary(rotation_matrix(theta)); }

  const Mat2& M() const { return m_; }
  const Mat2& N() const { return n_; }
  double margin() const { return cp_margin(m_, n_); }
  Mat2 output_covariance(const Mat2& v_in) const { return m_ * v_in * m_.transpose() + n_; }

 private:
  Mat2 m_;
  Mat2 n_;
};

/// `first` followed by `second`.
inline GaussianChannel channel_compose(const GaussianChannel& first, const GaussianChannel& second) {
  const Mat2 m = second.M() * first.M();
  const Mat2 n = second.M() * first.N() * second.M().transpose() + second.N();
  return {m, n};
}

/// Applies a phase-space rotation after the channel.
inline GaussianChannel rotate_output(const GaussianChannel& ch, double theta) {
  const Mat2 r = rotation_matrix(theta);
  return {r * ch.M(), r * ch.N() * r.transpose()};
}

/// Rotation angle θ maximizing tr(R(θ) M), i.e. the fixed output rotation that
/// brings the gain matrix closest to +I. Zero for a vanishing gain.
inline double alignment_angle(const Mat2& m) {
  const double c = m(0, 0) + m(1, 1);
  const double s = m(0, 1) - m(1, 0);
  if (std::hypot(c, s) < 1e-12) {
    return 0.0;
  }
  return std::atan2(s, c);
}

}  // namespace qmem

#endif  // QMEM_CHANNEL_HPP
