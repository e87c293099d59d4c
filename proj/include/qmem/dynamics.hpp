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

#ifndef QMEM_DYNAMICS_HPP
#define QMEM_DYNAMICS_HPP

// Input-output relations of the simultaneous multi-pass Faraday interaction.
//
// Two passes (interaction sequence pp, xx):
//   x_A(t) = x_A(0) + ∫₀ᵗ κ̃ P_in
//   p_A(t) = p_A(0) e^{−∫₀ᵗκ̃²} − ∫₀ᵗ κ̃(t′) e^{−∫_{t′}^t κ̃²} X_in(t′) dt′
//   X_out = X_in + κ̃ p_A,   P_out = P_in − κ̃ x_A
// Four passes (pp, xx, xx, pp): both atomic quadratures decay with
// e^{−2∫κ̃²}, drives and output gains carry a factor 2, i.e. a beam splitter
//   a_A(t) = a_A(0) e^{−2∫₀ᵗκ̃²} − 2i ∫₀ᵗ κ̃ e^{−2∫_{t′}^t κ̃²} A_in(t′) dt′.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/cascade.hpp"
#include "qmem/channel.hpp"
#include "qmem/errors.hpp"
#include "qmem/grid.hpp"
#include "qmem/profile.hpp"
#include "qmem/protocol.hpp"
#include "qmem/symplectic.hpp"

namespace qmem {

enum class PassConfig { two_pass, four_pass };

/// Sequential (delay-line) two-pass QND interaction on (atom, light):
///   x_A' = x_A + κ p_L,  p_A' = (1 − κ²) p_A − κ x_L,
///   x_L' = x_L + κ p_A,  p_L' = (1 − κ²) p_L − κ x_A.
inline SymplecticMap qnd_sequential_map(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("qnd_sequential_map: kappa must be finite and >= 0");
  }
  Matrix s = Matrix::Zero(4, 4);
  const double k2 = kappa * kappa;
  s(0, 0) = 1.0;
  s(0, 3) = kappa;
  s(1, 1) = 1.0 - k2;
  s(1, 2) = -kappa;
  s(2, 2) = 1.0;
  s(2, 1) = kappa;
  s(3, 3) = 1.0 - k2;
  s(3, 0) = -kappa;
  return SymplecticMap(std::move(s), {"atom", "light"});
}

/// Light → atom storage channel of the sequential QND map with the atom
/// initially in vacuum, after output alignment. At κ = 1 the mean is mapped
/// faithfully and x_A(0) adds vacuum noise to one quadrature.
inline GaussianChannel sequential_qnd_storage_channel(double kappa) {
  const Matrix s = qnd_sequential_map(kappa).matrix();
  const Mat2 a = s.block<2, 2>(0, 0);
  const GaussianChannel raw(s.block<2, 2>(0, 2), 0.5 * a * a.transpose());
  return rotate_output(raw, alignment_angle(raw.M()));
}

/// Continuum kernels of one multi-pass stage sampled on the profile grid.
class InputOutputKernels {
 public:
  InputOutputKernels(PassConfig config, const CouplingProfile& profile)
      : config_(config), grid_(profile.grid()), coupling_(profile.values()), cumulative_(profile.cumulative()) {}

  PassConfig config() const { return config_; }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& coupling() const { return coupling_; }
  /// ∫₀^{t_i} κ̃² du.
  const std::vector<double>& cumulative() const { return cumulative_; }
  std::size_t size() const { return grid_.size(); }

  double drive_gain() const { return config_ == PassConfig::four_pass ? 2.0 : 1.0; }
  double damping_x() const { return config_ == PassConfig::four_pass ? 2.0 : 0.0; }
  double damping_p() const { return config_ == PassConfig::four_pass ? 2.0 : 1.0; }

  /// Coefficient of x_A(0) in x_A(t_i).
  double decay_x(std::size_t i) const { return std::exp(-damping_x() * cumulative_[i]); }
  /// Coefficient of p_A(0) in p_A(t_i).
  double decay_p(std::size_t i) const { return std::exp(-damping_p() * cumulative_[i]); }

  /// Kernel density of P_in(t_j) in x_A(t_i), zero for j > i.
  double drive_x(std::size_t i, std::size_t j) const {
    if (j > i) return 0.0;
    return drive_gain() * coupling_[j] * std::exp(-damping_x() * (cumulative_[i] - cumulative_[j]));
  }
  /// Kernel density of X_in(t_j) in p_A(t_i), zero for j > i.
  double drive_p(std::size_t i, std::size_t j) const {
    if (j > i) return 0.0;
    return -drive_gain() * coupling_[j] * std::exp(-damping_p() * (cumulative_[i] - cumulative_[j]));
  }
  /// X_out = X_in + g κ̃ p_A and P_out = P_in − g κ̃ x_A at t_i.
  double output_gain(std::size_t i) const { return drive_gain() * coupling_[i]; }

  /// Exactly symplectic single-bin steps on (x_A, p_A, X_i, P_i), one per grid
  /// interval, parametrized by the bin integral b² = ∫_bin κ̃².
  std::vector<Mat4> bin_steps() const {
    std::vector<Mat4> steps;
    steps.reserve(grid_.size() - 1);
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
      const double b2 = std::max(0.0, cumulative_[i + 1] - cumulative_[i]);
      steps.push_back(config_ == PassConfig::four_pass ? four_pass_step(b2) : two_pass_step(b2));
    }
    return steps;
  }

  CascadeMap induced_map() const { return CascadeMap(bin_steps()); }

  /// a' = r a − i s A, A' = r A − i s a with r = e^{−2b²}.
  static Mat4 four_pass_step(double b2) {
    const double r = std::exp(-2.0 * b2);
    const double s = std::sqrt(-std::expm1(-4.0 * b2));
    Mat4 m = Mat4::Zero();
    m(0, 0) = r;
    m(0, 3) = s;
    m(1, 1) = r;
    m(1, 2) = -s;
    m(2, 2) = r;
    m(2, 1) = s;
    m(3, 3) = r;
    m(3, 0) = -s;
    return m;
  }

  /// x-sector (x_A, P): [[1, b], [−b, b²/(e^{b²} − 1)]];
  /// p-sector (p_A, X): [[e^{−b²}, −(1 − e^{−b²})/b], [(1 − e^{−b²})/b, (1 − e^{−b²})/b²]].
  static Mat4 two_pass_step(double b2) {
    Mat4 m = Mat4::Zero();
    if (b2 == 0.0) {
      return Mat4::Identity();
    }
    const double b = std::sqrt(b2);
    const double one_minus_r = -std::expm1(-b2);
    const double drive = one_minus_r / b;
    m(0, 0) = 1.0;
    m(0, 3) = b;
    m(3, 0) = -b;
    m(3, 3) = b2 / std::expm1(b2);
    m(1, 1) = std::exp(-b2);
    m(1, 2) = -drive;
    m(2, 1) = drive;
    m(2, 2) = one_minus_r / b2;
    return m;
  }

 private:
  PassConfig config_;
  Grid grid_;
  std::vector<double> coupling_;
  std::vector<double> cumulative_;
};

inline InputOutputKernels two_pass_kernels(const CouplingProfile& profile) {
  return InputOutputKernels(PassConfig::two_pass, profile);
}

inline InputOutputKernels four_pass_kernels(const CouplingProfile& profile) {
  return InputOutputKernels(PassConfig::four_pass, profile);
}

/// Where the part of the signal not transferred went. Storage: admixture of the
/// initial atomic state (`atom`) and of light modes orthogonal to f (`light`).
/// Retrieval: signal left in the atom (`atom`) and emitted into modes
/// orthogonal to f (`light`). In both cases |t|² − |t_conj|² + atom + light = 1.
struct NoiseBudget {
  double atom = 0.0;
  double light = 0.0;
};

/// Coefficients of a†-preserving (`amplitude`) and conjugating (`conjugate`)
/// parts of the signal-mode transfer. Four passes have conjugate = 0.
struct TransferAmplitude {
  std::complex<double> amplitude;
  std::complex<double> conjugate;
  NoiseBudget noise;
};

namespace detail {

inline ModeFunction on_grid(const ModeFunction& f, const Grid& grid) {
  if (f.grid() == grid) {
    return f;
  }
  return f.resampled(grid);
}

}  // namespace detail

/// Signal-mode transfer amplitude by quadrature of the continuum kernels.
inline TransferAmplitude transfer_amplitude(const InputOutputKernels& k, const ModeFunction& mode,
                                            Direction direction) {
  const ModeFunction f = detail::on_grid(mode, k.grid());
  const std::size_t n = k.size();
  const std::size_t last = n - 1;
  const std::complex<double> i(0.0, 1.0);
  std::vector<double> even(n), odd(n);
  TransferAmplitude out;
  if (direction == Direction::storage) {
    for (std::size_t j = 0; j < n; ++j) {
      const double kx = k.drive_x(last, j);
      const double kp = k.drive_p(last, j);
      even[j] = (kp - kx) * f.values()[j];
      odd[j] = (kx + kp) * f.values()[j];
    }
    out.amplitude = 0.5 * i * trapezoid(k.grid(), even);
    out.conjugate = 0.5 * i * trapezoid(k.grid(), odd);
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = k.decay_x(j);
      const double dp = k.decay_p(j);
      even[j] = f.values()[j] * k.output_gain(j) * 0.5 * (dx + dp);
      odd[j] = f.values()[j] * k.output_gain(j) * 0.5 * (dx - dp);
    }
    out.amplitude = -i * trapezoid(k.grid(), even);
    out.conjugate = -i * trapezoid(k.grid(), odd);
  }
  out.noise.atom = k.decay_x(last) * k.decay_p(last);
  out.noise.light = 1.0 - (std::norm(out.amplitude) - std::norm(out.conjugate)) - out.noise.atom;
  return out;
}

/// Single-pass storage (H ∝ p_A p_L), homodyne detection of the outgoing x_L,
/// feedback −gain·(result) onto p_A, then an atomic 90° rotation. With
/// gain = 1/κ: x_A^out = x_L^in/κ, p_A^out = x_A^in + κ p_L^in. `squeezing`
/// is ε for the initial atomic state, `overlap` the overlap between the
/// coupling-shaped light mode and the signal mode.
inline GaussianChannel direct_mapping_map(double kappa, double gain, double squeezing = 1.0, double overlap = 1.0) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("direct_mapping_map: kappa must be > 0");
  }
  if (!(squeezing >= 1.0)) {
    throw std::invalid_argument("direct_mapping_map: squeezing must be >= 1");
  }
  if (!(std::abs(overlap) <= 1.0 + 1e-12)) {
    throw std::invalid_argument("direct_mapping_map: overlap must lie in [-1, 1]");
  }
  const double s = std::clamp(overlap, -1.0, 1.0);
  const double leak = 1.0 - s * s;
  const double residual = 1.0 - gain * kappa;
  Mat2 m = Mat2::Zero();
  m(0, 0) = gain * s;
  m(1, 1) = kappa * s;
  Mat2 n = Mat2::Zero();
  n(0, 0) = residual * residual * 0.5 * squeezing + gain * gain * 0.5 * leak;
  n(1, 1) = 0.5 / squeezing + kappa * kappa * 0.5 * leak;
  return {m, n};
}

namespace detail {

/// Channel of a multi-pass stage on the signal mode, read off the induced
/// discrete map. Storage maps light mode → atom, retrieval atom → light mode.
inline GaussianChannel multipass_stage_channel(const InputOutputKernels& kernels, const ModeFunction& mode,
                                               Direction role, double squeezing) {
  const CascadeMap cascade = kernels.induced_map();
  const ModeFunction f = on_grid(mode, kernels.grid());
  const std::vector<double> v = f.bin_amplitudes();
  const Eigen::Index nb = static_cast<Eigen::Index>(v.size());
  const Eigen::Map<const Eigen::VectorXd> vv(v.data(), nb);

  std::array<CascadeMap::Functional, 2> in;
  for (int q = 0; q < 2; ++q) {
    CascadeMap::Functional out = cascade.zero_functional();
    if (role == Direction::storage) {
      out.atom(q) = 1.0;
    } else {
      out.light.col(q) = vv;
    }
    in[static_cast<std::size_t>(q)] = cascade.pullback(out);
  }

  // Project light weights on the signal mode; the remainder is noise.
  Mat2 m = Mat2::Zero();
  std::array<CascadeMap::Light, 2> rest;
  std::array<Vec2, 2> signal;
  for (std::size_t q = 0; q < 2; ++q) {
    signal[q] = in[q].light.transpose() * vv;  // coefficients on (x_f, p_f)
    rest[q] = in[q].light - vv * signal[q].transpose();
  }
  const Mat2 v_signal = squeezed_vacuum_covariance(role == Direction::retrieval ? squeezing : 1.0);
  const Mat2 v_atom = squeezed_vacuum_covariance(role == Direction::storage ? squeezing : 1.0);
  Mat2 n = Mat2::Zero();
  for (std::size_t a = 0; a < 2; ++a) {
    if (role == Direction::storage) {
      m.row(static_cast<Eigen::Index>(a)) = signal[a].transpose();
    } else {
      m.row(static_cast<Eigen::Index>(a)) = in[a].atom.transpose();
    }
    for (std::size_t b = 0; b < 2; ++b) {
      double cov = 0.5 * (rest[a].array() * rest[b].array()).sum();
      if (role == Direction::storage) {
        cov += in[a].atom.dot(v_atom * in[b].atom);
      } else {
        cov += signal[a].dot(v_signal * signal[b]);
      }
      n(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = cov;
    }
  }
  return {m, n};
}

}  // namespace detail

/// Action of one stage on the signal: light (mode f) → atom for storage,
/// atom → light (mode f) for retrieval.
inline GaussianChannel stage_channel(const Stage& stage, const ModeFunction& mode) {
  switch (stage.kind) {
    case StageKind::qnd_single_pass_feedback: {
      const double k2 = stage.profile.squared_integral();
      if (k2 == 0.0) {
        // No interaction: the atom keeps its (rotated) initial state.
        Mat2 n = Mat2::Zero();
        n(0, 0) = 0.5 * stage.squeezing;
        n(1, 1) = 0.5 / stage.squeezing;
        return {Mat2::Zero(), n};
      }
      const double kappa = std::sqrt(k2);
      const ModeFunction f = detail::on_grid(mode, stage.profile.grid());
      const std::vector<double> v = f.bin_amplitudes();
      const auto& cum = stage.profile.cumulative();
      double overlap = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        overlap += std::sqrt(std::max(0.0, cum[i + 1] - cum[i])) / kappa * v[i];
      }
      const double gain = stage.feedback_gain.value_or(1.0 / kappa);
      return direct_mapping_map(kappa, gain, stage.squeezing, std::min(overlap, 1.0));
    }
    case StageKind::two_pass:
      return detail::multipass_stage_channel(two_pass_kernels(stage.profile), mode, stage.role, stage.squeezing);
    case StageKind::four_pass:
      return detail::multipass_stage_channel(four_pass_kernels(stage.profile), mode, stage.role, stage.squeezing);
  }
  throw std::invalid_argument("stage_channel: unknown stage kind");
}

struct ProtocolChannel {
  GaussianChannel raw;      // storage then retrieval, before alignment
  double alignment = 0.0;   // fixed output rotation angle
  GaussianChannel aligned;  // the effective channel
};

inline ProtocolChannel effective_channel_details(const ProtocolSpec& spec, const ModeFunction& f_in,
                                                 const ModeFunction& f_out) {
  validate(spec);
  GaussianChannel raw = channel_compose(stage_channel(spec.stages[0], f_in), stage_channel(spec.stages[1], f_out));
  const double theta = alignment_angle(raw.M());
  GaussianChannel aligned = rotate_output(raw, theta);
  return {std::move(raw), theta, std::move(aligned)};
}

/// Single-mode channel from the input signal mode f_in to the retrieved mode
/// f_out, after the protocol's fixed phase-space alignment.
inline GaussianChannel effective_channel(const ProtocolSpec& spec, const ModeFunction& f_in,
                                         const ModeFunction& f_out) {
  return effective_channel_details(spec, f_in, f_out).aligned;
}

/// Flat input and output modes on the stage grids.
inline GaussianChannel effective_channel(const ProtocolSpec& spec) {
  validate(spec);
  return effective_channel(spec, ModeFunction::flat(spec.stages[0].profile.grid()),
                           ModeFunction::flat(spec.stages[1].profile.grid()));
}

}  // namespace qmem

#endif  // QMEM_DYNAMICS_HPP
