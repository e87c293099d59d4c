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

#ifndef QMEM_FIDELITY_HPP
#define QMEM_FIDELITY_HPP

// Qubit fidelities of a single-mode Gaussian channel on the 0/1-photon space.
//
// The kernel ⟨β|E(|α⟩⟨α|)|β⟩ e^{|α|²+|β|²} of a zero-displacement channel is
// c·exp(½ wᵀ A w), w = (α, ᾱ, β, β̄), and ⟨j|E(|m⟩⟨n|)|k⟩ for m, n, j, k ∈ {0,1}
// is the coefficient of α^m ᾱ^n β^k β̄^j: a hafnian of the selected entries
// of A, times c.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qmem/channel.hpp"
#include "qmem/qubit.hpp"
#include "qmem/symplectic.hpp"

namespace qmem {

/// E[j][k][m][n] = ⟨j|E(|m⟩⟨n|)|k⟩, photon numbers 0/1.
class FockTransfer {
 public:
  explicit FockTransfer(const GaussianChannel& ch) {
    using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix<Complex, 2, 2> L;
    L << h, h, Complex(0.0, -h), Complex(0.0, h);
    const Mat2 sigma = 0.5 * ch.M() * ch.M().transpose() + ch.N() + 0.5 * Mat2::Identity();
    const double det = sigma.determinant();
    if (!(det > 0.0)) {
      throw NumericalError("fidelity: singular output covariance");
    }
    CMat B(2, 4);
    B.leftCols(2) = -ch.M().cast<Complex>() * L;
    B.rightCols(2) = L;
    CMat A = -B.transpose() * sigma.inverse().cast<Complex>() * B;
    A(0, 1) += 1.0;
    A(1, 0) += 1.0;
    A(2, 3) += 1.0;
    A(3, 2) += 1.0;
    const double c = 1.0 / std::sqrt(det);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < 2; ++n) {
            const int sel[4] = {m, n, k, j};
            int idx[4];
            int count = 0;
            for (int q = 0; q < 4; ++q) {
              if (sel[q]) idx[count++] = q;
            }
            Complex v = 0.0;
            if (count == 0) {
              v = 1.0;
            } else if (count == 2) {
              v = A(idx[0], idx[1]);
            } else if (count == 4) {
              v = A(0, 1) * A(2, 3) + A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);
            }
            e_[j][k][m][n] = c * v;
          }
  }

  Complex operator()(int j, int k, int m, int n) const { return e_[j][k][m][n]; }

  /// ⟨j|E(|ψ⟩⟨φ|)|k⟩ for states on the 0/1 space.
  Complex apply(int j, int k, const std::array<Complex, 2>& psi, const std::array<Complex, 2>& phi) const {
    Complex s = 0.0;
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) s += e_[j][k][m][n] * psi[m] * std::conj(phi[n]);
    return s;
  }

 private:
  Complex e_[2][2][2][2];
};

inline double qubit_state_fidelity(const FockTransfer& e, const QubitState& psi) {
  const std::array<Complex, 2> c{psi.c0(), psi.c1()};
  Complex f = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) f += std::conj(c[j]) * e.apply(j, k, c, c) * c[k];
  return f.real();
}

/// F(ψ) = ⟨ψ|E(|ψ⟩⟨ψ|)|ψ⟩.
inline double qubit_state_fidelity(const GaussianChannel& ch, const QubitState& psi) {
  return qubit_state_fidelity(FockTransfer(ch), psi);
}

struct FidelityReport {
  double average = 0.0;
  std::array<double, 6> per_state{};  // in cardinal_states() order
  GaussianChannel channel = GaussianChannel::identity();
  double kappa_tot = std::numeric_limits<double>::quiet_NaN();
};

/// Bloch-sphere average, exact via the six cardinal states.
inline FidelityReport qubit_avg_fidelity(const GaussianChannel& ch,
                                         double kappa_tot = std::numeric_limits<double>::quiet_NaN()) {
  const FockTransfer e(ch);
  FidelityReport r;
  r.channel = ch;
  r.kappa_tot = kappa_tot;
  const auto states = cardinal_states();
  double sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    r.per_state[i] = qubit_state_fidelity(e, states[i]);
    sum += r.per_state[i];
  }
  r.average = sum / 6.0;
  return r;
}

/// 1 − F of optimal truncated four-pass storage and retrieval at large κ²_tot.
inline double asymptotic_error(double kappa_tot) {
  const double e = std::exp(1.0);
  return (8.0 * std::sqrt(e) - 4.0 * e) / 3.0 * std::exp(-0.5 * kappa_tot);
}

/// Average fidelity of the dual-rail qubit α|10⟩ + β|01⟩ with rail channels
/// ch_a and ch_b acting independently.
inline double dual_rail_fidelity(const GaussianChannel& ch_a, const GaussianChannel& ch_b) {
  const FockTransfer ea(ch_a), eb(ch_b);
  // logical 0 = |10⟩, logical 1 = |01⟩; rail occupations per logical index
  const int rail_a[2] = {1, 0};
  const int rail_b[2] = {0, 1};
  double sum = 0.0;
  for (const QubitState& s : cardinal_states()) {
    const Complex c[2] = {s.c0(), s.c1()};
    Complex f = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < 2; ++n) {
            const Complex amp = ea(rail_a[j], rail_a[k], rail_a[m], rail_a[n]) * eb(rail_b[j], rail_b[k], rail_b[m], rail_b[n]);
            f += std::conj(c[j]) * c[m] * std::conj(c[n]) * c[k] * amp;
          }
    sum += f.real();
  }
  return sum / 6.0;
}

/// Overlap of the channel output with the input coherent state of mean
/// quadratures d: e^{−½ δᵀΣ⁻¹δ}/√det Σ, Σ = V_out + I/2, δ = (M − I)d.
inline double coherent_state_fidelity(const GaussianChannel& ch, const Vec2& mean = Vec2::Zero()) {
  const Mat2 sigma = ch.output_covariance(0.5 * Mat2::Identity()) + 0.5 * Mat2::Identity();
  const Vec2 delta = (ch.M() - Mat2::Identity()) * mean;
  return std::exp(-0.5 * delta.dot(sigma.inverse() * delta)) / std::sqrt(sigma.determinant());
}

}  // namespace qmem

#endif  // QMEM_FIDELITY_HPP
