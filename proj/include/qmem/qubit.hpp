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

#ifndef QMEM_QUBIT_HPP
#define QMEM_QUBIT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qmem {

using Complex = std::complex<double>;

/// c₀|0⟩ + c₁|1⟩ on the zero/one photon subspace.
class QubitState {
 public:
  QubitState(Complex c0, Complex c1) : c_{c0, c1} {
    if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > 1e-12) {
      throw std::invalid_argument("qubit state is not normalized");
    }
  }

  static QubitState normalized(Complex c0, Complex c1) {
    const double n = std::sqrt(std::norm(c0) + std::norm(c1));
    if (!(n > 0.0)) {
      throw std::invalid_argument("qubit state has zero norm");
    }
    return {c0 / n, c1 / n};
  }

  Complex c0() const { return c_[0]; }
  Complex c1() const { return c_[1]; }
  Complex operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }

 private:
  std::array<Complex, 2> c_;
};

/// The six Pauli eigenstates, a projective 2-design on the Bloch sphere.
inline std::array<QubitState, 6> cardinal_states() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  return {QubitState(1.0, 0.0), QubitState(0.0, 1.0), QubitState(h, h),
          QubitState(h, -h),    QubitState(h, h * i), QubitState(h, -h * i)};
}

}  // namespace qmem

#endif  // QMEM_QUBIT_HPP
