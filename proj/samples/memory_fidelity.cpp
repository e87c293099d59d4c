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

// Stores and retrieves a flat-mode photonic qubit with four-pass constant
// coupling and with truncated mode-matched profiles, and prints the average
// fidelities.

#include <cmath>
#include <cstdio>

#include "qmem/qmem.hpp"

int main() {
  using namespace qmem;
  for (double kappa_tot : {2.0, 4.8, 8.0}) {
    const FidelityReport r = evaluate_protocol(four_four_constant(kappa_tot));
    std::printf("4+4 constant  kappa_tot=%5.2f  F=%.4f\n", r.kappa_tot, r.average);
  }
  for (double kappa_tot : {8.0, 12.0}) {
    const FidelityReport r = evaluate_protocol(four_four_optimal(four_four_truncation_for(kappa_tot)));
    std::printf("4+4 optimal   kappa_tot=%5.2f  F=%.6f  (asymptote %.6f)\n", r.kappa_tot, r.average,
                1.0 - asymptotic_error(r.kappa_tot));
  }
  const CouplingProfile bs = beamsplitter_profile(uniform_grid(1.0, 2000));
  const InputOutputKernels k = four_pass_kernels(bs);
  const GaussianChannel stored =
      stage_channel(Stage{StageKind::four_pass, Direction::storage, bs}, ModeFunction::flat(bs.grid()));
  std::printf("beam-splitter profile: atomic survival %.6f, light-to-atom gain %.6f\n", k.decay_x(k.size() - 1),
              std::sqrt(std::abs(stored.M().determinant())));
  return 0;
}
