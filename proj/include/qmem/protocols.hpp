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

#ifndef QMEM_PROTOCOLS_HPP
#define QMEM_PROTOCOLS_HPP

// Parametrized protocol families. Stage durations are 1 and signal modes flat.
//   "4+4": four-pass storage, four-pass retrieval.
//   "1+2": single-pass storage with measurement and feedback, two-pass retrieval.
//   "1+4": single-pass storage with measurement and feedback, four-pass retrieval.
// κ²_tot is the storage κ² plus the pass-weighted retrieval integral.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "qmem/design.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/fidelity.hpp"
#include "qmem/grid.hpp"
#include "qmem/profile.hpp"
#include "qmem/protocol.hpp"

namespace qmem {

struct FamilyGrid {
  std::size_t points = kDefaultGridPoints;
  std::size_t graded_points = 400;  // geometric points near a truncated divergence
};

/// Constant coupling, k² = κ²_tot/8 per stage.
inline ProtocolSpec four_four_constant(double kappa_tot, const FamilyGrid& g = {}) {
  const Grid grid = uniform_grid(1.0, g.points);
  const double k2 = kappa_tot / 8.0;
  return {"4+4 constant",
          {Stage{StageKind::four_pass, Direction::storage, constant_profile(grid, k2)},
           Stage{StageKind::four_pass, Direction::retrieval, constant_profile(grid, k2)}}};
}

/// Mode-matched C = 0 profiles truncated at φ on both stages.
inline ProtocolSpec four_four_optimal(double phi, const FamilyGrid& g = {}) {
  const double crossover = 1.0 / (4.0 * phi * phi);
  const double min_step = std::min(1e-3, 0.05 * crossover);
  const Grid gs = graded_grid(1.0, g.points, g.graded_points, min_step, Cluster::start);
  const Grid gr = graded_grid(1.0, g.points, g.graded_points, min_step, Cluster::end);
  return {"4+4 optimal",
          {Stage{StageKind::four_pass, Direction::storage,
                 solve_profile(ModeFunction::flat(gs), Direction::storage, 0.0, phi)},
           Stage{StageKind::four_pass, Direction::retrieval,
                 solve_profile(ModeFunction::flat(gr), Direction::retrieval, 0.0, phi)}}};
}

/// Storage κ² fixed (2 by default), constant two-pass retrieval with ∫κ̃² = k².
/// ε squeezes the atomic x_A and the x quadrature of the retrieval light's
/// target mode.
inline ProtocolSpec one_two_constant(double k2, double squeezing = 1.0, double storage_kappa2 = 2.0,
                                     const FamilyGrid& g = {}) {
  const Grid grid = uniform_grid(1.0, g.points);
  return {"1+2 constant",
          {Stage{StageKind::qnd_single_pass_feedback, Direction::storage, constant_profile(grid, storage_kappa2),
                 squeezing},
           Stage{StageKind::two_pass, Direction::retrieval, constant_profile(grid, k2), squeezing}}};
}

/// Storage κ² free, constant four-pass retrieval with ∫κ̃² = k²; ε squeezes
/// the atomic x_A only.
inline ProtocolSpec one_four_constant(double storage_kappa2, double k2, double squeezing = 1.0,
                                      const FamilyGrid& g = {}) {
  const Grid grid = uniform_grid(1.0, g.points);
  return {"1+4 constant",
          {Stage{StageKind::qnd_single_pass_feedback, Direction::storage, constant_profile(grid, storage_kappa2),
                 squeezing},
           Stage{StageKind::four_pass, Direction::retrieval, constant_profile(grid, k2)}}};
}

/// Storage κ² = 2 and two-pass retrieval √(a/(2T − 2t)) truncated at φ.
inline ProtocolSpec one_two_profile_a(double phi, double a = 1.0, double squeezing = 1.0, const FamilyGrid& g = {}) {
  const double crossover = a / (2.0 * phi * phi);  // time before T where the profile reaches φ
  const double min_step = std::min(1e-3, 0.05 * crossover);
  const Grid gr = graded_grid(1.0, g.points, g.graded_points, min_step, Cluster::end);
  const Grid gs = uniform_grid(1.0, g.points);
  return {"1+2 profile-a",
          {Stage{StageKind::qnd_single_pass_feedback, Direction::storage, constant_profile(gs, 2.0), squeezing},
           Stage{StageKind::two_pass, Direction::retrieval, retrieval_profile_a(gr, a, phi), squeezing}}};
}

/// Flat-mode fidelity report of a protocol.
inline FidelityReport evaluate_protocol(const ProtocolSpec& spec) {
  return qubit_avg_fidelity(effective_channel(spec), kappa_tot(spec));
}

}  // namespace qmem

#endif  // QMEM_PROTOCOLS_HPP
