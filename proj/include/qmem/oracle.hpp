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

#ifndef QMEM_ORACLE_HPP
#define QMEM_ORACLE_HPP

// Coarse-grained segment simulation: the pulse is cut into N segments of
// duration τ, and each segment interacts with the atom through bilinear
// single-pass Hamiltonians of strength κ_τ = κ̃(t_i)√τ, one after the other.
//   PP (H ∝ p_A P_i):  x_A += κ_τ P_i,  X_i += κ_τ p_A
//   XX (H ∝ x_A X_i):  p_A −= κ_τ X_i,  P_i −= κ_τ x_A

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qmem/cascade.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/grid.hpp"
#include "qmem/profile.hpp"

namespace qmem {

enum class Pass { PP, XX };

inline std::vector<Pass> two_pass_sequence() { return {Pass::PP, Pass::XX}; }
inline std::vector<Pass> four_pass_sequence() { return {Pass::PP, Pass::XX, Pass::XX, Pass::PP}; }

/// Exact symplectic update of one pass on (x_A, p_A, X, P).
inline Mat4 pass_matrix(Pass pass, double kappa) {
  Mat4 m = Mat4::Identity();
  if (pass == Pass::PP) {
    m(0, 3) = kappa;
    m(2, 1) = kappa;
  } else {
    m(1, 2) = -kappa;
    m(3, 0) = -kappa;
  }
  return m;
}

struct SegmentRun {
  std::size_t segments = 0;
  double tau = 0.0;
  std::vector<double> kappa;  // κ_τ per segment
  std::vector<Pass> passes;
  CascadeMap map{{}};
};

/// Runs the segment model with κ̃ sampled at segment midpoints.
inline SegmentRun run_segments(const CouplingProfile& profile, const std::vector<Pass>& passes, std::size_t segments) {
  if (segments < 1) {
    throw std::invalid_argument("run_segments: need at least one segment");
  }
  if (passes.empty()) {
    throw std::invalid_argument("run_segments: empty pass sequence");
  }
  SegmentRun run;
  run.segments = segments;
  run.tau = profile.duration() / static_cast<double>(segments);
  run.passes = passes;
  run.kappa.resize(segments);
  std::vector<Mat4> steps(segments);
  const double root_tau = std::sqrt(run.tau);
  for (std::size_t i = 0; i < segments; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * run.tau;
    const double k = profile.evaluate(mid) * root_tau;
    run.kappa[i] = k;
    Mat4 s = Mat4::Identity();
    for (Pass p : passes) {
      s = pass_matrix(p, k) * s;
    }
    steps[i] = s;
  }
  run.map = CascadeMap(std::move(steps));
  return run;
}

/// Kernel-induced map of the same profile on the oracle's uniform bins.
inline CascadeMap kernel_map_on_segments(const CouplingProfile& profile, const std::vector<Pass>& passes,
                                         std::size_t segments) {
  PassConfig config;
  if (passes == two_pass_sequence()) {
    config = PassConfig::two_pass;
  } else if (passes == four_pass_sequence()) {
    config = PassConfig::four_pass;
  } else {
    throw std::invalid_argument("kernel_map_on_segments: no continuum kernels for this pass sequence");
  }
  const CouplingProfile on_bins = resample_profile(profile, uniform_grid(profile.duration(), segments + 1));
  return InputOutputKernels(config, on_bins).induced_map();
}

/// max-norm discrepancy between the segment oracle and the continuum kernels.
inline double oracle_discrepancy(const CouplingProfile& profile, const std::vector<Pass>& passes,
                                 std::size_t segments) {
  return max_abs_difference(run_segments(profile, passes, segments).map,
                            kernel_map_on_segments(profile, passes, segments));
}

struct ConvergenceResult {
  std::vector<std::size_t> segments;
  std::vector<double> errors;
  double order = std::numeric_limits<double>::quiet_NaN();  // NaN when all errors vanish
};

/// Empirical order p of error ∝ N^{−p}, least-squares over the sequence
/// of segment counts (each the double of the previous).
inline ConvergenceResult convergence_order(const CouplingProfile& profile, const std::vector<Pass>& passes,
                                           const std::vector<std::size_t>& segments) {
  if (segments.size() < 3) {
    throw std::invalid_argument("convergence_order: need at least three segment counts");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i] < 2 || (i > 0 && segments[i] != 2 * segments[i - 1])) {
      throw std::invalid_argument("convergence_order: segment counts must be >= 2 and doubling");
    }
  }
  ConvergenceResult out;
  out.segments = segments;
  for (std::size_t n : segments) {
    out.errors.push_back(oracle_discrepancy(profile, passes, n));
  }
  bool all_zero = true;
  for (double e : out.errors) {
    if (e != 0.0) all_zero = false;
  }
  if (all_zero) {
    return out;
  }
  for (std::size_t i = 1; i < out.errors.size(); ++i) {
    if (!(out.errors[i] < out.errors[i - 1])) {
      throw NumericalError("convergence_order: error sequence is not monotonically decreasing");
    }
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double x = std::log(static_cast<double>(segments[i]));
    const double y = std::log(out.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.order = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

}  // namespace qmem

#endif  // QMEM_ORACLE_HPP
