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

#ifndef QMEM_CLI_VALIDATE_HPP
#define QMEM_CLI_VALIDATE_HPP

// Invariant suite behind `qmem validate`: commutator preservation, oracle
// convergence, closed-form fidelity and sampling cross-checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "qmem/cli/csv.hpp"
#include "qmem/cli/scenarios.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/fidelity.hpp"
#include "qmem/oracle.hpp"

namespace qmem::cli {

/// Smooth positive profile κ̃(t) = A (1 + b sin(2π ν t + θ)) on `grid`.
inline CouplingProfile random_profile(std::mt19937_64& rng, const Grid& grid) {
  std::uniform_real_distribution<double> amp(0.1, 1.5), mod(0.0, 0.9), freq(0.0, 3.0), phase(0.0, 6.283185307179586);
  const double A = amp(rng), b = mod(rng), nu = freq(rng), th = phase(rng);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = A * (1.0 + b * std::sin(6.283185307179586 * nu * grid[i] / grid.back() + th));
  }
  return CouplingProfile(grid, std::move(v));
}

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

inline std::vector<Check> validation_checks(const RunContext& ctx) {
  std::vector<Check> out;
  std::mt19937_64 rng(ctx.seed);

  {
    double worst = 0.0;
    const Grid grid = uniform_grid(1.0, 101);
    for (int i = 0; i < 100; ++i) {
      const CouplingProfile p = random_profile(rng, grid);
      for (PassConfig cfg : {PassConfig::two_pass, PassConfig::four_pass}) {
        worst = std::max(worst, symplectic_error(InputOutputKernels(cfg, p).induced_map().dense()));
      }
    }
    out.push_back({"kernel_map_symplectic", worst, 1e-9, worst <= 1e-9});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const CouplingProfile p = random_profile(rng, uniform_grid(1.0, 201));
      for (const auto& seq : {two_pass_sequence(), four_pass_sequence()}) {
        worst = std::max(worst, symplectic_error(run_segments(p, seq, 100).map.dense()));
      }
    }
    out.push_back({"oracle_map_symplectic", worst, 1e-9 * 100, worst <= 1e-9 * 100});
  }
  for (const auto& [label, seq, k2] : {std::tuple{"oracle_order_two_pass", two_pass_sequence(), 1.0},
                                       std::tuple{"oracle_order_four_pass", four_pass_sequence(), 0.6}}) {
    const ConvergenceResult r = convergence_order(constant_profile(uniform_grid(1.0, 2), k2), seq, {500, 1000, 2000, 4000});
    out.push_back({label, r.order, 0.2, std::abs(r.order - 1.0) <= 0.2});
    out.push_back({std::string(label) + "_error_4000", r.errors.back(), 1e-3, r.errors.back() <= 1e-3});
  }
  {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      const double f = qubit_avg_fidelity(GaussianChannel::pure_loss(t)).average;
      worst = std::max(worst, std::abs(f - (0.5 + t / 3.0 + t * t / 6.0)));
    }
    out.push_back({"pure_loss_fidelity", worst, 1e-10, worst <= 1e-10});
  }
  {
    double worst = std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> k2(0.0, 2.0), eps(1.0, 6.0);
    for (int i = 0; i < 20; ++i) {
      Stage s{StageKind::four_pass, Direction::storage, random_profile(rng, uniform_grid(1.0, 401))};
      Stage r{StageKind::two_pass, Direction::retrieval, constant_profile(uniform_grid(1.0, 401), k2(rng)), eps(rng)};
      if (i % 2) s = Stage{StageKind::qnd_single_pass_feedback, Direction::storage, s.profile, eps(rng)};
      const GaussianChannel ch = effective_channel(ProtocolSpec{"random", {s, r}});
      worst = std::min(worst, ch.margin());
    }
    out.push_back({"effective_channel_cp_margin", worst, -1e-9, worst >= -1e-9});
  }
  {
    const GaussianChannel ch = rotate_output(
        channel_compose(GaussianChannel::pure_loss(0.8), GaussianChannel::amplifier(1.1)), 0.3);
    const FockTransfer e(ch);
    std::normal_distribution<double> gauss;
    const int samples = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const QubitState psi = QubitState::normalized({gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)});
      const double f = qubit_state_fidelity(e, psi);
      sum += f;
      sum2 += f * f;
    }
    const double mean = sum / samples;
    const double sigma = std::sqrt((sum2 / samples - mean * mean) / samples);
    const double dev = std::abs(mean - qubit_avg_fidelity(ch).average);
    out.push_back({"haar_sampling_vs_cardinal", dev, 3.0 * sigma, dev <= 3.0 * sigma});
  }
  return out;
}

inline CsvTable validation_table(const std::vector<Check>& checks) {
  CsvTable t("validate", {"check", "value", "limit", "status"});
  for (const Check& c : checks) t.add_row({c.name, num(c.value), num(c.limit), c.pass ? "pass" : "FAIL"});
  return t;
}

}  // namespace qmem::cli

#endif  // QMEM_CLI_VALIDATE_HPP
