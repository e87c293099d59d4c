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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmem/design.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/oracle.hpp"

using namespace qmem;

TEST(Segments, SingleSegmentSinglePassIsQnd) {
  const SegmentRun r = run_segments(constant_profile(uniform_grid(1.0, 2), 1.0), {Pass::PP}, 1);
  const Mat4& s = r.map.steps().front();
  EXPECT_EQ(s(0, 3), 1.0);
  EXPECT_EQ(s(2, 1), 1.0);
  EXPECT_EQ(s(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(r.kappa.front(), 1.0);
}

TEST(Segments, MapIsSymplectic) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> k2(0.1, 3.0);
  for (int i = 0; i < 10; ++i) {
    const CouplingProfile p = constant_profile(uniform_grid(1.0, 2), k2(rng));
    for (const auto& seq : {two_pass_sequence(), four_pass_sequence()}) {
      const SegmentRun r = run_segments(p, seq, 150);
      EXPECT_LE(symplectic_error(r.map.dense()), 1e-9 * 150);
    }
  }
}

TEST(Segments, TwoPassAtomBlockMatchesKernels) {
  const CouplingProfile p = constant_profile(uniform_grid(1.0, 2), 1.0);
  const SegmentRun r = run_segments(p, two_pass_sequence(), 4000);
  const Mat2 a = r.map.atom_block();
  EXPECT_NEAR(a(0, 0), 1.0, 1e-3);
  EXPECT_NEAR(a(1, 1), std::exp(-1.0), 1e-3);
  EXPECT_LE(oracle_discrepancy(p, two_pass_sequence(), 4000), 1e-3);
}

TEST(Segments, FourPassDampingMatchesKernels) {
  const CouplingProfile p = constant_profile(uniform_grid(1.0, 2), 0.6);
  const SegmentRun r = run_segments(p, four_pass_sequence(), 4000);
  const Mat2 a = r.map.atom_block();
  EXPECT_NEAR(a(0, 0), std::exp(-1.2), 1e-3);
  EXPECT_NEAR(a(1, 1), std::exp(-1.2), 1e-3);
  EXPECT_LE(oracle_discrepancy(p, four_pass_sequence(), 4000), 1e-3);
}

TEST(Segments, FlatModeTransferMatchesQuadrature) {
  const std::size_t n = 4000;
  for (const auto& [seq, cfg] : {std::pair{two_pass_sequence(), PassConfig::two_pass},
                                 std::pair{four_pass_sequence(), PassConfig::four_pass}}) {
    const CouplingProfile p = constant_profile(uniform_grid(1.0, n + 1), 0.6);
    const SegmentRun r = run_segments(p, seq, n);
    // storage: atom quadratures at T as functionals of the flat input mode
    Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(double(n)));
    Mat2 m;
    for (int q = 0; q < 2; ++q) {
      CascadeMap::Functional out = r.map.zero_functional();
      out.atom(q) = 1.0;
      const CascadeMap::Functional in = r.map.pullback(out);
      m.row(q) = (in.light.transpose() * v).transpose();
    }
    // m = [[Re u+Re v, ...]]: recover |amplitude| and |conjugate| from the 2×2 real form
    const std::complex<double> amp(0.5 * (m(0, 0) + m(1, 1)), 0.5 * (m(1, 0) - m(0, 1)));
    const std::complex<double> conj(0.5 * (m(0, 0) - m(1, 1)), 0.5 * (m(1, 0) + m(0, 1)));
    const TransferAmplitude t = transfer_amplitude(InputOutputKernels(cfg, p), ModeFunction::flat(p.grid()),
                                                   Direction::storage);
    EXPECT_NEAR(std::abs(amp), std::abs(t.amplitude), 2e-3);
    EXPECT_NEAR(std::abs(conj), std::abs(t.conjugate), 2e-3);
  }
}

TEST(Convergence, FirstOrderForConstantProfiles) {
  const CouplingProfile p2 = constant_profile(uniform_grid(1.0, 2), 1.0);
  const ConvergenceResult two = convergence_order(p2, two_pass_sequence(), {250, 500, 1000, 2000});
  EXPECT_NEAR(two.order, 1.0, 0.2);
  const CouplingProfile p4 = constant_profile(uniform_grid(1.0, 2), 0.6);
  const ConvergenceResult four = convergence_order(p4, four_pass_sequence(), {250, 500, 1000, 2000});
  EXPECT_NEAR(four.order, 1.0, 0.2);
}

TEST(Convergence, HalvingStepHalvesDiscrepancy) {
  // smooth non-constant profile
  const Grid g = uniform_grid(1.0, 2001);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = 0.8 + 0.3 * std::cos(2.0 * g[i]);
  ProfileTag tag;
  const CouplingProfile p(g, v, tag);
  for (const auto& seq : {two_pass_sequence(), four_pass_sequence()}) {
    const ConvergenceResult r = convergence_order(p, seq, {200, 400, 800});
    for (std::size_t i = 1; i < r.errors.size(); ++i) {
      const double ratio = r.errors[i - 1] / r.errors[i];
      EXPECT_GE(ratio, 1.6);
      EXPECT_LE(ratio, 2.4);
    }
  }
}

TEST(Convergence, ZeroProfileHasZeroError) {
  const ConvergenceResult r = convergence_order(zero_profile(uniform_grid(1.0, 2)), two_pass_sequence(), {100, 200, 400});
  for (double e : r.errors) EXPECT_EQ(e, 0.0);
  EXPECT_TRUE(std::isnan(r.order));
}

TEST(Convergence, RejectsBadSequences) {
  const CouplingProfile p = constant_profile(uniform_grid(1.0, 2), 1.0);
  EXPECT_THROW(convergence_order(p, two_pass_sequence(), {100, 200}), std::invalid_argument);
  EXPECT_THROW(convergence_order(p, two_pass_sequence(), {100, 300, 900}), std::invalid_argument);
  EXPECT_THROW(convergence_order(p, {Pass::PP}, {100, 200, 400}), std::invalid_argument);
}

TEST(Convergence, TruncatedProfileSampledAtMidpoints) {
  // the divergent endpoint is never evaluated
  const Grid g = graded_grid(1.0, 500, 100, 1e-5, Cluster::start);
  const CouplingProfile p = solve_profile(ModeFunction::flat(g), Direction::storage, 0.0, 30.0);
  const SegmentRun r = run_segments(p, four_pass_sequence(), 1000);
  for (double k : r.kappa) EXPECT_TRUE(std::isfinite(k));
  EXPECT_LE(r.kappa.front(), 30.0 * std::sqrt(r.tau) + 1e-15);
}
