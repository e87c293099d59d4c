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

#ifndef QMEM_OPTIMIZE_HPP
#define QMEM_OPTIMIZE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmem/fidelity.hpp"
#include "qmem/parallel.hpp"

namespace qmem {

/// Closed interval sampled at `points` equally spaced values (one point: lo).
struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 1;

  double at(std::size_t i) const {
    return points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  double step() const { return points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0; }
};

/// Protocol family: parameter values → fidelity of the generated protocol.
using Family = std::function<FidelityReport(std::span<const double>)>;

struct OptimizeOptions {
  std::size_t jobs = 1;
  int refine_rounds = 2;          // cyclic golden-section passes, 0 for grid only
  double tolerance = 1e-5;        // bracket width relative to the grid step
  std::size_t max_grid = 1000000;
};

struct OptimizeResult {
  std::vector<double> params;
  FidelityReport report;
  std::size_t evaluations = 0;
};

/// Grid search over the cross product of `ranges`, then golden-section
/// refinement of each coordinate in turn within one grid step of the best
/// point. Deterministic for fixed ranges and options.
inline OptimizeResult optimize_fidelity(const Family& family, const std::vector<ParamRange>& ranges,
                                        const OptimizeOptions& opt = {}) {
  if (ranges.empty() || ranges.size() > 3) {
    throw std::invalid_argument("optimize_fidelity: need 1 to 3 parameters");
  }
  std::size_t total = 1;
  for (const ParamRange& r : ranges) {
    if (r.points == 0 || !(r.hi >= r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
      throw std::invalid_argument("optimize_fidelity: empty or invalid range for '" + r.name + "'");
    }
    total *= r.points;
  }
  if (total > opt.max_grid) {
    throw std::invalid_argument("optimize_fidelity: grid of " + std::to_string(total) + " points exceeds the cap");
  }
  auto point = [&ranges](std::size_t flat) {
    std::vector<double> p(ranges.size());
    for (std::size_t d = 0; d < ranges.size(); ++d) {
      p[d] = ranges[d].at(flat % ranges[d].points);
      flat /= ranges[d].points;
    }
    return p;
  };
  const std::vector<FidelityReport> grid = parallel_map<FidelityReport>(
      total, opt.jobs, [&](std::size_t i) { return family(point(i)); });
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (grid[i].average > grid[best_i].average) best_i = i;
  }
  OptimizeResult res{point(best_i), grid[best_i], total};

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int round = 0; round < opt.refine_rounds; ++round) {
    for (std::size_t d = 0; d < ranges.size(); ++d) {
      const ParamRange& r = ranges[d];
      if (r.points < 2) continue;
      double a = std::max(r.lo, res.params[d] - r.step());
      double b = std::min(r.hi, res.params[d] + r.step());
      std::vector<double> p = res.params;
      auto eval = [&](double x) {
        p[d] = x;
        ++res.evaluations;
        return family(p);
      };
      double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
      FidelityReport f1 = eval(x1), f2 = eval(x2);
      while (b - a > opt.tolerance * r.step()) {
        if (f1.average >= f2.average) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = eval(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = eval(x2);
        }
      }
      const bool first = f1.average >= f2.average;
      const FidelityReport& cand = first ? f1 : f2;
      if (cand.average > res.report.average) {
        res.params[d] = first ? x1 : x2;
        res.report = cand;
      }
    }
  }
  return res;
}

}  // namespace qmem

#endif  // QMEM_OPTIMIZE_HPP
