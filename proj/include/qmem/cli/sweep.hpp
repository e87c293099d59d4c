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

#ifndef QMEM_CLI_SWEEP_HPP
#define QMEM_CLI_SWEEP_HPP

// Cross-product parameter sweeps, configured in the [sweep] section:
//
//   [sweep]
//   family = 4+4_constant
//   kappa_tot = 1:12:12
//   max_points = 100000
//
// Every parameter of the family may be a list or range; an empty value gives
// an empty sweep (header-only CSV).

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "qmem/cli/config.hpp"
#include "qmem/cli/csv.hpp"
#include "qmem/cli/scenarios.hpp"
#include "qmem/oracle.hpp"
#include "qmem/protocols.hpp"

namespace qmem::cli {

struct SweepParam {
  std::string name;
  std::vector<double> defaults;
};

inline const std::vector<SweepParam>& sweep_params(const std::string& family) {
  static const std::vector<SweepParam> four_const{{"kappa_tot", {4.8}}};
  static const std::vector<SweepParam> one_two{{"k2", {1.0}}, {"epsilon", {1.0}}, {"storage_kappa2", {2.0}}};
  static const std::vector<SweepParam> one_four{{"storage_kappa2", {1.0}}, {"k2", {0.6}}, {"epsilon", {1.0}}};
  static const std::vector<SweepParam> four_opt{{"phi", {10.0}}};
  static const std::vector<SweepParam> one_two_a{{"phi", {100.0}}, {"a", {1.0}}, {"epsilon", {1.0}}};
  static const std::vector<SweepParam> oracle{{"passes", {2.0}}, {"kappa2", {1.0}}, {"segments", {500, 1000, 2000, 4000}}};
  if (family == "4+4_constant") return four_const;
  if (family == "1+2_constant") return one_two;
  if (family == "1+4_constant") return one_four;
  if (family == "4+4_optimal") return four_opt;
  if (family == "1+2_profile_a") return one_two_a;
  if (family == "oracle") return oracle;
  throw ConfigError("malformed config: unknown sweep family '" + family + "'");
}

inline ProtocolSpec sweep_spec(const std::string& family, const std::vector<double>& p, const FamilyGrid& g) {
  if (family == "4+4_constant") return four_four_constant(p[0], g);
  if (family == "1+2_constant") return one_two_constant(p[0], p[1], p[2], g);
  if (family == "1+4_constant") return one_four_constant(p[0], p[1], p[2], g);
  if (family == "4+4_optimal") return four_four_optimal(p[0], g);
  return one_two_profile_a(p[0], p[1], p[2], g);
}

inline CsvTable run_sweep(const Config& c, const RunContext& ctx) {
  detail::check_run_section(c);
  const std::string family = c.require("sweep", "family");
  const auto& params = sweep_params(family);
  std::set<std::string> allowed{"family", "max_points"};
  for (const auto& sp : params) allowed.insert(sp.name);
  c.check_keys("sweep", allowed);
  const FamilyGrid g = detail::family_grid(c);
  const long long cap = c.integer("sweep", "max_points", 100000);

  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const auto& sp : params) {
    axes.push_back(c.values("sweep", sp.name, sp.defaults));
    total *= axes.back().size();
    if (cap >= 0 && total > static_cast<std::size_t>(cap)) {
      throw ConfigError("sweep has more than " + std::to_string(cap) + " points (max_points)");
    }
  }
  std::vector<std::vector<double>> points;
  points.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> p(axes.size());
    std::size_t rest = flat;
    // last parameter varies fastest
    for (std::size_t d = axes.size(); d-- > 0;) {
      p[d] = axes[d][rest % axes[d].size()];
      rest /= axes[d].size();
    }
    points.push_back(std::move(p));
  }

  std::vector<std::string> head{"family"};
  for (const auto& sp : params) head.push_back(sp.name);
  if (family == "oracle") {
    head.push_back("max_abs_error");
    head.push_back("error_times_segments");
    CsvTable t("sweep", head);
    for (const auto& p : points) {
      if (p[0] != 2.0 && p[0] != 4.0) throw ConfigError("malformed config: oracle passes must be 2 or 4");
      if (!(p[1] >= 0.0) || !(p[2] >= 1.0) || p[2] != std::floor(p[2])) {
        throw ConfigError("malformed config: oracle kappa2 must be >= 0 and segments a positive integer");
      }
    }
    detail::fill(t, points, ctx, [&](const std::vector<double>& p) {
      const auto passes = p[0] == 2.0 ? two_pass_sequence() : four_pass_sequence();
      const CouplingProfile prof = constant_profile(uniform_grid(1.0, 2), p[1]);
      const double err = oracle_discrepancy(prof, passes, static_cast<std::size_t>(p[2]));
      std::vector<std::string> row{family};
      for (double v : p) row.push_back(num(v));
      row.push_back(num(err));
      row.push_back(num(err * p[2]));
      return row;
    });
    return t;
  }
  head.push_back("kappa_tot");
  head.push_back("F");
  CsvTable t("sweep", detail::with_channel(head));
  detail::fill(t, points, ctx, [&](const std::vector<double>& p) {
    ProtocolSpec spec;
    try {
      spec = sweep_spec(family, p, g);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
    const FidelityReport r = evaluate_protocol(spec);
    std::vector<std::string> row{family};
    for (double v : p) row.push_back(num(v));
    row.push_back(num(r.kappa_tot));
    row.push_back(num(r.average));
    detail::append_channel(row, r.channel);
    return row;
  });
  return t;
}

}  // namespace qmem::cli

#endif  // QMEM_CLI_SWEEP_HPP
