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

#ifndef QMEM_CLI_SCENARIOS_HPP
#define QMEM_CLI_SCENARIOS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qmem/cli/config.hpp"
#include "qmem/cli/csv.hpp"
#include "qmem/design.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/fidelity.hpp"
#include "qmem/lossmodel.hpp"
#include "qmem/optimize.hpp"
#include "qmem/oracle.hpp"
#include "qmem/parallel.hpp"
#include "qmem/protocols.hpp"

namespace qmem::cli {

inline const char* kVersion = "0.1.0";

struct RunContext {
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig2_curve", "fig2_table", "fig3_truncation", "scaling_alpha",
                                              "custom"};
  return names;
}

namespace detail {

inline std::vector<std::string> channel_header() { return {"M00", "M01", "M10", "M11", "N00", "N01", "N11"}; }

inline void append_channel(std::vector<std::string>& row, const GaussianChannel& ch) {
  row.push_back(num(ch.M()(0, 0)));
  row.push_back(num(ch.M()(0, 1)));
  row.push_back(num(ch.M()(1, 0)));
  row.push_back(num(ch.M()(1, 1)));
  row.push_back(num(ch.N()(0, 0)));
  row.push_back(num(ch.N()(0, 1)));
  row.push_back(num(ch.N()(1, 1)));
}

inline std::vector<std::string> with_channel(std::vector<std::string> head) {
  for (auto& h : channel_header()) head.push_back(h);
  return head;
}

inline FamilyGrid family_grid(const Config& c) {
  FamilyGrid g;
  const long long points = c.integer("run", "grid_points", static_cast<long long>(kDefaultGridPoints));
  const long long graded = c.integer("run", "graded_points", 400);
  if (points < 2 || graded < 0) {
    throw ConfigError("malformed config: grid_points must be >= 2 and graded_points >= 0");
  }
  g.points = static_cast<std::size_t>(points);
  g.graded_points = static_cast<std::size_t>(graded);
  return g;
}

inline void check_run_section(const Config& c) {
  c.check_keys("run", {"scenario", "output", "grid_points", "graded_points"});
}

/// Runs `fn` for each item in parallel and appends the rows in input order.
template <typename Item, typename Fn>
void fill(CsvTable& table, const std::vector<Item>& items, const RunContext& ctx, Fn&& fn) {
  auto rows = parallel_map<std::vector<std::string>>(items.size(), ctx.jobs,
                                                     [&](std::size_t i) { return fn(items[i]); });
  for (auto& r : rows) table.add_row(std::move(r));
}

inline double checked_squeezing(double eps) {
  if (!(eps >= 1.0)) throw ConfigError("malformed config: squeezing factors must be >= 1");
  return eps;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CsvTable fig2_curve(const Config& c, const RunContext& ctx) {
  c.check_keys("fig2_curve", {"protocols", "kappa_tot", "epsilons", "storage_kappa2_12", "storage_kappa2_14"});
  const FamilyGrid g = detail::family_grid(c);
  const auto protocols = c.words("fig2_curve", "protocols", {"4+4", "1+2", "1+4"});
  const auto kappas = c.values("fig2_curve", "kappa_tot", parse_values("0.5:12:47", "kappa_tot"));
  const auto epsilons = c.values("fig2_curve", "epsilons", {1.0});
  const double s12 = c.number("fig2_curve", "storage_kappa2_12", 2.0);
  const double s14 = c.number("fig2_curve", "storage_kappa2_14", 1.0);

  struct Point {
    std::string protocol;
    double eps;
    double kappa;
  };
  std::vector<Point> points;
  for (const auto& p : protocols) {
    if (p != "4+4" && p != "1+2" && p != "1+4") throw ConfigError("malformed config: unknown protocol '" + p + "'");
    for (double e : (p == "4+4" ? std::vector<double>{1.0} : epsilons)) {
      detail::checked_squeezing(e);
      for (double k : kappas) {
        const double storage = p == "1+2" ? s12 : s14;
        if (p != "4+4" && k < storage) continue;  // below the storage stage alone
        points.push_back({p, e, k});
      }
    }
  }
  CsvTable t("fig2_curve", detail::with_channel({"protocol", "epsilon", "kappa_tot", "F"}));
  detail::fill(t, points, ctx, [&](const Point& pt) {
    ProtocolSpec spec = pt.protocol == "4+4"   ? four_four_constant(pt.kappa, g)
                        : pt.protocol == "1+2" ? one_two_constant((pt.kappa - s12) / 2.0, pt.eps, s12, g)
                                               : one_four_constant(s14, (pt.kappa - s14) / 4.0, pt.eps, g);
    const FidelityReport r = evaluate_protocol(spec);
    std::vector<std::string> row{pt.protocol, num(pt.eps), num(r.kappa_tot), num(r.average)};
    detail::append_channel(row, r.channel);
    return row;
  });
  return t;
}

/// Optimized "1+2" (storage κ² fixed) and "1+4" (storage κ² free) rows.
inline OptimizeResult optimize_table_point(const std::string& protocol, double eps, double storage_12,
                                           const FamilyGrid& g, std::size_t jobs) {
  OptimizeOptions opt;
  opt.jobs = jobs;
  if (protocol == "1+2") {
    Family fam = [&](std::span<const double> p) { return evaluate_protocol(one_two_constant(p[0], eps, storage_12, g)); };
    return optimize_fidelity(fam, {{"retrieval_k2", 0.05, 3.0, 60}}, opt);
  }
  Family fam = [&](std::span<const double> p) { return evaluate_protocol(one_four_constant(p[0], p[1], eps, g)); };
  return optimize_fidelity(fam, {{"storage_kappa2", 0.2, 3.0, 15}, {"retrieval_k2", 0.05, 2.0, 40}}, opt);
}

inline CsvTable fig2_table(const Config& c, const RunContext& ctx) {
  c.check_keys("fig2_table", {"protocols", "epsilons", "storage_kappa2_12"});
  const FamilyGrid g = detail::family_grid(c);
  const auto protocols = c.words("fig2_table", "protocols", {"1+2", "1+4"});
  const auto epsilons = c.values("fig2_table", "epsilons", {1.0, 2.0, 4.0, 6.0});
  const double s12 = c.number("fig2_table", "storage_kappa2_12", 2.0);
  CsvTable t("fig2_table", {"protocol", "epsilon", "F_opt", "kappa_tot_opt", "storage_kappa2", "retrieval_k2"});
  for (const auto& p : protocols) {
    if (p != "1+2" && p != "1+4") throw ConfigError("malformed config: unknown table protocol '" + p + "'");
    for (double e : epsilons) {
      detail::checked_squeezing(e);
      const OptimizeResult r = optimize_table_point(p, e, s12, g, ctx.jobs);
      const double storage = p == "1+2" ? s12 : r.params[0];
      const double k2 = p == "1+2" ? r.params[0] : r.params[1];
      t.add_row({p, num(e), num(r.report.average), num(r.report.kappa_tot), num(storage), num(k2)});
    }
  }
  return t;
}

inline CsvTable fig3_truncation(const Config& c, const RunContext& ctx) {
  c.check_keys("fig3_truncation", {"phi", "epsilons", "a"});
  const FamilyGrid g = detail::family_grid(c);
  const auto phis = c.values("fig3_truncation", "phi", parse_values("1:1000:31:log", "phi"));
  const auto epsilons = c.values("fig3_truncation", "epsilons", {1.0, 4.0});
  const double a = c.number("fig3_truncation", "a", 1.0);
  for (double phi : phis) {
    if (!(phi > 0.0)) throw ConfigError("malformed config: truncation levels must be > 0");
  }
  struct Point {
    bool four;
    double eps;
    double phi;
  };
  std::vector<Point> points;
  for (double phi : phis) points.push_back({true, 1.0, phi});
  for (double e : epsilons) {
    detail::checked_squeezing(e);
    for (double phi : phis) points.push_back({false, e, phi});
  }
  CsvTable t("fig3_truncation",
             detail::with_channel({"protocol", "epsilon", "phi", "kappa_tot", "F", "deficit", "asymptotic_deficit"}));
  detail::fill(t, points, ctx, [&](const Point& pt) {
    const ProtocolSpec spec = pt.four ? four_four_optimal(pt.phi, g) : one_two_profile_a(pt.phi, a, pt.eps, g);
    const FidelityReport r = evaluate_protocol(spec);
    const double asym = pt.four ? asymptotic_error(r.kappa_tot) : std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> row{pt.four ? "4+4" : "1+2", num(pt.eps), num(pt.phi), num(r.kappa_tot),
                                 num(r.average),           num(1.0 - r.average), num(asym)};
    detail::append_channel(row, r.channel);
    return row;
  });
  return t;
}

inline CsvTable scaling_alpha(const Config& c, const RunContext&) {
  c.check_keys("scaling_alpha", {"alpha", "prefactor_interaction", "prefactor_emission"});
  const auto alphas = c.values("scaling_alpha", "alpha", parse_values("3:1e6:26:log", "alpha"));
  LossPrefactors pre;
  pre.interaction = c.number("scaling_alpha", "prefactor_interaction", 1.0);
  pre.emission = c.number("scaling_alpha", "prefactor_emission", 1.0);
  CsvTable t("scaling_alpha",
             {"alpha", "eta_opt", "error_opt", "eta_numeric", "error_numeric", "error_alpha_over_log_alpha"});
  for (double alpha : alphas) {
    if (!(alpha > 1.0)) throw ConfigError("malformed config: optical depths must exceed 1");
    const LossOptimum exact = optimal_eta(alpha);
    const LossOptimum numeric = optimal_eta_numeric(alpha, pre);
    t.add_row({num(alpha), num(exact.eta), num(exact.error), num(numeric.eta), num(numeric.error),
               num(numeric.error * alpha / std::log(alpha))});
  }
  return t;
}

// ---------------------------------------------------------------------------

inline StageKind parse_kind(const std::string& s) {
  if (s == "qnd_single_pass_feedback") return StageKind::qnd_single_pass_feedback;
  if (s == "two_pass") return StageKind::two_pass;
  if (s == "four_pass") return StageKind::four_pass;
  throw ConfigError("malformed config: unknown stage kind '" + s + "'");
}

inline Stage custom_stage(const Config& c, Direction role, const FamilyGrid& g) {
  const std::string pre = role == Direction::storage ? "storage_" : "retrieval_";
  const StageKind kind = parse_kind(c.get("custom", pre + "kind", "four_pass"));
  const std::string shape = c.get("custom", pre + "shape", "constant");
  const double phi = c.number("custom", pre + "truncation", std::numeric_limits<double>::infinity());
  const Stage base{kind, role, zero_profile(uniform_grid(1.0, 2))};
  std::optional<double> trunc;
  if (std::isfinite(phi)) trunc = phi;
  const Cluster cluster = role == Direction::storage ? Cluster::start : Cluster::end;
  auto graded = [&](double crossover) {
    return graded_grid(1.0, g.points, g.graded_points, std::min(1e-3, 0.05 * crossover), cluster);
  };
  CouplingProfile profile = base.profile;
  if (shape == "constant") {
    profile = constant_profile(uniform_grid(1.0, g.points), c.number("custom", pre + "kappa2", 0.0));
  } else if (shape == "zero") {
    profile = zero_profile(uniform_grid(1.0, g.points));
  } else if (shape == "optimal") {
    const double C = c.number("custom", pre + "regularization", 0.0);
    const Grid grid = trunc ? graded(1.0 / (4.0 * *trunc * *trunc)) : uniform_grid(1.0, g.points);
    profile = solve_profile(ModeFunction::flat(grid), role, C, trunc);
  } else if (shape == "beamsplitter") {
    profile = beamsplitter_profile(uniform_grid(1.0, g.points));
  } else if (shape == "retrieval_a") {
    const double a = c.number("custom", pre + "a", 1.0);
    if (!trunc) throw ConfigError("malformed config: retrieval_a needs " + pre + "truncation");
    profile = retrieval_profile_a(graded(a / (2.0 * *trunc * *trunc)), a, trunc);
  } else {
    throw ConfigError("malformed config: unknown profile shape '" + shape + "'");
  }
  if (trunc && shape != "optimal" && shape != "retrieval_a") profile = truncate_profile(profile, *trunc);
  Stage s{kind, role, profile, detail::checked_squeezing(c.number("custom", pre + "squeezing", 1.0))};
  if (c.has("custom", pre + "gain")) s.feedback_gain = c.number("custom", pre + "gain", 0.0);
  return s;
}

inline ProtocolSpec custom_spec(const Config& c, const FamilyGrid& g) {
  static const char* const keys[] = {"kind", "shape", "kappa2", "truncation", "squeezing", "gain", "regularization", "a"};
  std::set<std::string> allowed{"name"};
  for (const char* role : {"storage_", "retrieval_"}) {
    for (const char* k : keys) allowed.insert(std::string(role) + k);
  }
  c.check_keys("custom", allowed);
  return {c.get("custom", "name", "custom"),
          {custom_stage(c, Direction::storage, g), custom_stage(c, Direction::retrieval, g)}};
}

inline CsvTable custom(const Config& c, const RunContext&) {
  const FamilyGrid g = detail::family_grid(c);
  ProtocolSpec spec;
  try {
    spec = custom_spec(c, g);
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  const FidelityReport r = evaluate_protocol(spec);
  std::vector<std::string> head{"name", "kappa_tot", "F"};
  for (int i = 0; i < 6; ++i) head.push_back("F_state" + std::to_string(i));
  CsvTable t("custom", detail::with_channel(head));
  std::vector<std::string> row{spec.name, num(r.kappa_tot), num(r.average)};
  for (double f : r.per_state) row.push_back(num(f));
  detail::append_channel(row, r.channel);
  t.add_row(std::move(row));
  return t;
}

inline CsvTable run_scenario(const Config& c, const RunContext& ctx) {
  detail::check_run_section(c);
  const std::string scenario = c.require("run", "scenario");
  if (scenario == "fig2_curve") return fig2_curve(c, ctx);
  if (scenario == "fig2_table") return fig2_table(c, ctx);
  if (scenario == "fig3_truncation") return fig3_truncation(c, ctx);
  if (scenario == "scaling_alpha") return scaling_alpha(c, ctx);
  if (scenario == "custom") return custom(c, ctx);
  throw UnknownScenarioError(scenario);
}

}  // namespace qmem::cli

#endif  // QMEM_CLI_SCENARIOS_HPP
