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
#include <sstream>

#include "qmem/cli/scenarios.hpp"
#include "qmem/cli/sweep.hpp"
#include "qmem/cli/validate.hpp"

using namespace qmem;
using namespace qmem::cli;

namespace {

std::string render(const CsvTable& t) {
  std::ostringstream out;
  t.write(out);
  return out.str();
}

std::size_t column(const CsvTable& t, const std::string& name) {
  const auto& h = t.header();
  return static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin());
}

double cell(const CsvTable& t, std::size_t row, const std::string& name) {
  return std::stod(t.rows().at(row).at(column(t, name)));
}

}  // namespace

TEST(ParseValues, Forms) {
  EXPECT_EQ(parse_values("1, 2.5,3", "x"), (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_EQ(parse_values("0:1:5", "x"), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto lg = parse_values("1:100:3:log", "x");
  ASSERT_EQ(lg.size(), 3u);
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_TRUE(parse_values("  ", "x").empty());
  EXPECT_EQ(parse_values("2:2:1", "x"), (std::vector<double>{2.0}));
  EXPECT_TRUE(std::isinf(parse_values("inf", "x")[0]));
}

TEST(ParseValues, Malformed) {
  EXPECT_THROW(parse_values("1,,2", "x"), ConfigError);
  EXPECT_THROW(parse_values("abc", "x"), ConfigError);
  EXPECT_THROW(parse_values("1:2", "x"), ConfigError);
  EXPECT_THROW(parse_values("2:1:3", "x"), ConfigError);
  EXPECT_THROW(parse_values("0:1:3:log", "x"), ConfigError);
  EXPECT_THROW(parse_values("0:1:3:lin", "x"), ConfigError);
  EXPECT_THROW(parse_values("nan", "x"), ConfigError);
  EXPECT_THROW(parse_int("3.5", "x"), ConfigError);
}

TEST(Config, ReadsSectionsAndDefaults) {
  const Config c = Config::from_string("[run]\nscenario = custom\ngrid_points = 300\n[a]\nlist = 1,2\nnames = x, y\n");
  EXPECT_TRUE(c.has_section("a"));
  EXPECT_FALSE(c.has_section("b"));
  EXPECT_EQ(c.require("run", "scenario"), "custom");
  EXPECT_EQ(c.integer("run", "grid_points", 0), 300);
  EXPECT_EQ(c.integer("run", "graded_points", 17), 17);
  EXPECT_EQ(c.number("a", "missing", 2.5), 2.5);
  EXPECT_EQ(c.values("a", "list", {}), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(c.words("a", "names", {}), (std::vector<std::string>{"x", "y"}));
  EXPECT_THROW(c.require("run", "output_dir"), ConfigError);
  EXPECT_THROW(c.number("run", "scenario", 0.0), ConfigError);
  EXPECT_NO_THROW(c.check_keys("a", {"list", "names"}));
  EXPECT_THROW(c.check_keys("a", {"list"}), ConfigError);
}

TEST(Config, MalformedTextIsReported) {
  try {
    Config::from_string("[run\nscenario = x\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed config"), std::string::npos);
  }
  EXPECT_THROW(Config::from_file("/nonexistent/qmem.ini"), ConfigError);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-HUGE_VAL), "-inf");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(Csv, WidthCheckedAndWritten) {
  CsvTable t("t", {"a", "b"});
  t.add_row({"1", "2"});
  EXPECT_THROW(t.add_row({"1"}), std::logic_error);
  EXPECT_EQ(render(t), "a,b\n1,2\n");
  EXPECT_THROW(t.write_file("/proc/qmem_no_such_dir/out.csv"), OutputPathError);
}

TEST(Scenarios, UnknownScenario) {
  const Config c = Config::from_string("[run]\nscenario = fig9\n");
  try {
    run_scenario(c, {});
    FAIL() << "expected UnknownScenarioError";
  } catch (const UnknownScenarioError& e) {
    EXPECT_EQ(std::string(e.what()), "unknown scenario 'fig9'");
  }
  EXPECT_THROW(run_scenario(Config::from_string("[run]\nscenario = custom\ntypo = 1\n"), {}), ConfigError);
}

TEST(Scenarios, CustomZeroCouplingIsVacuum) {
  const Config c = Config::from_string(
      "[run]\nscenario = custom\ngrid_points = 100\n[custom]\nstorage_kind = four_pass\nstorage_shape = zero\n"
      "retrieval_kind = two_pass\nretrieval_shape = zero\n");
  const CsvTable t = run_scenario(c, {});
  ASSERT_EQ(t.rows().size(), 1u);
  EXPECT_NEAR(cell(t, 0, "F"), 0.5, 1e-12);
  EXPECT_NEAR(cell(t, 0, "N00"), 0.5, 1e-12);
  EXPECT_NEAR(cell(t, 0, "kappa_tot"), 0.0, 0.0);
}

TEST(Scenarios, CustomConstantMatchesLibrary) {
  const Config c = Config::from_string(
      "[run]\nscenario = custom\ngrid_points = 400\n[custom]\nstorage_kind = four_pass\nstorage_shape = constant\n"
      "storage_kappa2 = 0.6\nretrieval_kind = four_pass\nretrieval_shape = constant\nretrieval_kappa2 = 0.6\n");
  const CsvTable t = run_scenario(c, {});
  FamilyGrid g;
  g.points = 400;
  const FidelityReport r = evaluate_protocol(four_four_constant(4.8, g));
  EXPECT_NEAR(cell(t, 0, "F"), r.average, 1e-9);
  EXPECT_NEAR(cell(t, 0, "kappa_tot"), 4.8, 1e-9);
}

TEST(Scenarios, CustomRejectsBadStages) {
  const std::string head = "[run]\nscenario = custom\n[custom]\n";
  EXPECT_THROW(run_scenario(Config::from_string(head + "storage_kind = six_pass\nstorage_shape = zero\n"
                                                       "retrieval_kind = two_pass\nretrieval_shape = zero\n"),
                            {}),
               ConfigError);
  EXPECT_THROW(run_scenario(Config::from_string(head + "storage_kind = two_pass\nstorage_shape = zero\n"
                                                       "retrieval_kind = two_pass\nretrieval_shape = zero\n"
                                                       "retrieval_squeezing = 0.5\n"),
                            {}),
               ConfigError);
  EXPECT_THROW(run_scenario(Config::from_string(head + "storage_kind = two_pass\nstorage_shape = optimal\n"
                                                       "retrieval_kind = two_pass\nretrieval_shape = zero\n"),
                            {}),
               ConfigError);
}

TEST(Scenarios, ScalingAlphaColumns) {
  const CsvTable t = run_scenario(Config::from_string("[run]\nscenario = scaling_alpha\n[scaling_alpha]\nalpha = 10, 1e4\n"), {});
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_NEAR(cell(t, 0, "eta_opt"), std::log(10.0) / 10.0, 1e-9);
  EXPECT_NEAR(cell(t, 1, "error_numeric"), cell(t, 1, "error_opt"), 1e-9);
  EXPECT_THROW(run_scenario(Config::from_string("[run]\nscenario = scaling_alpha\n[scaling_alpha]\nalpha = 0.5\n"), {}),
               ConfigError);
}

TEST(Scenarios, Fig2CurvePeakAndOrder) {
  const Config c = Config::from_string(
      "[run]\nscenario = fig2_curve\ngrid_points = 400\n[fig2_curve]\nprotocols = 4+4\nkappa_tot = 3, 5, 8\n");
  const CsvTable t = run_scenario(c, {2, 0});
  ASSERT_EQ(t.rows().size(), 3u);
  EXPECT_EQ(t.rows()[0][0], "4+4");
  EXPECT_GT(cell(t, 1, "F"), cell(t, 0, "F"));
  EXPECT_GT(cell(t, 1, "F"), cell(t, 2, "F"));
}

TEST(Scenarios, Fig3TruncationDeficitFalls) {
  const Config c = Config::from_string(
      "[run]\nscenario = fig3_truncation\n[fig3_truncation]\nphi = 5, 50\nepsilons = 1\n");
  const CsvTable t = run_scenario(c, {});
  ASSERT_EQ(t.rows().size(), 4u);
  EXPECT_GT(cell(t, 0, "deficit"), cell(t, 1, "deficit"));
  // the 1+2 deficit saturates at a squeezing-dependent floor and need not be monotone
  EXPECT_GT(cell(t, 3, "deficit"), 0.0);
  EXPECT_LT(cell(t, 3, "deficit"), 0.5);
  EXPECT_EQ(t.rows()[2][column(t, "asymptotic_deficit")], "nan");
}

TEST(Scenarios, ParallelOutputIsIdentical) {
  const Config c = Config::from_string(
      "[run]\nscenario = fig2_curve\ngrid_points = 300\n[fig2_curve]\nprotocols = 4+4, 1+2\nkappa_tot = 3:7:5\n");
  EXPECT_EQ(render(run_scenario(c, {1, 0})), render(run_scenario(c, {3, 0})));
}

TEST(Sweep, GridOrderingAndCap) {
  const Config c = Config::from_string(
      "[run]\ngrid_points = 200\n[sweep]\nfamily = 1+2_constant\nk2 = 0.5, 1\nepsilon = 1, 2, 4\n");
  const CsvTable t = run_sweep(c, {});
  ASSERT_EQ(t.rows().size(), 6u);
  // last parameter fastest
  EXPECT_EQ(t.rows()[0][column(t, "epsilon")], "1");
  EXPECT_EQ(t.rows()[1][column(t, "epsilon")], "2");
  EXPECT_EQ(t.rows()[3][column(t, "k2")], "1");
  EXPECT_THROW(run_sweep(Config::from_string("[sweep]\nfamily = 4+4_constant\nkappa_tot = 1:2:11\nmax_points = 10\n"), {}),
               ConfigError);
  EXPECT_THROW(run_sweep(Config::from_string("[sweep]\nfamily = 9+9\n"), {}), ConfigError);
  EXPECT_THROW(run_sweep(Config::from_string("[sweep]\nfamily = 4+4_constant\nphi = 3\n"), {}), ConfigError);
}

TEST(Sweep, EmptyListGivesHeaderOnly) {
  const CsvTable t = run_sweep(Config::from_string("[sweep]\nfamily = 4+4_constant\nkappa_tot =\n"), {});
  EXPECT_TRUE(t.rows().empty());
  const std::string text = render(t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(Sweep, OracleFamilyFirstOrder) {
  const CsvTable t = run_sweep(
      Config::from_string("[sweep]\nfamily = oracle\npasses = 2\nkappa2 = 1\nsegments = 250, 500, 1000\n"), {});
  ASSERT_EQ(t.rows().size(), 3u);
  const double a = cell(t, 0, "error_times_segments"), b = cell(t, 2, "error_times_segments");
  EXPECT_NEAR(b / a, 1.0, 0.05);
  EXPECT_THROW(run_sweep(Config::from_string("[sweep]\nfamily = oracle\npasses = 3\n"), {}), ConfigError);
}

TEST(Validate, AllChecksPass) {
  RunContext ctx;
  ctx.seed = 7;
  for (const Check& chk : validation_checks(ctx)) {
    EXPECT_TRUE(chk.pass) << chk.name << " value " << chk.value << " limit " << chk.limit;
  }
}
