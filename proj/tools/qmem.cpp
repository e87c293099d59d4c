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

// qmem: scenario runner.
//
//   qmem run      --config run.ini   --out DIR
//   qmem sweep    --config sweep.ini --out DIR
//   qmem validate [--config run.ini] --out DIR --seed N
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant failure.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "qmem/cli/config.hpp"
#include "qmem/cli/csv.hpp"
#include "qmem/cli/scenarios.hpp"
#include "qmem/cli/sweep.hpp"
#include "qmem/cli/validate.hpp"
#include "qmem/errors.hpp"

namespace fs = std::filesystem;
using namespace qmem;
using namespace qmem::cli;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

fs::path prepare_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw OutputPathError(out);
  return fs::path(out);
}

void write_manifest(const fs::path& dir, const std::string& command, const std::string& scenario,
                    const std::string& config_text, const RunContext& ctx, double seconds,
                    const std::string& output) {
  nlohmann::ordered_json j;
  j["tool"] = "qmem";
  j["version"] = kVersion;
  j["command"] = command;
  j["scenario"] = scenario;
  j["config_sha256"] = sha256_hex(config_text);
  j["seed"] = ctx.seed;
  j["jobs"] = ctx.jobs;
  j["wall_time_s"] = seconds;
  j["outputs"] = nlohmann::json::array({output});
  const fs::path path = dir / "manifest.json";
  std::ofstream f(path);
  if (!f) throw OutputPathError(path.string());
  f << j.dump(2) << '\n';
  if (!f) throw OutputPathError(path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pass quantum memory simulator"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "INI configuration file");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for sampling validators");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* run = app.add_subcommand("run", "run the configured scenario");
  CLI::App* sweep = app.add_subcommand("sweep", "cross-product parameter sweep");
  CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
  add_common(run, true);
  add_common(sweep, true);
  add_common(validate, false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const RunContext ctx{jobs, seed};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Config config = config_path.empty() ? Config::from_string("") : Config::from_file(config_path);
    const fs::path dir = prepare_out_dir(out_dir);
    std::string command, scenario, file;
    int status = 0;
    if (run->parsed()) {
      command = "run";
      scenario = config.require("run", "scenario");
      const CsvTable table = run_scenario(config, ctx);
      file = config.get("run", "output", scenario + ".csv");
      table.write_file((dir / file).string());
    } else if (sweep->parsed()) {
      command = "sweep";
      scenario = config.require("sweep", "family");
      const CsvTable table = run_sweep(config, ctx);
      file = config.get("run", "output", "sweep.csv");
      table.write_file((dir / file).string());
    } else {
      command = "validate";
      scenario = "validate";
      const auto checks = validation_checks(ctx);
      const CsvTable table = validation_table(checks);
      table.write(std::cout);
      file = "validate.csv";
      table.write_file((dir / file).string());
      for (const auto& c : checks) {
        if (!c.pass) status = kNumericalError;
      }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir, command, scenario, config.text(), ctx, seconds, file);
    if (status) std::cerr << "qmem: invariant check failed\n";
    return status;
  } catch (const UnknownScenarioError& e) {
    std::cerr << "qmem: " << e.what() << " (known: fig2_curve, fig2_table, fig3_truncation, scaling_alpha, custom)\n";
    return kConfigError;
  } catch (const OutputPathError& e) {
    std::cerr << "qmem: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "qmem: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "qmem: numerical invariant violated: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qmem: invalid parameter: " << e.what() << '\n';
    return kConfigError;
  }
}
