// Copyright 2026 The vne-sim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vne/errors.hpp"
#include "vne/scenario.hpp"

namespace {

std::optional<std::string> env_seed() {
  const char* value = std::getenv("VNE_SIM_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

vne::SubstrateDims parse_dims(const std::string& text) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size()) {
    throw vne::ConfigError("expected dims as FxT, got '" + text + "'");
  }
  try {
    return vne::SubstrateDims{std::stoi(text.substr(0, x)),
                              std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw vne::ConfigError("expected dims as FxT, got '" + text + "'");
  }
}

int run_command(const std::string& config_file, const std::string& preset,
                const std::string& seeds_text, const std::string& modes_text,
                const std::string& out_dir) {
  vne::ScenarioConfig config;
  if (!preset.empty()) {
    config = vne::preset_config(preset);
  }
  if (!config_file.empty()) {
    vne::apply_config_file(config, config_file);
  }
  if (preset.empty() && config_file.empty()) {
    throw vne::ConfigError("provide --config and/or --preset");
  }
  if (!seeds_text.empty()) config.seeds = vne::parse_seed_list(seeds_text);
  if (!modes_text.empty()) config.modes = vne::parse_mode_list(modes_text);
  vne::resolve_seeds(config, env_seed());
  config.validate();

  const std::string report = vne::run_and_write(config, out_dir);
  std::cout << report;
  std::cout << "outputs written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vne-sim: prioritized virtual network embedding on a "
               "frequency x time substrate"};
  app.require_subcommand(1);

  std::string config_file;
  std::string preset;
  std::string seeds_text;
  std::string modes_text;
  std::string out_dir = "out";
  CLI::App* run = app.add_subcommand("run", "Run a scenario, write CSVs and a report");
  run->add_option("--config", config_file, "Scenario config file (key = value lines)");
  run->add_option("--preset", preset,
                  "Built-in preset: paper-default, paper-large-requests, fig1");
  run->add_option("--seeds", seeds_text, "Comma-separated master seeds");
  run->add_option("--modes", modes_text,
                  "Comma-separated embedder modes, e.g. static-km,dynamic-km");
  run->add_option("--out", out_dir, "Output directory (default: out)");

  vne::OracleCheckConfig oracle_config;
  std::string dims_text;
  std::uint64_t oracle_seed = 0;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Check the heuristics against the exact optimizer");
  oracle->add_option("--instances", oracle_config.instances,
                     "Random instances to draw (default: 200)");
  oracle->add_option("--dims", dims_text, "Substrate as FxT, at most 6x6");
  oracle->add_option("--seed", oracle_seed, "Master seed (default: 1)");
  oracle->add_option("--max-requests", oracle_config.max_requests,
                     "Requests per instance, at most 6 (default: 4)");
  oracle->add_option("--levels", oracle_config.priority_levels,
                     "Priority levels, at most 3 (default: 2)");

  std::string in_dir;
  CLI::App* plot = app.add_subcommand(
      "plot-data", "Turn per-slot CSVs into running-mean series files");
  plot->add_option("--in", in_dir, "Directory holding slots_*.csv files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      return run_command(config_file, preset, seeds_text, modes_text, out_dir);
    }
    if (oracle->parsed()) {
      if (!dims_text.empty()) oracle_config.dims = parse_dims(dims_text);
      if (oracle->count("--seed") > 0) {
        oracle_config.seed = oracle_seed;
      } else if (const auto env = env_seed(); env.has_value()) {
        oracle_config.seed = vne::parse_seed_list(*env).front();
      } else {
        oracle_config.seed = 1;
      }
      const vne::OracleCheckReport report = vne::run_oracle_check(oracle_config);
      std::cout << vne::format_oracle_report(oracle_config, report);
      return report.violations > 0 ? 1 : 0;
    }
    if (plot->parsed()) {
      vne::emit_plot_data(in_dir);
      std::cout << "plot data written to " << (std::filesystem::path(in_dir) / "plot").string()
                << "\n";
      return 0;
    }
  } catch (const vne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const vne::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
