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

#ifndef VNE_SCENARIO_HPP
#define VNE_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vne/embedders.hpp"
#include "vne/simulator.hpp"
#include "vne/traffic.hpp"

namespace vne {

// Fully resolved description of one experiment. Mirrors the config file
// schema; see apply_config_stream for the key list.
struct ScenarioConfig {
  std::string name = "custom";
  SubstrateDims dims{12, 12};
  double lambda = 3.0;
  double mu = 10.0;
  int priority_levels = 3;
  int f_min = 1, f_max = 3;
  int td_min = 1, td_max = 3;
  int horizon = 1000;
  std::vector<double> costs{0.5, 0.3, 0.2};
  std::vector<int> max_delays{1, 2, 3};
  std::vector<EmbedderMode> modes{EmbedderMode::kStaticKm, EmbedderMode::kDynamicKm,
                                  EmbedderMode::kDynamicGreedy};
  // Master seeds, one replication each. Left empty until resolve_seeds runs.
  std::vector<std::uint64_t> seeds;
  int combination_cap = kDefaultCombinationCap;
  // Workload source: a scripted in-memory trace (presets), a trace file, or
  // (default) generation from the traffic parameters above. Scripted sources
  // allow exactly one seed.
  std::optional<Trace> scripted;
  std::string scripted_name;  // echo label for the scripted trace
  std::optional<std::filesystem::path> trace_file;
  // Name of a preset whose aggregates the report compares against.
  std::optional<std::string> compare_with;

  TrafficConfig traffic(std::uint64_t seed) const;
  void validate() const;  // throws ConfigError
};

// Built-in presets: "paper-default", "paper-large-requests", "fig1".
// Throws ConfigError for unknown names.
ScenarioConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Applies `key = value` lines over the config. '#' starts a comment, blank
// lines are skipped, unknown keys raise ConfigError. The first costs.* /
// delays.* key replaces the whole inherited list, so shorter priority tables
// need no explicit clearing.
void apply_config_stream(ScenarioConfig& config, std::istream& in,
                         const std::string& origin);
void apply_config_file(ScenarioConfig& config, const std::filesystem::path& file);

// Seed fallback chain: keep explicit seeds; otherwise use the VNE_SIM_SEED
// value when given; otherwise seeds 1..20.
void resolve_seeds(ScenarioConfig& config, const std::optional<std::string>& env_seed);

// Parses comma-separated flag values. Throw ConfigError on bad tokens.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<EmbedderMode> parse_mode_list(const std::string& text);

struct RunRecord {
  EmbedderMode mode;
  std::uint64_t seed;
  SimulationSummary summary;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RunRecord> runs;  // mode-major: config.modes x config.seeds
};

// Runs every (mode, seed) pair over the shared per-seed workload.
ScenarioResult run_scenario(const ScenarioConfig& config);

// Config echo lines ("# key = value") embedded at the top of every output
// file. Mode and seed lines are appended when given.
std::vector<std::string> config_echo(const ScenarioConfig& config,
                                     const std::optional<EmbedderMode>& mode,
                                     const std::optional<std::uint64_t>& seed);

// Writes slots_<mode>_seed<seed>.csv per run plus replication.csv and
// report.txt under out_dir. All files use LF endings and deterministic
// formatting; re-running an identical scenario reproduces them byte for byte.
void write_scenario_outputs(const ScenarioResult& result,
                            const std::optional<ScenarioResult>& baseline,
                            const std::filesystem::path& out_dir);

// The textual comparison report: per-mode aggregates with standard errors,
// seed-paired dynamic-vs-static differences, the per-priority rejection
// table, admission lists for tiny scripted runs and, when a baseline is
// given, scenario-level ratios against it.
std::string format_report(const ScenarioResult& result,
                          const std::optional<ScenarioResult>& baseline);

// Runs the scenario, runs its compare_with preset when configured, writes all
// outputs. Returns the report text.
std::string run_and_write(const ScenarioConfig& config,
                          const std::filesystem::path& out_dir);

// Reads slots_<mode>_seed<seed>.csv files under in_dir and writes per-mode
// running-mean series to in_dir/plot/<metric>_<mode>.dat (metrics: revenue,
// rejection_rate), seed-averaged per slot. Throws ConfigError when no input
// files are found.
void emit_plot_data(const std::filesystem::path& in_dir);

struct OracleCheckConfig {
  int instances = 200;
  SubstrateDims dims{6, 6};
  std::uint64_t seed = 1;
  int max_requests = 4;
  int priority_levels = 2;

  void validate() const;  // enforces the exhaustive-solving limits
};

struct OracleCheckReport {
  int instances = 0;
  int violations = 0;
  std::vector<std::string> messages;  // first violations, for diagnosis
  // Mean heuristic/optimal revenue ratios over instances with optimum > 0.
  double mean_ratio_static_km = 1.0;
  double mean_ratio_dynamic_km = 1.0;
  double mean_ratio_dynamic_greedy = 1.0;
  long rated_instances = 0;
};

// Random single-slot instances: heuristic revenue must not exceed the exact
// optimum and every result must pass the independent feasibility checker.
OracleCheckReport run_oracle_check(const OracleCheckConfig& config);

std::string format_oracle_report(const OracleCheckConfig& config,
                                 const OracleCheckReport& report);

}  // namespace vne

#endif  // VNE_SCENARIO_HPP
