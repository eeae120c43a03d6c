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

// Acceptance gate: six checks, one [PASS]/[FAIL] line each, nonzero exit on
// any failure. Tolerance bands are pinned here on purpose; loosening them is
// a deliberate act, not a config tweak.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vne/grid.hpp"
#include "vne/rng.hpp"
#include "vne/scenario.hpp"
#include "vne/simulator.hpp"
#include "support/brute_force.hpp"

namespace vne {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double value, int precision = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, value);
  return buffer;
}

const SimulationSummary* summary_of(const ScenarioResult& result, EmbedderMode mode,
                                    std::uint64_t seed) {
  for (const RunRecord& run : result.runs) {
    if (run.mode == mode && run.seed == seed) return &run.summary;
  }
  return nullptr;
}

// Criterion 1: the scripted 5x5 walkthrough resolves exactly as published.
Outcome criterion_fig1() {
  const auto start = Clock::now();
  const ScenarioResult result = run_scenario(preset_config("fig1"));
  const SimulationSummary* sta = summary_of(result, EmbedderMode::kStaticKm, 1);
  const SimulationSummary* dyn = summary_of(result, EmbedderMode::kDynamicKm, 1);
  const SimulationSummary* greedy =
      summary_of(result, EmbedderMode::kDynamicGreedy, 1);
  if (sta == nullptr || dyn == nullptr || greedy == nullptr) {
    return {false, "missing runs"};
  }
  const bool static_ok = sta->accepted_ids == std::vector<NetworkId>{1, 2} &&
                         sta->rejected_ids == std::vector<NetworkId>{3};
  const bool dynamic_ok = dyn->accepted_ids == std::vector<NetworkId>{1, 2, 3} &&
                          dyn->total_rejected == 0;
  const bool greedy_ok = greedy->accepted_ids == std::vector<NetworkId>{1, 2, 3} &&
                         greedy->total_rejected == 0;
  const double elapsed = seconds_since(start);
  const bool pass = static_ok && dynamic_ok && greedy_ok && elapsed < 1.0;
  return {pass, "static rejects C: " + std::string(static_ok ? "yes" : "NO") +
                    ", dynamic-km accepts all: " + (dynamic_ok ? "yes" : "NO") +
                    ", dynamic-greedy accepts all: " + (greedy_ok ? "yes" : "NO") +
                    ", " + fmt(elapsed) + "s"};
}

// Criterion 2: paired dynamic-vs-static improvements on paper-default.
Outcome criterion_paper_default(const ScenarioResult& result, double elapsed) {
  double reduction_sum = 0.0;
  double gain_sum = 0.0;
  double greedy_minus_dynamic = 0.0;
  int seeds = 0;
  for (const std::uint64_t seed : result.config.seeds) {
    const SimulationSummary* sta = summary_of(result, EmbedderMode::kStaticKm, seed);
    const SimulationSummary* dyn = summary_of(result, EmbedderMode::kDynamicKm, seed);
    const SimulationSummary* greedy =
        summary_of(result, EmbedderMode::kDynamicGreedy, seed);
    if (sta == nullptr || dyn == nullptr || greedy == nullptr ||
        !sta->mean_rejection.has_value() || !dyn->mean_rejection.has_value() ||
        !greedy->mean_rejection.has_value() || *sta->mean_rejection <= 0.0 ||
        sta->mean_revenue <= 0.0) {
      return {false, "seed " + std::to_string(seed) + " lacks usable rates"};
    }
    reduction_sum += 1.0 - *dyn->mean_rejection / *sta->mean_rejection;
    gain_sum += dyn->mean_revenue / sta->mean_revenue - 1.0;
    greedy_minus_dynamic += *greedy->mean_rejection - *dyn->mean_rejection;
    ++seeds;
  }
  const double reduction = reduction_sum / seeds;
  const double gain = gain_sum / seeds;
  const double greedy_gap = greedy_minus_dynamic / seeds;
  const bool reduction_ok = reduction >= 0.45 && reduction <= 0.80;
  const bool gain_ok = gain >= 0.02 && gain <= 0.12;
  const bool greedy_ok = greedy_gap <= 1e-12;
  const bool pass = reduction_ok && gain_ok && greedy_ok && elapsed < 300.0;
  return {pass, "rejection reduction " + fmt(reduction * 100, 1) +
                    "% (want 45..80), revenue gain " + fmt(gain * 100, 1) +
                    "% (want 2..12), greedy-vs-dynamic rejection " +
                    fmt(greedy_gap, 4) + " (want <= 0), " + fmt(elapsed, 1) + "s"};
}

struct ScenarioMeans {
  double rejection = 0.0;
  double revenue = 0.0;
  std::vector<double> priority_rejection;  // service-weighted, index p-1
  bool valid = false;
};

ScenarioMeans scenario_means(const ScenarioResult& result, int levels) {
  ScenarioMeans means;
  means.priority_rejection.assign(static_cast<std::size_t>(levels), 0.0);
  std::vector<double> rejected(static_cast<std::size_t>(levels), 0.0);
  std::vector<double> resolved(static_cast<std::size_t>(levels), 0.0);
  int runs = 0;
  for (const RunRecord& run : result.runs) {
    if (!run.summary.mean_rejection.has_value()) return means;
    means.rejection += *run.summary.mean_rejection;
    means.revenue += run.summary.mean_revenue;
    ++runs;
    for (int p = 1; p <= levels; ++p) {
      const auto& slice = run.summary.per_priority[static_cast<std::size_t>(p - 1)];
      rejected[static_cast<std::size_t>(p - 1)] += slice.rejected_service;
      resolved[static_cast<std::size_t>(p - 1)] += slice.resolved_service;
    }
  }
  if (runs == 0) return means;
  means.rejection /= runs;
  means.revenue /= runs;
  for (int p = 0; p < levels; ++p) {
    if (resolved[static_cast<std::size_t>(p)] <= 0.0) return means;
    means.priority_rejection[static_cast<std::size_t>(p)] =
        rejected[static_cast<std::size_t>(p)] / resolved[static_cast<std::size_t>(p)];
  }
  means.valid = true;
  return means;
}

// Criterion 3: the large-request scenario degrades against paper-default as
// published, and hits priority 1 hardest.
Outcome criterion_large_requests(const ScenarioResult& paper_default) {
  const ScenarioResult large = run_scenario(preset_config("paper-large-requests"));
  const ScenarioMeans base = scenario_means(paper_default, 3);
  const ScenarioMeans big = scenario_means(large, 3);
  if (!base.valid || !big.valid || base.rejection <= 0.0 || base.revenue <= 0.0) {
    return {false, "aggregate rates unavailable"};
  }
  const double rejection_ratio = big.rejection / base.rejection;
  const double revenue_drop = 1.0 - big.revenue / base.revenue;
  std::vector<double> factors;
  for (int p = 0; p < 3; ++p) {
    const double b = base.priority_rejection[static_cast<std::size_t>(p)];
    if (b <= 0.0) return {false, "priority " + std::to_string(p + 1) + " base rate 0"};
    factors.push_back(big.priority_rejection[static_cast<std::size_t>(p)] / b);
  }
  const bool ratio_ok = rejection_ratio >= 1.3 && rejection_ratio <= 2.2;
  const bool revenue_ok = revenue_drop >= 0.06 && revenue_drop <= 0.20;
  const bool priority_ok = factors[0] > factors[1] && factors[0] > factors[2];
  const bool pass = ratio_ok && revenue_ok && priority_ok;
  return {pass, "rejection ratio " + fmt(rejection_ratio, 2) +
                    "x (want 1.3..2.2), revenue drop " + fmt(revenue_drop * 100, 1) +
                    "% (want 6..20), priority factors " + fmt(factors[0], 2) + "/" +
                    fmt(factors[1], 2) + "/" + fmt(factors[2], 2) +
                    " (want first largest)"};
}

// Criterion 4: heuristics never beat the exact oracle and every solution
// passes the independent feasibility checker.
Outcome criterion_oracle() {
  const auto start = Clock::now();
  OracleCheckConfig config;
  config.instances = 200;
  config.dims = {6, 6};
  config.seed = 1;
  config.max_requests = 4;
  config.priority_levels = 2;
  const OracleCheckReport report = run_oracle_check(config);
  const double elapsed = seconds_since(start);
  const bool pass = report.violations == 0 && report.instances == 200 &&
                    elapsed < 120.0;
  std::string detail = std::to_string(report.instances) + " instances, " +
                       std::to_string(report.violations) + " violations, " +
                       fmt(elapsed, 1) + "s";
  if (!report.messages.empty()) detail += "; first: " + report.messages.front();
  return {pass, detail};
}

// Criterion 5: the grid engine agrees with brute force on random grids.
Outcome criterion_grid_properties() {
  const auto start = Clock::now();
  RandomStream rng(4242, 0);
  int cases = 0;
  int failures = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const SubstrateDims dims{rng.uniform_int(1, 6), rng.uniform_int(1, 6)};
    const OccupancyGrid grid = testing::random_grid(rng, dims, 3);
    ++cases;

    if (grid.find_vacant_regions(1, 1) !=
        testing::brute_force_maximal_regions(grid, 1, 1)) {
      ++failures;
    }
    if (grid.edi() != testing::brute_force_edi(grid)) ++failures;

    // Transpose / mirror symmetry.
    OccupancyGrid transposed({dims.time, dims.freq});
    OccupancyGrid mirrored(dims);
    for (const Placement& p : grid.placements()) {
      transposed.place({p.network_id, p.origin_t, p.origin_f, p.span_t, p.span_f});
      mirrored.place({p.network_id, dims.freq - p.origin_f - p.span_f, p.origin_t,
                      p.span_f, p.span_t});
    }
    if (transposed.edi() != grid.edi() || mirrored.edi() != grid.edi()) ++failures;

    // Round-trip and overlap rejection on a random vacant rectangle.
    const auto regions = grid.find_vacant_regions(1, 1);
    if (!regions.empty()) {
      const VacantRegion r = regions[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(regions.size()) - 1))];
      const Placement p = best_corner(grid, r, rng.uniform_int(1, r.span_f),
                                      rng.uniform_int(1, r.span_t), 999);
      OccupancyGrid copy = grid;
      copy.place(p);
      bool threw = false;
      try {
        copy.place({1000, p.origin_f, p.origin_t, 1, 1});
      } catch (const OverlapError&) {
        threw = true;
      }
      if (!threw) ++failures;
      copy.remove(999);
      if (!(copy == grid)) ++failures;
    }

    // Corner-vs-interior strict inequality where an interior copy exists.
    if (dims.freq >= 3 && dims.time >= 3) {
      const int sf = rng.uniform_int(1, dims.freq - 2);
      const int st = rng.uniform_int(1, dims.time - 2);
      OccupancyGrid corner(dims);
      corner.place({1, 0, 0, sf, st});
      OccupancyGrid interior(dims);
      interior.place({1, 1, 1, sf, st});
      if (!(corner.edi() < interior.edi())) ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = failures == 0 && cases >= 1000 && elapsed < 60.0;
  return {pass, std::to_string(cases) + " cases, " + std::to_string(failures) +
                    " failures, " + fmt(elapsed, 1) + "s"};
}

std::string read_bytes(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Criterion 6: identical seeds reproduce every output file byte for byte.
Outcome criterion_determinism(const ScenarioResult& first) {
  const fs::path scratch = fs::temp_directory_path() / "vne_sim_acceptance";
  const fs::path dir_a = scratch / "run_a";
  const fs::path dir_b = scratch / "run_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  write_scenario_outputs(first, std::nullopt, dir_a);
  const ScenarioResult second = run_scenario(preset_config("paper-default"));
  write_scenario_outputs(second, std::nullopt, dir_b);

  std::set<std::string> names_a;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    if (entry.is_regular_file()) names_a.insert(entry.path().filename().string());
  }
  std::set<std::string> names_b;
  for (const auto& entry : fs::directory_iterator(dir_b)) {
    if (entry.is_regular_file()) names_b.insert(entry.path().filename().string());
  }
  if (names_a != names_b || names_a.empty()) {
    return {false, "output file sets differ"};
  }
  int compared = 0;
  for (const std::string& name : names_a) {
    if (read_bytes(dir_a / name) != read_bytes(dir_b / name)) {
      return {false, name + " differs between runs"};
    }
    ++compared;
  }
  return {true, std::to_string(compared) + " files byte-identical"};
}

}  // namespace
}  // namespace vne

int main() {
  using namespace vne;
  int failures = 0;
  const auto report = [&failures](int number, const std::string& label,
                                  const Outcome& outcome) {
    std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                number, label.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  };

  try {
    report(1, "scripted walkthrough reproduction", criterion_fig1());

    const auto start2 = Clock::now();
    const ScenarioResult paper_default = run_scenario(preset_config("paper-default"));
    const double elapsed2 = seconds_since(start2);
    report(2, "paper-default dynamic-vs-static gains",
           criterion_paper_default(paper_default, elapsed2));
    report(3, "large-request degradation", criterion_large_requests(paper_default));
    report(4, "oracle dominance and feasibility", criterion_oracle());
    report(5, "grid-engine property suite", criterion_grid_properties());
    report(6, "byte-identical replication", criterion_determinism(paper_default));
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }

  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
