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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vne/errors.hpp"
#include "vne/scenario.hpp"

namespace vne {

namespace {

std::string fmt_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string fmt_fixed(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, value);
  return buffer;
}

std::string fmt_percent(double fraction) { return fmt_fixed(fraction * 100.0, 2) + "%"; }

std::string join_u64(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_ids(const std::vector<NetworkId>& values) {
  if (values.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_modes(const std::vector<EmbedderMode>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(modes[i]);
  }
  return out;
}

// Mean and standard error of the mean; n <= 1 gives se 0.
struct Aggregate {
  double mean = 0.0;
  double se = 0.0;
  long n = 0;
};

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate agg;
  agg.n = static_cast<long>(values.size());
  if (agg.n == 0) return agg;
  double sum = 0.0;
  for (const double v : values) sum += v;
  agg.mean = sum / static_cast<double>(agg.n);
  if (agg.n >= 2) {
    double ss = 0.0;
    for (const double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.se = std::sqrt(ss / static_cast<double>(agg.n - 1)) /
             std::sqrt(static_cast<double>(agg.n));
  }
  return agg;
}

std::vector<const RunRecord*> runs_of_mode(const ScenarioResult& result,
                                           EmbedderMode mode) {
  std::vector<const RunRecord*> runs;
  for (const RunRecord& run : result.runs) {
    if (run.mode == mode) runs.push_back(&run);
  }
  return runs;
}

// Scenario-level means over every run, for cross-scenario ratios.
struct ScenarioLevel {
  std::optional<double> rejection;
  std::optional<double> revenue;
  std::vector<std::optional<double>> per_priority;
};

ScenarioLevel scenario_level(const ScenarioResult& result) {
  ScenarioLevel level;
  std::vector<double> rejections;
  std::vector<double> revenues;
  for (const RunRecord& run : result.runs) {
    revenues.push_back(run.summary.mean_revenue);
    if (run.summary.mean_rejection.has_value()) {
      rejections.push_back(*run.summary.mean_rejection);
    }
  }
  if (!rejections.empty()) level.rejection = aggregate(rejections).mean;
  if (!revenues.empty()) level.revenue = aggregate(revenues).mean;
  for (int p = 1; p <= result.config.priority_levels; ++p) {
    std::vector<double> values;
    for (const RunRecord& run : result.runs) {
      const auto r = run.summary.priority_rejection(p);
      if (r.has_value()) values.push_back(*r);
    }
    if (values.empty()) {
      level.per_priority.emplace_back(std::nullopt);
    } else {
      level.per_priority.emplace_back(aggregate(values).mean);
    }
  }
  return level;
}

void write_lines(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) {
    throw ConfigError("cannot write output file '" + file.string() + "'");
  }
  out << content;
  if (!out) {
    throw ConfigError("failed writing output file '" + file.string() + "'");
  }
}

}  // namespace

std::vector<std::string> config_echo(const ScenarioConfig& config,
                                     const std::optional<EmbedderMode>& mode,
                                     const std::optional<std::uint64_t>& seed) {
  std::vector<std::string> lines;
  lines.push_back("# vne-sim v1");
  lines.push_back("# scenario.name = " + config.name);
  lines.push_back("# substrate.F = " + std::to_string(config.dims.freq));
  lines.push_back("# substrate.T = " + std::to_string(config.dims.time));
  lines.push_back("# traffic.lambda = " + fmt_double(config.lambda));
  lines.push_back("# traffic.mu = " + fmt_double(config.mu));
  lines.push_back("# traffic.priority_levels = " + std::to_string(config.priority_levels));
  lines.push_back("# traffic.f_min = " + std::to_string(config.f_min));
  lines.push_back("# traffic.f_max = " + std::to_string(config.f_max));
  lines.push_back("# traffic.td_min = " + std::to_string(config.td_min));
  lines.push_back("# traffic.td_max = " + std::to_string(config.td_max));
  lines.push_back("# traffic.horizon = " + std::to_string(config.horizon));
  if (config.scripted.has_value()) {
    lines.push_back("# traffic.source = builtin:" + config.scripted_name);
  } else if (config.trace_file.has_value()) {
    lines.push_back("# traffic.source = file:" + config.trace_file->string());
  } else {
    lines.push_back("# traffic.source = generated");
  }
  for (std::size_t i = 0; i < config.costs.size(); ++i) {
    lines.push_back("# costs.p" + std::to_string(i + 1) + " = " +
                    fmt_double(config.costs[i]));
  }
  for (std::size_t i = 0; i < config.max_delays.size(); ++i) {
    lines.push_back("# delays.p" + std::to_string(i + 1) + " = " +
                    std::to_string(config.max_delays[i]));
  }
  lines.push_back("# run.modes = " + join_modes(config.modes));
  lines.push_back("# run.seeds = " + join_u64(config.seeds));
  lines.push_back("# run.combination_cap = " + std::to_string(config.combination_cap));
  if (config.compare_with.has_value()) {
    lines.push_back("# run.compare_with = " + *config.compare_with);
  }
  if (mode.has_value()) lines.push_back("# mode = " + to_string(*mode));
  if (seed.has_value()) lines.push_back("# seed = " + std::to_string(*seed));
  return lines;
}

void write_scenario_outputs(const ScenarioResult& result,
                            const std::optional<ScenarioResult>& baseline,
                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  for (const RunRecord& run : result.runs) {
    std::ostringstream csv;
    for (const std::string& line : config_echo(result.config, run.mode, run.seed)) {
      csv << line << "\n";
    }
    csv << "slot,revenue,rejection_rate,accepted,rejected,deferred,occupancy,"
           "reembed_failures\n";
    for (const TimeslotMetrics& m : run.summary.per_slot) {
      csv << m.slot << "," << fmt_double(m.revenue) << ",";
      if (m.rejection_rate.has_value()) csv << fmt_double(*m.rejection_rate);
      csv << "," << m.accepted << "," << m.rejected << "," << m.deferred << ","
          << fmt_double(m.occupancy) << "," << m.reembed_failures << "\n";
    }
    const std::string name =
        "slots_" + to_string(run.mode) + "_seed" + std::to_string(run.seed) + ".csv";
    write_lines(out_dir / name, csv.str());
  }

  std::ostringstream rep;
  for (const std::string& line : config_echo(result.config, std::nullopt, std::nullopt)) {
    rep << line << "\n";
  }
  rep << "mode,seed,mean_revenue,mean_rejection,total_arrivals,total_accepted,"
         "total_rejected,reembed_failures";
  for (int p = 1; p <= result.config.priority_levels; ++p) {
    rep << ",rejection_p" << p;
  }
  rep << "\n";
  for (const RunRecord& run : result.runs) {
    rep << to_string(run.mode) << "," << run.seed << ","
        << fmt_double(run.summary.mean_revenue) << ",";
    if (run.summary.mean_rejection.has_value()) {
      rep << fmt_double(*run.summary.mean_rejection);
    }
    rep << "," << run.summary.total_arrivals << "," << run.summary.total_accepted
        << "," << run.summary.total_rejected << "," << run.summary.reembed_failures;
    for (int p = 1; p <= result.config.priority_levels; ++p) {
      rep << ",";
      const auto r = run.summary.priority_rejection(p);
      if (r.has_value()) rep << fmt_double(*r);
    }
    rep << "\n";
  }
  write_lines(out_dir / "replication.csv", rep.str());

  write_lines(out_dir / "report.txt", format_report(result, baseline));
}

std::string format_report(const ScenarioResult& result,
                          const std::optional<ScenarioResult>& baseline) {
  std::ostringstream out;
  for (const std::string& line : config_echo(result.config, std::nullopt, std::nullopt)) {
    out << line << "\n";
  }
  out << "\n";

  const std::size_t seed_count = result.config.seeds.size();
  out << "scenario '" << result.config.name << "': " << result.config.modes.size()
      << " mode(s), " << seed_count << " seed(s), horizon "
      << result.config.horizon << "\n\n";

  out << "per-mode aggregates (mean over seeds +- standard error)\n";
  for (const EmbedderMode mode : result.config.modes) {
    const auto runs = runs_of_mode(result, mode);
    std::vector<double> revenues;
    std::vector<double> rejections;
    long accepted = 0;
    long rejected = 0;
    long reembed = 0;
    for (const RunRecord* run : runs) {
      revenues.push_back(run->summary.mean_revenue);
      if (run->summary.mean_rejection.has_value()) {
        rejections.push_back(*run->summary.mean_rejection);
      }
      accepted += run->summary.total_accepted;
      rejected += run->summary.total_rejected;
      reembed += run->summary.reembed_failures;
    }
    const Aggregate rev = aggregate(revenues);
    const Aggregate rej = aggregate(rejections);
    char line[256];
    std::snprintf(line, sizeof(line),
                  "  %-16s revenue %10.4f +- %-8.4f rejection %8.6f +- %-8.6f "
                  "accepted %ld rejected %ld reembed_failures %ld\n",
                  to_string(mode).c_str(), rev.mean, rev.se,
                  rej.n > 0 ? rej.mean : 0.0, rej.se, accepted, rejected, reembed);
    out << line;
  }
  out << "\n";

  // Seed-paired dynamic-vs-static differences. Both runs of a pair share the
  // same trace, so per-seed ratios compare like with like.
  const bool have_static =
      std::find(result.config.modes.begin(), result.config.modes.end(),
                EmbedderMode::kStaticKm) != result.config.modes.end();
  if (have_static && result.config.modes.size() > 1) {
    out << "paired against static-km (per seed, then averaged)\n";
    const auto static_runs = runs_of_mode(result, EmbedderMode::kStaticKm);
    for (const EmbedderMode mode : result.config.modes) {
      if (mode == EmbedderMode::kStaticKm) continue;
      const auto runs = runs_of_mode(result, mode);
      std::vector<double> rejection_reduction;
      std::vector<double> revenue_gain;
      for (std::size_t i = 0; i < runs.size() && i < static_runs.size(); ++i) {
        const SimulationSummary& dyn = runs[i]->summary;
        const SimulationSummary& sta = static_runs[i]->summary;
        if (dyn.mean_rejection.has_value() && sta.mean_rejection.has_value() &&
            *sta.mean_rejection > 0.0) {
          rejection_reduction.push_back(1.0 - *dyn.mean_rejection / *sta.mean_rejection);
        }
        if (sta.mean_revenue > 0.0) {
          revenue_gain.push_back(dyn.mean_revenue / sta.mean_revenue - 1.0);
        }
      }
      const Aggregate red = aggregate(rejection_reduction);
      const Aggregate gain = aggregate(revenue_gain);
      out << "  " << to_string(mode) << " vs static-km: rejection reduction ";
      if (red.n > 0) {
        out << fmt_percent(red.mean) << " +- " << fmt_percent(red.se) << " ("
            << red.n << " seeds)";
      } else {
        out << "n/a";
      }
      out << ", revenue gain ";
      if (gain.n > 0) {
        out << fmt_percent(gain.mean) << " +- " << fmt_percent(gain.se) << " ("
            << gain.n << " seeds)";
      } else {
        out << "n/a";
      }
      out << "\n";
    }
    out << "\n";
  }

  out << "per-priority rejection rate (mean over seeds)\n";
  out << "  mode             ";
  for (int p = 1; p <= result.config.priority_levels; ++p) {
    char head[16];
    std::snprintf(head, sizeof(head), " p%-10d", p);
    out << head;
  }
  out << "\n";
  for (const EmbedderMode mode : result.config.modes) {
    const auto runs = runs_of_mode(result, mode);
    char prefix[64];
    std::snprintf(prefix, sizeof(prefix), "  %-16s ", to_string(mode).c_str());
    out << prefix;
    for (int p = 1; p <= result.config.priority_levels; ++p) {
      std::vector<double> values;
      for (const RunRecord* run : runs) {
        const auto r = run->summary.priority_rejection(p);
        if (r.has_value()) values.push_back(*r);
      }
      if (values.empty()) {
        out << " -         ";
      } else {
        char cell[32];
        std::snprintf(cell, sizeof(cell), " %-10.6f", aggregate(values).mean);
        out << cell;
      }
    }
    out << "\n";
  }

  // Tiny scripted workloads get an explicit admission list per mode.
  bool tiny = seed_count == 1;
  for (const RunRecord& run : result.runs) {
    tiny = tiny && run.summary.total_arrivals <= 16;
  }
  if (tiny && !result.runs.empty()) {
    out << "\nadmissions (seed " << result.config.seeds.front() << ")\n";
    for (const EmbedderMode mode : result.config.modes) {
      for (const RunRecord* run : runs_of_mode(result, mode)) {
        out << "  " << to_string(mode) << ": accepted "
            << join_ids(run->summary.accepted_ids) << "; rejected "
            << join_ids(run->summary.rejected_ids) << "\n";
      }
    }
  }

  if (baseline.has_value()) {
    const ScenarioLevel ours = scenario_level(result);
    const ScenarioLevel theirs = scenario_level(*baseline);
    out << "\nversus " << baseline->config.name
        << " (scenario means over all modes and seeds)\n";
    out << "  rejection rate ratio: ";
    if (ours.rejection.has_value() && theirs.rejection.has_value() &&
        *theirs.rejection > 0.0) {
      out << fmt_fixed(*ours.rejection / *theirs.rejection, 4);
    } else {
      out << "n/a";
    }
    out << "\n  revenue ratio: ";
    if (ours.revenue.has_value() && theirs.revenue.has_value() &&
        *theirs.revenue > 0.0) {
      out << fmt_fixed(*ours.revenue / *theirs.revenue, 4);
    } else {
      out << "n/a";
    }
    out << "\n  per-priority rejection ratio:";
    const std::size_t levels =
        std::min(ours.per_priority.size(), theirs.per_priority.size());
    for (std::size_t p = 0; p < levels; ++p) {
      out << " p" << (p + 1) << " ";
      if (ours.per_priority[p].has_value() && theirs.per_priority[p].has_value() &&
          *theirs.per_priority[p] > 0.0) {
        out << fmt_fixed(*ours.per_priority[p] / *theirs.per_priority[p], 4);
      } else {
        out << "n/a";
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// slots_<mode>_seed<seed>.csv
std::optional<std::pair<std::string, std::uint64_t>> parse_slot_file_name(
    const std::string& name) {
  const std::string prefix = "slots_";
  const std::string suffix = ".csv";
  if (name.size() <= prefix.size() + suffix.size()) return std::nullopt;
  if (name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return std::nullopt;
  }
  const std::string stem =
      name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
  const std::size_t seed_pos = stem.rfind("_seed");
  if (seed_pos == std::string::npos || seed_pos == 0) return std::nullopt;
  const std::string mode = stem.substr(0, seed_pos);
  const std::string seed_digits = stem.substr(seed_pos + 5);
  if (seed_digits.empty() ||
      !std::all_of(seed_digits.begin(), seed_digits.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    return std::nullopt;
  }
  return std::make_pair(mode, std::stoull(seed_digits));
}

struct SlotSeries {
  std::vector<double> revenue;                  // by slot, 0-based
  std::vector<std::optional<double>> rejection;
};

SlotSeries read_slot_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open '" + file.string() + "'");
  }
  SlotSeries series;
  std::string line;
  int revenue_col = -1;
  int rejection_col = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (revenue_col < 0) {
      // Header row; locate the metric columns by name.
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "revenue") revenue_col = static_cast<int>(i);
        if (cells[i] == "rejection_rate") rejection_col = static_cast<int>(i);
      }
      if (revenue_col < 0 || rejection_col < 0) {
        throw ConfigError("'" + file.string() +
                          "' lacks revenue/rejection_rate columns");
      }
      continue;
    }
    if (static_cast<int>(cells.size()) <= std::max(revenue_col, rejection_col)) {
      throw ConfigError("'" + file.string() + "' has a short row");
    }
    series.revenue.push_back(std::stod(cells[static_cast<std::size_t>(revenue_col)]));
    const std::string& rej = cells[static_cast<std::size_t>(rejection_col)];
    if (rej.empty()) {
      series.rejection.emplace_back(std::nullopt);
    } else {
      series.rejection.emplace_back(std::stod(rej));
    }
  }
  return series;
}

}  // namespace

void emit_plot_data(const std::filesystem::path& in_dir) {
  // mode -> per-seed series, seed-sorted for deterministic averaging.
  std::map<std::string, std::map<std::uint64_t, SlotSeries>> by_mode;
  std::vector<std::string> echo;
  if (std::filesystem::is_directory(in_dir)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(in_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      const auto parsed = parse_slot_file_name(file.filename().string());
      if (!parsed.has_value()) continue;
      by_mode[parsed->first][parsed->second] = read_slot_csv(file);
      if (echo.empty()) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (line.empty() || line[0] != '#') break;
          // Per-run lines would misdescribe the aggregate.
          if (line.rfind("# mode =", 0) == 0 || line.rfind("# seed =", 0) == 0) continue;
          echo.push_back(line);
        }
      }
    }
  }
  if (by_mode.empty()) {
    throw ConfigError("no slots_<mode>_seed<seed>.csv files under '" +
                      in_dir.string() + "'");
  }

  const std::filesystem::path plot_dir = in_dir / "plot";
  std::filesystem::create_directories(plot_dir);

  for (const auto& [mode, seeds] : by_mode) {
    std::size_t slots = 0;
    for (const auto& [seed, series] : seeds) {
      slots = std::max(slots, series.revenue.size());
    }

    // Running means per seed, then the per-slot average across seeds.
    std::ostringstream revenue_out;
    std::ostringstream rejection_out;
    for (const std::string& line : echo) revenue_out << line << "\n";
    for (const std::string& line : echo) rejection_out << line << "\n";
    revenue_out << "# mode = " << mode << "\n# columns = slot running_mean_revenue\n";
    rejection_out << "# mode = " << mode
                  << "\n# columns = slot running_mean_rejection_rate\n";

    std::map<std::uint64_t, std::pair<double, long>> revenue_state;   // sum, count
    std::map<std::uint64_t, std::pair<double, long>> rejection_state;
    for (std::size_t slot = 0; slot < slots; ++slot) {
      double revenue_sum = 0.0;
      long revenue_n = 0;
      double rejection_sum = 0.0;
      long rejection_n = 0;
      for (const auto& [seed, series] : seeds) {
        if (slot < series.revenue.size()) {
          auto& [sum, count] = revenue_state[seed];
          sum += series.revenue[slot];
          ++count;
          revenue_sum += sum / static_cast<double>(count);
          ++revenue_n;
        }
        if (slot < series.rejection.size() && series.rejection[slot].has_value()) {
          auto& [sum, count] = rejection_state[seed];
          sum += *series.rejection[slot];
          ++count;
        }
        const auto it = rejection_state.find(seed);
        if (it != rejection_state.end() && it->second.second > 0 &&
            slot < series.rejection.size()) {
          rejection_sum += it->second.first / static_cast<double>(it->second.second);
          ++rejection_n;
        }
      }
      if (revenue_n > 0) {
        revenue_out << (slot + 1) << " " << fmt_double(revenue_sum / revenue_n) << "\n";
      }
      if (rejection_n > 0) {
        rejection_out << (slot + 1) << " " << fmt_double(rejection_sum / rejection_n)
                      << "\n";
      }
    }
    write_lines(plot_dir / ("revenue_" + mode + ".dat"), revenue_out.str());
    write_lines(plot_dir / ("rejection_rate_" + mode + ".dat"), rejection_out.str());
  }
}

std::string format_oracle_report(const OracleCheckConfig& config,
                                 const OracleCheckReport& report) {
  std::ostringstream out;
  out << "oracle check: " << report.instances << " instances on "
      << config.dims.freq << "x" << config.dims.time << ", <= "
      << config.max_requests << " requests, " << config.priority_levels
      << " priority level(s), seed " << config.seed << "\n";
  out << "violations: " << report.violations << "\n";
  if (report.rated_instances > 0) {
    out << "mean revenue ratio vs exact optimum (" << report.rated_instances
        << " rated instances)\n";
    out << "  static-km / exact-static:    "
        << fmt_fixed(report.mean_ratio_static_km, 6) << "\n";
    out << "  dynamic-km / exact-dynamic:  "
        << fmt_fixed(report.mean_ratio_dynamic_km, 6) << "\n";
    out << "  dynamic-greedy / exact-dynamic: "
        << fmt_fixed(report.mean_ratio_dynamic_greedy, 6) << "\n";
  }
  for (const std::string& message : report.messages) {
    out << "violation: " << message << "\n";
  }
  return out.str();
}

}  // namespace vne
