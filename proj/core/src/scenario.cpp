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

#include "vne/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <string>

#include "vne/errors.hpp"
#include "vne/rng.hpp"
#include "vne/verify.hpp"

namespace vne {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  T value{};
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ConfigError("invalid " + what + ": '" + token + "'");
  }
  return value;
}

double parse_double(const std::string& token, const std::string& what) {
  const std::string t = trim(token);
  if (t.empty()) throw ConfigError("invalid " + what + ": empty value");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + token + "'");
  }
  if (consumed != t.size()) {
    throw ConfigError("invalid " + what + ": '" + token + "'");
  }
  return value;
}

// `costs.p2` -> 2. Zero when the key does not match the prefix.
int priority_suffix(const std::string& key, const std::string& prefix) {
  if (key.size() <= prefix.size() + 1 || key.compare(0, prefix.size(), prefix) != 0 ||
      key[prefix.size()] != 'p') {
    return 0;
  }
  const std::string digits = key.substr(prefix.size() + 1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    return 0;
  }
  return parse_number<int>(digits, "priority index");
}

// The Fig. 1 walkthrough workload on a 5x5 substrate: A and B (both 2x3)
// arrive in slot 1, C (3x3) in slot 2. A lives one slot, so slot 2 has room
// for C only if B moves.
Trace fig1_trace() {
  Trace trace;
  trace.dims = SubstrateDims{5, 5};
  trace.priority_levels = 1;
  trace.seed = 0;
  trace.horizon = 3;
  trace.requests = {
      VNRequest{1, 1, 1, 2, 3, 1},
      VNRequest{2, 1, 1, 2, 3, 3},
      VNRequest{3, 2, 1, 3, 3, 1},
  };
  return trace;
}

}  // namespace

TrafficConfig ScenarioConfig::traffic(std::uint64_t seed) const {
  TrafficConfig config;
  config.dims = dims;
  config.lambda = lambda;
  config.mu = mu;
  config.priority_levels = priority_levels;
  config.f_min = f_min;
  config.f_max = f_max;
  config.td_min = td_min;
  config.td_max = td_max;
  config.horizon = horizon;
  config.seed = seed;
  return config;
}

void ScenarioConfig::validate() const {
  traffic(1).validate();  // substrate, rates, ranges, horizon
  if (static_cast<int>(costs.size()) != priority_levels) {
    throw ConfigError("expected " + std::to_string(priority_levels) +
                      " priority costs, got " + std::to_string(costs.size()));
  }
  if (static_cast<int>(max_delays.size()) != priority_levels) {
    throw ConfigError("expected " + std::to_string(priority_levels) +
                      " max delays, got " + std::to_string(max_delays.size()));
  }
  PriorityCosts check_costs(costs);   // positive, strictly decreasing
  MaxDelays check_delays(max_delays);  // each >= 1
  if (modes.empty()) throw ConfigError("at least one embedder mode is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (combination_cap < 0) throw ConfigError("combination cap must be non-negative");
  if (scripted.has_value() && trace_file.has_value()) {
    throw ConfigError("scripted trace and trace file are mutually exclusive");
  }
  if ((scripted.has_value() || trace_file.has_value()) && seeds.size() != 1) {
    throw ConfigError("a fixed workload allows exactly one seed, got " +
                      std::to_string(seeds.size()));
  }
  if (compare_with.has_value()) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), *compare_with) == names.end()) {
      throw ConfigError("unknown comparison preset '" + *compare_with + "'");
    }
    if (*compare_with == name) {
      throw ConfigError("scenario cannot compare against itself");
    }
  }
}

ScenarioConfig preset_config(const std::string& name) {
  ScenarioConfig config;
  config.name = name;
  config.seeds.resize(20);
  std::iota(config.seeds.begin(), config.seeds.end(), std::uint64_t{1});
  if (name == "paper-default") {
    return config;
  }
  if (name == "paper-large-requests") {
    config.lambda = 1.0;
    config.f_min = 2;
    config.f_max = 5;
    config.td_min = 2;
    config.td_max = 5;
    config.compare_with = "paper-default";
    return config;
  }
  if (name == "fig1") {
    config.dims = SubstrateDims{5, 5};
    config.lambda = 1.0;
    config.mu = 1.0;
    config.priority_levels = 1;
    config.f_min = 1;
    config.f_max = 3;
    config.td_min = 1;
    config.td_max = 3;
    config.horizon = 3;
    config.costs = {0.5};
    config.max_delays = {1};
    config.seeds = {1};
    config.scripted = fig1_trace();
    config.scripted_name = "fig1";
    return config;
  }
  throw ConfigError("unknown preset '" + name + "'; available: paper-default, "
                    "paper-large-requests, fig1");
}

std::vector<std::string> preset_names() {
  return {"paper-default", "paper-large-requests", "fig1"};
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& token : split(text, ',')) {
    seeds.push_back(parse_number<std::uint64_t>(token, "seed"));
  }
  return seeds;
}

std::vector<EmbedderMode> parse_mode_list(const std::string& text) {
  std::vector<EmbedderMode> modes;
  for (const std::string& token : split(text, ',')) {
    const auto mode = embedder_mode_from_string(trim(token));
    if (!mode.has_value()) {
      throw ConfigError("unknown embedder mode '" + trim(token) + "'");
    }
    modes.push_back(*mode);
  }
  return modes;
}

void apply_config_stream(ScenarioConfig& config, std::istream& in,
                         const std::string& origin) {
  bool costs_replaced = false;
  bool delays_replaced = false;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    const auto fail = [&](const std::string& message) {
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": " + message);
    };
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "scenario.name") {
        config.name = value;
      } else if (key == "substrate.F") {
        config.dims.freq = parse_number<int>(value, key);
      } else if (key == "substrate.T") {
        config.dims.time = parse_number<int>(value, key);
      } else if (key == "traffic.lambda") {
        config.lambda = parse_double(value, key);
      } else if (key == "traffic.mu") {
        config.mu = parse_double(value, key);
      } else if (key == "traffic.priority_levels") {
        config.priority_levels = parse_number<int>(value, key);
      } else if (key == "traffic.f_min") {
        config.f_min = parse_number<int>(value, key);
      } else if (key == "traffic.f_max") {
        config.f_max = parse_number<int>(value, key);
      } else if (key == "traffic.td_min") {
        config.td_min = parse_number<int>(value, key);
      } else if (key == "traffic.td_max") {
        config.td_max = parse_number<int>(value, key);
      } else if (key == "traffic.horizon") {
        config.horizon = parse_number<int>(value, key);
      } else if (key == "traffic.trace") {
        if (value.empty()) {
          config.trace_file.reset();
        } else {
          config.trace_file = std::filesystem::path(value);
        }
      } else if (key == "run.modes") {
        config.modes = parse_mode_list(value);
      } else if (key == "run.seeds") {
        config.seeds = parse_seed_list(value);
      } else if (key == "run.combination_cap") {
        config.combination_cap = parse_number<int>(value, key);
      } else if (key == "run.compare_with") {
        if (value.empty()) {
          config.compare_with.reset();
        } else {
          config.compare_with = value;
        }
      } else if (const int cp = priority_suffix(key, "costs."); cp > 0) {
        if (!costs_replaced) {
          config.costs.clear();
          costs_replaced = true;
        }
        if (config.costs.size() < static_cast<std::size_t>(cp)) {
          config.costs.resize(static_cast<std::size_t>(cp), -1.0);
        }
        config.costs[static_cast<std::size_t>(cp - 1)] = parse_double(value, key);
      } else if (const int dp = priority_suffix(key, "delays."); dp > 0) {
        if (!delays_replaced) {
          config.max_delays.clear();
          delays_replaced = true;
        }
        if (config.max_delays.size() < static_cast<std::size_t>(dp)) {
          config.max_delays.resize(static_cast<std::size_t>(dp), -1);
        }
        config.max_delays[static_cast<std::size_t>(dp - 1)] =
            parse_number<int>(value, key);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      const std::string prefix = origin + ":";
      if (std::string(e.what()).compare(0, prefix.size(), prefix) == 0) throw;
      fail(e.what());
    }
  }
  for (std::size_t i = 0; i < config.costs.size(); ++i) {
    if (costs_replaced && config.costs[i] < 0.0) {
      throw ConfigError(origin + ": costs.p" + std::to_string(i + 1) + " is missing");
    }
  }
  for (std::size_t i = 0; i < config.max_delays.size(); ++i) {
    if (delays_replaced && config.max_delays[i] < 0) {
      throw ConfigError(origin + ": delays.p" + std::to_string(i + 1) + " is missing");
    }
  }
}

void apply_config_file(ScenarioConfig& config, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open config file '" + file.string() + "'");
  }
  apply_config_stream(config, in, file.string());
}

void resolve_seeds(ScenarioConfig& config, const std::optional<std::string>& env_seed) {
  if (!config.seeds.empty()) return;
  if (env_seed.has_value() && !trim(*env_seed).empty()) {
    config.seeds = {parse_number<std::uint64_t>(*env_seed, "VNE_SIM_SEED")};
    return;
  }
  config.seeds.resize(20);
  std::iota(config.seeds.begin(), config.seeds.end(), std::uint64_t{1});
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  ScenarioResult result;
  result.config = config;

  const PriorityCosts costs(config.costs);
  const MaxDelays delays(config.max_delays);

  // Traces are keyed by seed only, so every mode sees the same workload and
  // per-seed comparisons are paired.
  std::vector<Trace> traces;
  traces.reserve(config.seeds.size());
  for (const std::uint64_t seed : config.seeds) {
    if (config.scripted.has_value()) {
      traces.push_back(*config.scripted);
    } else if (config.trace_file.has_value()) {
      traces.push_back(load_trace(*config.trace_file));
    } else {
      traces.push_back(generate_trace(config.traffic(seed)));
    }
  }
  for (const Trace& trace : traces) {
    if (!(trace.dims == config.dims)) {
      throw ConfigError("trace substrate " + std::to_string(trace.dims.freq) + "x" +
                        std::to_string(trace.dims.time) + " does not match configured " +
                        std::to_string(config.dims.freq) + "x" +
                        std::to_string(config.dims.time));
    }
    if (trace.priority_levels > config.priority_levels) {
      throw ConfigError("trace uses " + std::to_string(trace.priority_levels) +
                        " priority levels, configured " +
                        std::to_string(config.priority_levels));
    }
  }

  for (const EmbedderMode mode : config.modes) {
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
      RunRecord record{mode, config.seeds[i],
                       run_simulation(traces[i], mode, costs, delays,
                                      config.combination_cap)};
      result.runs.push_back(std::move(record));
    }
  }
  return result;
}

std::string run_and_write(const ScenarioConfig& config,
                          const std::filesystem::path& out_dir) {
  const ScenarioResult result = run_scenario(config);
  std::optional<ScenarioResult> baseline;
  if (config.compare_with.has_value()) {
    baseline = run_scenario(preset_config(*config.compare_with));
  }
  write_scenario_outputs(result, baseline, out_dir);
  return format_report(result, baseline);
}

void OracleCheckConfig::validate() const {
  if (instances < 0) throw ConfigError("instance count must be non-negative");
  if (dims.freq < 1 || dims.time < 1 || dims.freq > 6 || dims.time > 6) {
    throw ConfigError("oracle-check substrate must be between 1x1 and 6x6, got " +
                      std::to_string(dims.freq) + "x" + std::to_string(dims.time));
  }
  if (max_requests < 1 || max_requests > 6) {
    throw ConfigError("oracle-check allows 1..6 requests per instance, got " +
                      std::to_string(max_requests));
  }
  if (priority_levels < 1 || priority_levels > 3) {
    throw ConfigError("oracle-check supports 1..3 priority levels, got " +
                      std::to_string(priority_levels));
  }
}

namespace {

// One random single-slot embedding problem.
struct OracleInstance {
  std::vector<EmbedRequest> existing;
  std::vector<std::vector<EmbedRequest>> fresh_by_priority;
};

OracleInstance draw_instance(const OracleCheckConfig& config, RandomStream& stream) {
  OracleInstance instance;
  instance.fresh_by_priority.assign(
      static_cast<std::size_t>(config.priority_levels), {});

  const int total = stream.uniform_int(1, config.max_requests);
  const int want_existing = stream.uniform_int(0, total);
  const int span_cap_f = std::min(3, config.dims.freq);
  const int span_cap_t = std::min(3, config.dims.time);

  OccupancyGrid grid(config.dims);
  for (NetworkId id = 1; id <= total; ++id) {
    EmbedRequest request;
    request.id = id;
    request.priority = stream.uniform_int(1, config.priority_levels);
    request.span_f = stream.uniform_int(1, span_cap_f);
    request.span_t = stream.uniform_int(1, span_cap_t);
    request.arrival_slot = 1;

    bool placed = false;
    if (id <= want_existing) {
      // Uniform choice among the feasible origins; fall back to a new request
      // when the grid has no room left.
      std::vector<std::pair<int, int>> origins;
      for (int of = 0; of + request.span_f <= config.dims.freq; ++of) {
        for (int ot = 0; ot + request.span_t <= config.dims.time; ++ot) {
          if (grid.rect_vacant(of, ot, request.span_f, request.span_t)) {
            origins.emplace_back(of, ot);
          }
        }
      }
      if (!origins.empty()) {
        const auto [of, ot] =
            origins[static_cast<std::size_t>(stream.uniform_int(
                0, static_cast<int>(origins.size()) - 1))];
        const Placement placement{id, of, ot, request.span_f, request.span_t};
        grid.place(placement);
        request.kind = RequestKind::kExisting;
        request.previous = placement;
        instance.existing.push_back(request);
        placed = true;
      }
    }
    if (!placed) {
      request.kind = RequestKind::kNew;
      instance.fresh_by_priority[static_cast<std::size_t>(request.priority - 1)]
          .push_back(request);
    }
  }
  return instance;
}

std::vector<double> oracle_costs(int priority_levels) {
  const std::vector<double> table{0.5, 0.3, 0.2};
  return {table.begin(), table.begin() + priority_levels};
}

}  // namespace

OracleCheckReport run_oracle_check(const OracleCheckConfig& config) {
  config.validate();
  const std::vector<double> costs = oracle_costs(config.priority_levels);

  OracleCheckReport report;
  report.instances = config.instances;
  double ratio_static = 0.0;
  double ratio_dynamic = 0.0;
  double ratio_greedy = 0.0;

  constexpr double kRevenueSlack = 1e-9;
  for (int index = 0; index < config.instances; ++index) {
    RandomStream stream(config.seed, static_cast<std::uint64_t>(index));
    const OracleInstance instance = draw_instance(config, stream);

    const auto note = [&](const std::string& what) {
      ++report.violations;
      if (report.messages.size() < 10) {
        report.messages.push_back("instance " + std::to_string(index) + " (seed " +
                                  std::to_string(config.seed) + "): " + what);
      }
    };
    const auto check_feasible = [&](const StageResult& result, bool static_mode,
                                    const std::string& who) {
      const auto violations = check_stage_result(
          config.dims, instance.existing, instance.fresh_by_priority, result,
          static_mode);
      for (const std::string& v : violations) {
        note(who + ": " + v);
      }
    };

    std::vector<EmbedRequest> fresh_flat;
    for (const auto& level : instance.fresh_by_priority) {
      fresh_flat.insert(fresh_flat.end(), level.begin(), level.end());
    }

    const ExactResult exact_static = embed_exact(
        config.dims, instance.existing, instance.fresh_by_priority,
        ExactMode::kStatic, costs);
    check_feasible(exact_static.result, true, "exact-static");

    const ExactResult exact_dynamic = embed_exact(
        config.dims, instance.existing, instance.fresh_by_priority,
        ExactMode::kDynamic, costs);
    check_feasible(exact_dynamic.result, false, "exact-dynamic");

    const StageResult static_km =
        embed_static_km(config.dims, instance.existing, fresh_flat);
    check_feasible(static_km, true, "static-km");
    const double static_revenue =
        stage_revenue(static_km, instance.existing, instance.fresh_by_priority, costs);
    if (static_revenue > exact_static.revenue + kRevenueSlack) {
      note("static-km revenue " + std::to_string(static_revenue) +
           " exceeds exact optimum " + std::to_string(exact_static.revenue));
    }

    const StageResult dynamic_km =
        embed_dynamic_km(config.dims, instance.existing, fresh_flat);
    check_feasible(dynamic_km, false, "dynamic-km");
    const double dynamic_revenue =
        stage_revenue(dynamic_km, instance.existing, instance.fresh_by_priority, costs);
    if (dynamic_revenue > exact_dynamic.revenue + kRevenueSlack) {
      note("dynamic-km revenue " + std::to_string(dynamic_revenue) +
           " exceeds exact optimum " + std::to_string(exact_dynamic.revenue));
    }

    const StageResult greedy = embed_dynamic_greedy(
        config.dims, instance.existing, instance.fresh_by_priority);
    check_feasible(greedy, false, "dynamic-greedy");
    const double greedy_revenue =
        stage_revenue(greedy, instance.existing, instance.fresh_by_priority, costs);
    if (greedy_revenue > exact_dynamic.revenue + kRevenueSlack) {
      note("dynamic-greedy revenue " + std::to_string(greedy_revenue) +
           " exceeds exact optimum " + std::to_string(exact_dynamic.revenue));
    }

    if (exact_static.revenue > 0.0 && exact_dynamic.revenue > 0.0) {
      ratio_static += static_revenue / exact_static.revenue;
      ratio_dynamic += dynamic_revenue / exact_dynamic.revenue;
      ratio_greedy += greedy_revenue / exact_dynamic.revenue;
      ++report.rated_instances;
    }
  }

  if (report.rated_instances > 0) {
    report.mean_ratio_static_km = ratio_static / report.rated_instances;
    report.mean_ratio_dynamic_km = ratio_dynamic / report.rated_instances;
    report.mean_ratio_dynamic_greedy = ratio_greedy / report.rated_instances;
  }
  return report;
}

}  // namespace vne
