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

#include "vne/traffic.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "vne/rng.hpp"

namespace vne {

namespace {

// Sub-stream indices of the master seed; one stream per drawn attribute.
enum Stream : std::uint64_t {
  kArrivals = 0,
  kSpanF = 1,
  kSpanT = 2,
  kPriority = 3,
  kDuration = 4,
};

}  // namespace

void TrafficConfig::validate() const {
  if (dims.freq < 1 || dims.time < 1) {
    throw ConfigError("substrate dimensions must be positive");
  }
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(mu >= 1.0)) throw ConfigError("mu must be >= 1");
  if (priority_levels < 1) throw ConfigError("priority levels must be >= 1");
  if (f_min < 1 || f_min > f_max || f_max > dims.freq) {
    throw ConfigError("frequency span range must satisfy 1 <= min <= max <= F");
  }
  if (td_min < 1 || td_min > td_max || td_max > dims.time) {
    throw ConfigError("time span range must satisfy 1 <= min <= max <= T");
  }
  if (horizon < 0) throw ConfigError("horizon must be >= 0");
}

Trace generate_trace(const TrafficConfig& config) {
  config.validate();
  RandomStream arrivals(config.seed, kArrivals);
  RandomStream span_f(config.seed, kSpanF);
  RandomStream span_t(config.seed, kSpanT);
  RandomStream priority(config.seed, kPriority);
  RandomStream duration(config.seed, kDuration);

  Trace trace;
  trace.dims = config.dims;
  trace.priority_levels = config.priority_levels;
  trace.seed = config.seed;
  trace.horizon = config.horizon;

  NetworkId next_id = 1;
  for (int slot = 1; slot <= config.horizon; ++slot) {
    const int count = arrivals.poisson(config.lambda);
    for (int n = 0; n < count; ++n) {
      VNRequest request;
      request.id = next_id++;
      request.arrival_slot = slot;
      request.span_f = span_f.uniform_int(config.f_min, config.f_max);
      request.span_t = span_t.uniform_int(config.td_min, config.td_max);
      request.priority = priority.uniform_int(1, config.priority_levels);
      const double lifespan = duration.exponential(config.mu);
      request.duration = std::max(1, static_cast<int>(std::ceil(lifespan)));
      trace.requests.push_back(request);
    }
  }
  return trace;
}

void save_trace(const Trace& trace, std::ostream& out) {
  char header[160];
  std::snprintf(header, sizeof(header),
                "#vne-trace v1 F=%d T=%d K=%d seed=%" PRIu64 " horizon=%d\n",
                trace.dims.freq, trace.dims.time, trace.priority_levels, trace.seed,
                trace.horizon);
  out << header;
  for (const VNRequest& r : trace.requests) {
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%" PRId64 ",%d,%d,%d,%d\n", r.arrival_slot,
                  r.id, r.priority, r.span_f, r.span_t, r.duration);
    out << line;
  }
}

void save_trace(const Trace& trace, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open trace file for writing: " + destination.string());
  }
  save_trace(trace, out);
}

Trace load_trace(std::istream& in) {
  std::string line;
  int line_number = 0;

  if (!std::getline(in, line)) throw ParseError("missing trace header", 1);
  ++line_number;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  Trace trace;
  unsigned long long seed = 0;
  char trailing = 0;
  const int header_fields =
      std::sscanf(line.c_str(), "#vne-trace v1 F=%d T=%d K=%d seed=%llu horizon=%d%c",
                  &trace.dims.freq, &trace.dims.time, &trace.priority_levels, &seed,
                  &trace.horizon, &trailing);
  if (header_fields != 5) throw ParseError("malformed trace header", line_number);
  trace.seed = seed;
  if (trace.dims.freq < 1 || trace.dims.time < 1) {
    throw ParseError("substrate dimensions must be positive", line_number);
  }
  if (trace.priority_levels < 1) {
    throw ParseError("priority levels must be >= 1", line_number);
  }
  if (trace.horizon < 0) throw ParseError("horizon must be >= 0", line_number);

  int last_slot = 0;
  NetworkId last_id = 0;
  std::unordered_set<NetworkId> seen_ids;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    VNRequest r;
    long long id = 0;
    const int fields = std::sscanf(line.c_str(), "%d,%lld,%d,%d,%d,%d%c",
                                   &r.arrival_slot, &id, &r.priority, &r.span_f,
                                   &r.span_t, &r.duration, &trailing);
    if (fields != 6) throw ParseError("expected slot,id,p,f,td,d", line_number);
    r.id = id;
    if (r.arrival_slot < 1 || r.arrival_slot > trace.horizon) {
      throw ParseError("arrival slot outside [1, horizon]", line_number);
    }
    if (r.priority < 1 || r.priority > trace.priority_levels) {
      throw ParseError("priority outside [1, K]", line_number);
    }
    if (r.span_f < 1 || r.span_f > trace.dims.freq) {
      throw ParseError("frequency span outside [1, F]", line_number);
    }
    if (r.span_t < 1 || r.span_t > trace.dims.time) {
      throw ParseError("time span outside [1, T]", line_number);
    }
    if (r.duration < 1) throw ParseError("duration must be >= 1", line_number);
    if (!trace.requests.empty()) {
      if (r.arrival_slot < last_slot ||
          (r.arrival_slot == last_slot && r.id <= last_id)) {
        throw ParseError("requests must be sorted by (slot, id)", line_number);
      }
    }
    if (!seen_ids.insert(r.id).second) {
      throw ParseError("duplicate request id", line_number);
    }
    last_slot = r.arrival_slot;
    last_id = r.id;
    trace.requests.push_back(r);
  }
  return trace;
}

Trace load_trace(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace file: " + source.string());
  return load_trace(in);
}

}  // namespace vne
