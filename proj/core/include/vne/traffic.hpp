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

#ifndef VNE_TRAFFIC_HPP
#define VNE_TRAFFIC_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "vne/grid.hpp"

namespace vne {

// One virtual network request: priority (1 = highest), a span_f x span_t
// rectangle of resource blocks, held for `duration` timeslots.
struct VNRequest {
  NetworkId id = 0;
  int arrival_slot = 0;
  int priority = 1;
  int span_f = 1;
  int span_t = 1;
  int duration = 1;

  long area() const { return static_cast<long>(span_f) * span_t; }
  bool operator==(const VNRequest&) const = default;
};

struct TrafficConfig {
  SubstrateDims dims{12, 12};
  double lambda = 3.0;  // mean arrivals per timeslot
  double mu = 10.0;     // mean lifespan in timeslots
  int priority_levels = 3;
  int f_min = 1, f_max = 3;
  int td_min = 1, td_max = 3;
  int horizon = 1000;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
  bool operator==(const TrafficConfig&) const = default;
};

// A reproducible workload: requests sorted by (arrival_slot, id), ids unique,
// arrival slots in [1, horizon].
struct Trace {
  SubstrateDims dims{0, 0};
  int priority_levels = 0;
  std::uint64_t seed = 0;
  int horizon = 0;
  std::vector<VNRequest> requests;

  bool operator==(const Trace&) const = default;
};

// Draws the workload described by the config. Arrival counts per slot are
// Poisson(lambda); spans are integer-uniform over their inclusive ranges;
// priorities are uniform over 1..priority_levels; durations are
// ceil(Exponential(mu)), so always >= 1. Each attribute uses its own
// deterministic sub-stream of the seed: the same config always yields the
// same trace, bit for bit.
Trace generate_trace(const TrafficConfig& config);

// Line-oriented text format:
//   #vne-trace v1 F=<int> T=<int> K=<int> seed=<u64> horizon=<int>
//   slot,id,p,f,td,d          (one request per line, sorted by (slot, id))
void save_trace(const Trace& trace, std::ostream& out);
void save_trace(const Trace& trace, const std::filesystem::path& destination);

// Throws ParseError (with line number) on malformed input or invariant
// violations.
Trace load_trace(std::istream& in);
Trace load_trace(const std::filesystem::path& source);

}  // namespace vne

#endif  // VNE_TRAFFIC_HPP
