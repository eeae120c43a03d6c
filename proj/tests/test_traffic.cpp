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

#include <doctest.h>

#include <array>
#include <sstream>

#include "vne/errors.hpp"

namespace vne {
namespace {

TrafficConfig base_config() {
  TrafficConfig c;
  c.seed = 1;
  return c;
}

TEST_CASE("the same config generates the same trace twice") {
  const Trace a = generate_trace(base_config());
  const Trace b = generate_trace(base_config());
  CHECK(a == b);
  CHECK_FALSE(a.requests.empty());

  TrafficConfig other = base_config();
  other.seed = 2;
  CHECK_FALSE(a == generate_trace(other));
}

TEST_CASE("generated traces satisfy the workload invariants") {
  const TrafficConfig c = base_config();
  const Trace trace = generate_trace(c);
  CHECK(trace.dims == c.dims);
  CHECK(trace.priority_levels == c.priority_levels);
  CHECK(trace.horizon == c.horizon);
  NetworkId expected_id = 1;
  int last_slot = 1;
  for (const VNRequest& r : trace.requests) {
    CHECK(r.id == expected_id++);
    CHECK(r.arrival_slot >= last_slot);
    last_slot = r.arrival_slot;
    CHECK(r.arrival_slot >= 1);
    CHECK(r.arrival_slot <= c.horizon);
    CHECK(r.priority >= 1);
    CHECK(r.priority <= c.priority_levels);
    CHECK(r.span_f >= c.f_min);
    CHECK(r.span_f <= c.f_max);
    CHECK(r.span_t >= c.td_min);
    CHECK(r.span_t <= c.td_max);
    CHECK(r.duration >= 1);
  }
}

TEST_CASE("arrival volume and durations follow the configured law") {
  double total = 0.0;
  double duration_sum = 0.0;
  double duration_count = 0.0;
  std::array<long, 3> per_priority{0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TrafficConfig c = base_config();
    c.seed = seed;
    const Trace t = generate_trace(c);
    total += static_cast<double>(t.requests.size());
    for (const VNRequest& r : t.requests) {
      duration_sum += r.duration;
      duration_count += 1.0;
      per_priority[static_cast<std::size_t>(r.priority - 1)] += 1;
    }
  }
  // 20 seeds x Poisson(3) x 1000 slots: mean 60000, sd ~245.
  CHECK(total > 58500.0);
  CHECK(total < 61500.0);
  // E[max(1, ceil(Exp(10)))] = 1/(1 - exp(-1/10)) ~= 10.508.
  const double mean_duration = duration_sum / duration_count;
  CHECK(mean_duration > 10.3);
  CHECK(mean_duration < 10.7);
  // Priorities are uniform over three levels.
  for (const long n : per_priority) {
    CHECK(static_cast<double>(n) > total / 3.0 * 0.93);
    CHECK(static_cast<double>(n) < total / 3.0 * 1.07);
  }
}

TEST_CASE("a near-zero arrival rate yields a near-empty trace") {
  TrafficConfig c = base_config();
  c.lambda = 1e-4;
  c.horizon = 100;
  const Trace t = generate_trace(c);
  CHECK(t.requests.size() <= 2);
}

TEST_CASE("a zero horizon yields an empty trace") {
  TrafficConfig c = base_config();
  c.horizon = 0;
  CHECK(generate_trace(c).requests.empty());
}

TEST_CASE("config validation rejects out-of-range parameters") {
  TrafficConfig c = base_config();
  c.lambda = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.mu = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.f_max = 13;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.f_min = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.td_min = 3;
  c.td_max = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.horizon = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base_config();
  c.priority_levels = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  base_config().validate();
}

TEST_CASE("traces round-trip through the text format") {
  const Trace trace = generate_trace(base_config());
  std::stringstream buffer;
  save_trace(trace, buffer);
  const Trace reloaded = load_trace(buffer);
  CHECK(reloaded == trace);
}

TEST_CASE("an empty trace round-trips") {
  TrafficConfig c = base_config();
  c.horizon = 0;
  const Trace trace = generate_trace(c);
  std::stringstream buffer;
  save_trace(trace, buffer);
  CHECK(load_trace(buffer) == trace);
}

TEST_CASE("trace loading reports malformed input with line numbers") {
  const auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_trace(in);
  };
  const std::string header = "#vne-trace v1 F=5 T=5 K=1 seed=1 horizon=3\n";

  CHECK_THROWS_AS(load("#wrong header\n"), ParseError);
  CHECK_THROWS_AS(load(""), ParseError);
  CHECK_THROWS_AS(load(header + "1,1,1,2\n"), ParseError);
  CHECK_THROWS_AS(load(header + "1,1,0,2,3,1\n"), ParseError);   // p < 1
  CHECK_THROWS_AS(load(header + "1,1,2,2,3,1\n"), ParseError);   // p > K
  CHECK_THROWS_AS(load(header + "4,1,1,2,3,1\n"), ParseError);   // slot > horizon
  CHECK_THROWS_AS(load(header + "1,1,1,6,3,1\n"), ParseError);   // f > F
  CHECK_THROWS_AS(load(header + "1,1,1,2,3,0\n"), ParseError);   // d < 1
  CHECK_THROWS_AS(
      load(header + "1,2,1,2,3,1\n1,1,1,2,3,1\n"), ParseError);  // id order
  CHECK_THROWS_AS(
      load(header + "1,1,1,2,3,1\n2,1,1,2,3,1\n"), ParseError);  // dup id
  CHECK_THROWS_AS(
      load(header + "2,2,1,2,3,1\n1,1,1,2,3,1\n"), ParseError);  // slot order

  try {
    load(header + "1,1,1,2,3,1\nbogus\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }

  const Trace ok = load(header + "1,1,1,2,3,1\n3,2,1,3,3,2\n");
  CHECK(ok.dims == SubstrateDims{5, 5});
  CHECK(ok.priority_levels == 1);
  CHECK(ok.horizon == 3);
  REQUIRE(ok.requests.size() == 2);
  CHECK(ok.requests[1] == VNRequest{2, 3, 1, 3, 3, 2});
}

}  // namespace
}  // namespace vne
