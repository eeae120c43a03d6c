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

#include <benchmark/benchmark.h>

#include <vector>

#include "vne/embedders.hpp"
#include "vne/grid.hpp"
#include "vne/rng.hpp"
#include "vne/simulator.hpp"
#include "vne/traffic.hpp"

namespace vne {
namespace {

// A 12x12 grid fragmented by a handful of mid-sized tenants.
OccupancyGrid fragmented_grid() {
  OccupancyGrid g({12, 12});
  g.place({1, 0, 0, 3, 2});
  g.place({2, 0, 5, 2, 3});
  g.place({3, 4, 3, 2, 2});
  g.place({4, 7, 0, 3, 3});
  g.place({5, 9, 8, 3, 3});
  g.place({6, 3, 9, 2, 2});
  return g;
}

void BM_FindVacantRegions(benchmark::State& state) {
  const OccupancyGrid g = fragmented_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.find_vacant_regions(1, 1));
  }
}
BENCHMARK(BM_FindVacantRegions);

void BM_Edi(benchmark::State& state) {
  const OccupancyGrid g = fragmented_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.edi());
  }
}
BENCHMARK(BM_Edi);

void BM_EdiDelta(benchmark::State& state) {
  const OccupancyGrid g = fragmented_grid();
  const Placement p{7, 9, 4, 3, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.edi_delta(p));
  }
}
BENCHMARK(BM_EdiDelta);

std::vector<EmbedRequest> fresh_batch(int count) {
  RandomStream rng(99, 0);
  std::vector<EmbedRequest> fresh;
  for (int i = 0; i < count; ++i) {
    EmbedRequest r;
    r.id = 100 + i;
    r.priority = rng.uniform_int(1, 3);
    r.span_f = rng.uniform_int(1, 3);
    r.span_t = rng.uniform_int(1, 3);
    r.kind = RequestKind::kNew;
    r.arrival_slot = 1;
    fresh.push_back(r);
  }
  return fresh;
}

std::vector<EmbedRequest> existing_batch() {
  std::vector<EmbedRequest> existing;
  const OccupancyGrid grid = fragmented_grid();
  for (const Placement& p : grid.placements()) {
    EmbedRequest r;
    r.id = p.network_id;
    r.priority = 1;
    r.span_f = p.span_f;
    r.span_t = p.span_t;
    r.kind = RequestKind::kExisting;
    r.previous = p;
    existing.push_back(r);
  }
  return existing;
}

void BM_StaticKmSlot(benchmark::State& state) {
  const auto existing = existing_batch();
  const auto fresh = fresh_batch(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_static_km({12, 12}, existing, fresh));
  }
}
BENCHMARK(BM_StaticKmSlot)->Arg(3)->Arg(8);

void BM_DynamicKmSlot(benchmark::State& state) {
  const auto existing = existing_batch();
  const auto fresh = fresh_batch(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_dynamic_km({12, 12}, existing, fresh));
  }
}
BENCHMARK(BM_DynamicKmSlot)->Arg(3)->Arg(8);

void BM_DynamicGreedySlot(benchmark::State& state) {
  const auto existing = existing_batch();
  std::vector<std::vector<EmbedRequest>> by_priority(3);
  for (EmbedRequest& r : fresh_batch(static_cast<int>(state.range(0)))) {
    by_priority[static_cast<std::size_t>(r.priority - 1)].push_back(r);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_dynamic_greedy({12, 12}, existing, by_priority));
  }
}
BENCHMARK(BM_DynamicGreedySlot)->Arg(6)->Arg(12);

void BM_SimulationSlice(benchmark::State& state) {
  TrafficConfig config;
  config.horizon = 100;
  config.seed = 1;
  const Trace trace = generate_trace(config);
  const PriorityCosts costs({0.5, 0.3, 0.2});
  const MaxDelays delays({1, 2, 3});
  const auto mode = static_cast<EmbedderMode>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(trace, mode, costs, delays));
  }
}
BENCHMARK(BM_SimulationSlice)
    ->Arg(static_cast<int>(EmbedderMode::kStaticKm))
    ->Arg(static_cast<int>(EmbedderMode::kDynamicKm))
    ->Arg(static_cast<int>(EmbedderMode::kDynamicGreedy));

}  // namespace
}  // namespace vne

BENCHMARK_MAIN();
