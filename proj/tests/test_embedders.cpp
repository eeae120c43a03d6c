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

#include "vne/embedders.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "vne/errors.hpp"
#include "vne/verify.hpp"

namespace vne {
namespace {

EmbedRequest fresh(NetworkId id, int priority, int span_f, int span_t,
                   int arrival_slot = 1) {
  EmbedRequest r;
  r.id = id;
  r.priority = priority;
  r.span_f = span_f;
  r.span_t = span_t;
  r.kind = RequestKind::kNew;
  r.arrival_slot = arrival_slot;
  return r;
}

EmbedRequest existing(NetworkId id, const Placement& previous, int priority = 1) {
  EmbedRequest r;
  r.id = id;
  r.priority = priority;
  r.span_f = previous.span_f;
  r.span_t = previous.span_t;
  r.kind = RequestKind::kExisting;
  r.previous = previous;
  return r;
}

const Placement* placement_of(const StageResult& result, NetworkId id) {
  for (const Placement& p : result.placements) {
    if (p.network_id == id) return &p;
  }
  return nullptr;
}

TEST_CASE("embedder mode tokens round-trip") {
  const EmbedderMode modes[] = {EmbedderMode::kStaticKm, EmbedderMode::kDynamicKm,
                                EmbedderMode::kDynamicGreedy, EmbedderMode::kExactStatic,
                                EmbedderMode::kExactDynamic};
  for (const EmbedderMode m : modes) {
    const auto parsed = embedder_mode_from_string(to_string(m));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == m);
  }
  CHECK(to_string(EmbedderMode::kDynamicKm) == "dynamic-km");
  CHECK_FALSE(embedder_mode_from_string("km").has_value());
  CHECK_FALSE(embedder_mode_from_string("").has_value());
}

TEST_CASE("enumerate_combinations lists all non-empty subsets under the cap") {
  const CombinationSet two = enumerate_combinations(2, 12);
  CHECK_FALSE(two.exploded);
  CHECK(two.masks == std::vector<std::uint32_t>{1, 2, 3});

  const CombinationSet none = enumerate_combinations(0, 12);
  CHECK_FALSE(none.exploded);
  CHECK(none.masks.empty());

  const CombinationSet four = enumerate_combinations(4, 12);
  CHECK(four.masks.size() == 15);
  CHECK(std::is_sorted(four.masks.begin(), four.masks.end()));

  const CombinationSet at_cap = enumerate_combinations(3, 3);
  CHECK_FALSE(at_cap.exploded);
  CHECK(at_cap.masks.size() == 7);

  const CombinationSet over = enumerate_combinations(13, 12);
  CHECK(over.exploded);
  CHECK(over.masks.empty());
}

TEST_CASE("static km packs a first slot towards the origin") {
  const StageResult r = embed_static_km(
      {5, 5}, {}, {fresh(1, 1, 2, 3), fresh(2, 1, 2, 3)});
  REQUIRE(r.embedded_ids == std::vector<NetworkId>{1, 2});
  CHECK(r.deferred_ids.empty());
  CHECK(*placement_of(r, 1) == Placement{1, 0, 0, 2, 3});
  CHECK(*placement_of(r, 2) == Placement{2, 2, 0, 2, 3});
  CHECK(check_stage_result({5, 5}, {},
                           {{fresh(1, 1, 2, 3), fresh(2, 1, 2, 3)}}, r, true)
            .empty());
}

TEST_CASE("static km cannot move tenants, so fragmented space defers arrivals") {
  // One 2x3 sits mid-grid; no 3x3 window survives even though 19 cells are free.
  const std::vector<EmbedRequest> held = {existing(2, {2, 2, 0, 2, 3})};
  const StageResult r = embed_static_km({5, 5}, held, {fresh(3, 1, 3, 3)});
  CHECK(r.embedded_ids.empty());
  CHECK(r.deferred_ids == std::vector<NetworkId>{3});
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0] == Placement{2, 2, 0, 2, 3});
  CHECK_FALSE(r.reembed_failure);
}

TEST_CASE("dynamic km consolidates tenants and admits the blocked arrival") {
  const std::vector<EmbedRequest> held = {existing(2, {2, 2, 0, 2, 3})};
  const StageResult r = embed_dynamic_km({5, 5}, held, {fresh(3, 1, 3, 3)});
  CHECK(r.embedded_ids == std::vector<NetworkId>{3});
  CHECK(r.deferred_ids.empty());
  CHECK(*placement_of(r, 2) == Placement{2, 0, 0, 2, 3});
  CHECK(*placement_of(r, 3) == Placement{3, 2, 0, 3, 3});
  CHECK_FALSE(r.reembed_failure);
  CHECK(check_stage_result({5, 5}, held, {{fresh(3, 1, 3, 3)}}, r, false).empty());
}

TEST_CASE("new requests are ordered by priority, area, arrival, id") {
  // The 1x1 outranks the 3x3 by priority; among the equal-priority pair the
  // larger goes first; the leftover corner goes to the earlier arrival.
  const StageResult r = embed_static_km(
      {4, 4}, {},
      {fresh(1, 2, 3, 3), fresh(2, 1, 1, 1), fresh(3, 2, 1, 1, 2),
       fresh(4, 2, 1, 1, 1)});
  CHECK(*placement_of(r, 2) == Placement{2, 0, 0, 1, 1});
  // 3x3 next: smallest feasible region after the 1x1 occupies (0,0).
  REQUIRE(placement_of(r, 1) != nullptr);
  CHECK(placement_of(r, 1)->span_f == 3);
  // Earlier arrival (id 4) is placed before id 3.
  CHECK(r.embedded_ids.size() + r.deferred_ids.size() == 4);
}

TEST_CASE("dynamic km re-embeds existing tenants largest first into corners") {
  // Four 6x6 tenants tile the 12x12 substrate; re-embedding keeps the tiling
  // and a new arrival has nowhere to go.
  const std::vector<EmbedRequest> tiled = {
      existing(1, {1, 0, 0, 6, 6}), existing(2, {2, 0, 6, 6, 6}),
      existing(3, {3, 6, 0, 6, 6}), existing(4, {4, 6, 6, 6, 6})};
  const StageResult r = embed_dynamic_km({12, 12}, tiled, {fresh(9, 1, 1, 1)});
  CHECK(r.deferred_ids == std::vector<NetworkId>{9});
  CHECK(r.embedded_ids.empty());
  CHECK_FALSE(r.reembed_failure);
  CHECK(*placement_of(r, 1) == Placement{1, 0, 0, 6, 6});
  CHECK(*placement_of(r, 2) == Placement{2, 0, 6, 6, 6});
  CHECK(*placement_of(r, 3) == Placement{3, 6, 0, 6, 6});
  CHECK(*placement_of(r, 4) == Placement{4, 6, 6, 6, 6});
}

TEST_CASE("dynamic km falls back to previous placements when re-packing fails") {
  // Re-packing places the 3x3 and the 5x1 so that no 1x4 window survives,
  // even though the previous arrangement proves one exists.
  const std::vector<EmbedRequest> held = {existing(1, {1, 0, 2, 3, 3}),
                                          existing(3, {3, 3, 2, 1, 4}),
                                          existing(4, {4, 0, 0, 5, 1})};
  const StageResult r = embed_dynamic_km({5, 6}, held, {fresh(9, 1, 1, 1)});
  CHECK(r.reembed_failure);
  CHECK(*placement_of(r, 1) == Placement{1, 0, 2, 3, 3});
  CHECK(*placement_of(r, 3) == Placement{3, 3, 2, 1, 4});
  CHECK(*placement_of(r, 4) == Placement{4, 0, 0, 5, 1});
  CHECK(r.embedded_ids == std::vector<NetworkId>{9});

  // The fallback behaves exactly like the static variant plus the flag.
  const StageResult s = embed_static_km({5, 6}, held, {fresh(9, 1, 1, 1)});
  CHECK_FALSE(s.reembed_failure);
  CHECK(r.placements == s.placements);
  CHECK(r.embedded_ids == s.embedded_ids);
  CHECK(r.deferred_ids == s.deferred_ids);
}

TEST_CASE("dynamic km rejects existing loads beyond the substrate capacity") {
  const std::vector<EmbedRequest> held = {existing(1, {1, 0, 0, 2, 2}),
                                          existing(2, {2, 0, 2, 2, 2})};
  CHECK_THROWS_AS(embed_dynamic_km({2, 3}, held, {}), InvalidStateError);
}

TEST_CASE("static km validates previous placements") {
  EmbedRequest no_previous;
  no_previous.id = 1;
  no_previous.kind = RequestKind::kExisting;
  CHECK_THROWS_AS(embed_static_km({5, 5}, {no_previous}, {}), InvalidStateError);

  const std::vector<EmbedRequest> overlapping = {existing(1, {1, 0, 0, 2, 2}),
                                                 existing(2, {2, 1, 1, 2, 2})};
  CHECK_THROWS_AS(embed_static_km({5, 5}, overlapping, {}), InvalidStateError);

  CHECK_THROWS_AS(embed_static_km({5, 5}, {}, {fresh(1, 1, 0, 1)}),
                  InvalidStateError);
}

TEST_CASE("greedy embeds the largest feasible combination per level") {
  const std::vector<std::vector<EmbedRequest>> levels = {
      {fresh(1, 1, 2, 2), fresh(2, 1, 3, 3)}};
  const StageResult r = embed_dynamic_greedy({5, 5}, {}, levels);
  REQUIRE(r.deferred_ids.empty());
  CHECK(*placement_of(r, 2) == Placement{2, 0, 0, 3, 3});
  CHECK(*placement_of(r, 1) == Placement{1, 0, 3, 2, 2});
  CHECK_FALSE(r.combination_cap_hit);
  CHECK(check_stage_result({5, 5}, {}, levels, r, false).empty());
}

TEST_CASE("greedy filters combinations whose total area cannot fit") {
  // Two 4x4 requests on a 5x5 substrate: the pair exceeds the capacity, so
  // the first single-request combination wins.
  const std::vector<std::vector<EmbedRequest>> levels = {
      {fresh(1, 1, 4, 4), fresh(2, 1, 4, 4)}};
  const StageResult r = embed_dynamic_greedy({5, 5}, {}, levels);
  CHECK(r.embedded_ids == std::vector<NetworkId>{1});
  CHECK(r.deferred_ids == std::vector<NetworkId>{2});
}

TEST_CASE("greedy holds committed lower levels when trying higher ones") {
  // Level 1 consumes 9 of 16 cells; the level-2 request would need 9 more,
  // so every level-2 combination is filtered and the request defers.
  const std::vector<std::vector<EmbedRequest>> levels = {{fresh(1, 1, 3, 3)},
                                                         {fresh(2, 2, 3, 3)}};
  const StageResult r = embed_dynamic_greedy({4, 4}, {}, levels);
  CHECK(r.embedded_ids == std::vector<NetworkId>{1});
  CHECK(r.deferred_ids == std::vector<NetworkId>{2});
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0].network_id == 1);
}

TEST_CASE("greedy keeps existing tenants through every level") {
  const std::vector<EmbedRequest> held = {existing(7, {7, 0, 0, 2, 2})};
  const std::vector<std::vector<EmbedRequest>> levels = {
      {}, {fresh(1, 2, 2, 2)}, {fresh(2, 3, 1, 1)}};
  const StageResult r = embed_dynamic_greedy({4, 4}, held, levels);
  CHECK(placement_of(r, 7) != nullptr);
  CHECK(r.embedded_ids == std::vector<NetworkId>{1, 2});
  CHECK(check_stage_result({4, 4}, held, levels, r, false).empty());
}

TEST_CASE("greedy ties between equal-area combinations follow mask order") {
  // Only one of the two 2x2 requests fits; the singleton {r1} precedes {r2}.
  const std::vector<std::vector<EmbedRequest>> levels = {
      {fresh(1, 1, 2, 2), fresh(2, 1, 2, 2)}};
  const StageResult r = embed_dynamic_greedy({2, 2}, {}, levels);
  CHECK(r.embedded_ids == std::vector<NetworkId>{1});
  CHECK(r.deferred_ids == std::vector<NetworkId>{2});
}

TEST_CASE("greedy falls back to ordered placement past the combination cap") {
  std::vector<EmbedRequest> level;
  for (NetworkId id = 1; id <= 3; ++id) {
    level.push_back(fresh(id, 1, 1, 1));
  }
  const StageResult r = embed_dynamic_greedy({5, 5}, {}, {level}, 2);
  CHECK(r.combination_cap_hit);
  CHECK(r.embedded_ids == std::vector<NetworkId>{1, 2, 3});
  CHECK(r.deferred_ids.empty());
}

TEST_CASE("greedy validates level priorities and the cap") {
  const std::vector<std::vector<EmbedRequest>> mislabeled = {{fresh(1, 2, 1, 1)}};
  CHECK_THROWS_AS(embed_dynamic_greedy({5, 5}, {}, mislabeled), InvalidStateError);
  CHECK_THROWS_AS(embed_dynamic_greedy({5, 5}, {}, {}, -1), InvalidStateError);
}

TEST_CASE("greedy with empty levels only re-embeds the existing tenants") {
  const std::vector<EmbedRequest> held = {existing(1, {1, 2, 2, 2, 2})};
  const StageResult r = embed_dynamic_greedy({5, 5}, held, {{}, {}});
  CHECK(r.embedded_ids.empty());
  CHECK(r.deferred_ids.empty());
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0] == Placement{1, 0, 0, 2, 2});
}

TEST_CASE("stage_revenue weighs embedded areas by priority cost") {
  const std::vector<std::vector<EmbedRequest>> levels = {
      {fresh(1, 1, 2, 3)}, {fresh(2, 2, 1, 2)}};
  StageResult r;
  r.placements = {{1, 0, 0, 2, 3}, {2, 2, 0, 1, 2}};
  r.embedded_ids = {1, 2};
  CHECK(stage_revenue(r, {}, levels, {0.5, 0.3}) == doctest::Approx(3.6));

  StageResult unknown = r;
  unknown.placements.push_back({9, 4, 4, 1, 1});
  CHECK_THROWS_AS(stage_revenue(unknown, {}, levels, {0.5, 0.3}),
                  InvalidStateError);
}

}  // namespace
}  // namespace vne
