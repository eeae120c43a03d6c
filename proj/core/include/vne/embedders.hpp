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

#ifndef VNE_EMBEDDERS_HPP
#define VNE_EMBEDDERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vne/grid.hpp"

namespace vne {

// The embedding strategy used for a whole simulation run.
enum class EmbedderMode {
  kStaticKm,
  kDynamicKm,
  kDynamicGreedy,
  kExactStatic,
  kExactDynamic,
};

// Token form used in CLI flags, config files and output files.
std::string to_string(EmbedderMode mode);
std::optional<EmbedderMode> embedder_mode_from_string(const std::string& token);

enum class RequestKind { kNew, kExisting };

// One request handed to an embedding strategy for a single timeslot.
// Existing entries describe networks that already hold resources and must be
// embedded again; `previous` carries the placement they held entering the
// timeslot. New entries come from the arrival buffer.
struct EmbedRequest {
  NetworkId id = 0;
  int priority = 1;  // 1 = highest
  int span_f = 1;
  int span_t = 1;
  RequestKind kind = RequestKind::kNew;
  std::optional<Placement> previous;
  int arrival_slot = 0;  // ordering tie-break between equal-priority requests

  long area() const { return static_cast<long>(span_f) * span_t; }
};

// Outcome of one timeslot's embedding.
struct StageResult {
  std::vector<Placement> placements;    // everything embedded, existing included
  std::vector<NetworkId> embedded_ids;  // new requests embedded this timeslot
  std::vector<NetworkId> deferred_ids;  // new requests that did not fit
  // Dynamic re-embedding could not re-pack the existing networks; they were
  // kept at their previous placements and new requests placed around them.
  bool reembed_failure = false;
  // A greedy priority level exceeded the subset cap and fell back to
  // area-sorted placement for that level.
  bool combination_cap_hit = false;
};

inline constexpr int kDefaultCombinationCap = 12;

// Static Karnaugh-map embedding: existing networks keep their previous
// placements; new requests are sorted by priority, then decreasing area, then
// arrival order, then id, and each is placed into the smallest maximal vacant
// region at its EDI-minimizing corner. Throws InvalidStateError if the
// previous placements are missing or overlap.
StageResult embed_static_km(SubstrateDims dims,
                            const std::vector<EmbedRequest>& existing,
                            const std::vector<EmbedRequest>& fresh);

// Dynamic Karnaugh-map embedding: starts from an empty grid, re-embeds the
// existing networks in decreasing area order (ties by id), then places new
// requests as in the static variant. If re-packing the existing networks
// fails, every existing network keeps its previous placement instead and
// reembed_failure is set. Throws InvalidStateError if the existing networks'
// total area exceeds the substrate capacity.
StageResult embed_dynamic_km(SubstrateDims dims,
                             const std::vector<EmbedRequest>& existing,
                             const std::vector<EmbedRequest>& fresh);

// Dynamic greedy embedding: per priority level, enumerates the subsets of the
// level's requests, keeps those whose total area together with the running
// combination fits the substrate, and tries them largest-area first via
// dynamic Karnaugh-map embedding until one embeds completely. The running
// combination always survives (the empty subset is tried last), so the call
// terminates. fresh_by_priority[k-1] holds the level-k requests.
StageResult embed_dynamic_greedy(
    SubstrateDims dims, const std::vector<EmbedRequest>& existing,
    const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
    int combination_cap = kDefaultCombinationCap);

// All non-empty subsets of {0, ..., count-1} as bitmasks in ascending mask
// order while count <= cap; beyond the cap `exploded` is set and no masks are
// produced.
struct CombinationSet {
  std::vector<std::uint32_t> masks;
  bool exploded = false;
};
CombinationSet enumerate_combinations(std::size_t count, std::size_t cap);

enum class ExactMode { kStatic, kDynamic };

struct ExactResult {
  StageResult result;
  // Revenue of the final embedding: sum over embedded networks of
  // priority_cost * area.
  double revenue = 0.0;
};

// Exact staged optimizer. Stage 0 embeds the existing networks (all
// mandatory; fixed at their previous placements in static mode). Stage k then
// maximizes the embedded area of priority-k requests, re-packing the networks
// committed so far in dynamic mode and keeping them fixed in static mode.
// Among revenue-optimal solutions the lexicographically smallest placement
// vector wins (requests in commitment order, positions row-major, "not
// embedded" ordered last). priority_costs[p-1] is the per-block revenue
// weight of priority p. Exhaustive search: intended for small instances
// (capacity <= 64 cells, <= 8 requests); larger inputs work but may be slow.
// Throws InfeasibleError if the existing networks cannot all be embedded.
ExactResult embed_exact(SubstrateDims dims,
                        const std::vector<EmbedRequest>& existing,
                        const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
                        ExactMode mode, const std::vector<double>& priority_costs);

// Revenue of an embedding outcome: sum over placements of
// priority_cost(owner's priority) * area. Priorities are looked up in the
// given request lists.
double stage_revenue(const StageResult& result,
                     const std::vector<EmbedRequest>& existing,
                     const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
                     const std::vector<double>& priority_costs);

}  // namespace vne

#endif  // VNE_EMBEDDERS_HPP
