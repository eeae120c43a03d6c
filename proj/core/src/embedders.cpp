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

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "vne/errors.hpp"

namespace vne {

std::string to_string(EmbedderMode mode) {
  switch (mode) {
    case EmbedderMode::kStaticKm:
      return "static-km";
    case EmbedderMode::kDynamicKm:
      return "dynamic-km";
    case EmbedderMode::kDynamicGreedy:
      return "dynamic-greedy";
    case EmbedderMode::kExactStatic:
      return "exact-static";
    case EmbedderMode::kExactDynamic:
      return "exact-dynamic";
  }
  throw InvalidStateError("unknown embedder mode");
}

std::optional<EmbedderMode> embedder_mode_from_string(const std::string& token) {
  if (token == "static-km") return EmbedderMode::kStaticKm;
  if (token == "dynamic-km") return EmbedderMode::kDynamicKm;
  if (token == "dynamic-greedy") return EmbedderMode::kDynamicGreedy;
  if (token == "exact-static") return EmbedderMode::kExactStatic;
  if (token == "exact-dynamic") return EmbedderMode::kExactDynamic;
  return std::nullopt;
}

namespace {

// New requests are served by priority (1 first), larger ones first within a
// level, ties by arrival order then id.
bool fresh_before(const EmbedRequest& a, const EmbedRequest& b) {
  if (a.priority != b.priority) return a.priority < b.priority;
  if (a.area() != b.area()) return a.area() > b.area();
  if (a.arrival_slot != b.arrival_slot) return a.arrival_slot < b.arrival_slot;
  return a.id < b.id;
}

// Existing networks re-embed largest first, ties by id.
bool existing_before(const EmbedRequest& a, const EmbedRequest& b) {
  if (a.area() != b.area()) return a.area() > b.area();
  return a.id < b.id;
}

void validate_spans(const EmbedRequest& r) {
  if (r.span_f < 1 || r.span_t < 1) {
    throw InvalidStateError("request " + std::to_string(r.id) +
                            " has non-positive spans");
  }
}

// Smallest feasible maximal vacant region, EDI-minimizing corner. Mutates the
// grid on success.
std::optional<Placement> km_place(OccupancyGrid& grid, const EmbedRequest& r) {
  const auto regions = grid.find_vacant_regions(r.span_f, r.span_t);
  if (regions.empty()) return std::nullopt;
  const Placement p = best_corner(grid, regions.front(), r.span_f, r.span_t, r.id);
  grid.place(p);
  return p;
}

// Rebuilds the occupancy from the previous placements of the existing
// networks. Missing, mismatched or overlapping placements mean the caller
// handed in inconsistent state.
OccupancyGrid grid_from_previous(SubstrateDims dims,
                                 const std::vector<EmbedRequest>& existing) {
  OccupancyGrid grid(dims);
  for (const EmbedRequest& e : existing) {
    if (e.kind != RequestKind::kExisting) {
      throw InvalidStateError("request " + std::to_string(e.id) +
                              " in the existing set is not marked existing");
    }
    if (!e.previous.has_value()) {
      throw InvalidStateError("existing network " + std::to_string(e.id) +
                              " has no previous placement");
    }
    validate_spans(e);
    const Placement& prev = *e.previous;
    if (prev.network_id != e.id || prev.span_f != e.span_f || prev.span_t != e.span_t) {
      throw InvalidStateError("previous placement of network " + std::to_string(e.id) +
                              " does not match the request");
    }
    try {
      grid.place(prev);
    } catch (const OverlapError&) {
      throw InvalidStateError("previous placements overlap at network " +
                              std::to_string(e.id));
    } catch (const OutOfBoundsError&) {
      throw InvalidStateError("previous placement of network " + std::to_string(e.id) +
                              " exceeds the substrate");
    }
  }
  return grid;
}

// Dynamic phase 1: re-embed the existing networks from an empty grid, largest
// first. Falls back to the previous placements when re-packing fails.
struct ReembedOutcome {
  OccupancyGrid grid;
  std::vector<Placement> placements;  // existing networks, placement order
  bool fallback = false;
};

ReembedOutcome reembed_existing(SubstrateDims dims,
                                const std::vector<EmbedRequest>& existing) {
  long total_area = 0;
  for (const EmbedRequest& e : existing) {
    validate_spans(e);
    total_area += e.area();
  }
  if (total_area > dims.cells()) {
    throw InvalidStateError("existing networks cover " + std::to_string(total_area) +
                            " cells, substrate has " + std::to_string(dims.cells()));
  }

  std::vector<EmbedRequest> order = existing;
  std::sort(order.begin(), order.end(), existing_before);

  ReembedOutcome out{OccupancyGrid(dims), {}, false};
  for (const EmbedRequest& e : order) {
    const auto placed = km_place(out.grid, e);
    if (!placed.has_value()) {
      ReembedOutcome fallback{grid_from_previous(dims, existing), {}, true};
      for (const EmbedRequest& kept : existing) {
        fallback.placements.push_back(*kept.previous);
      }
      return fallback;
    }
    out.placements.push_back(*placed);
  }
  return out;
}

// Places the new requests one by one in service order; unplaceable ones are
// deferred. Appends to the result and mutates the grid.
void place_fresh(OccupancyGrid& grid, const std::vector<EmbedRequest>& fresh,
                 StageResult& result) {
  std::vector<EmbedRequest> order = fresh;
  std::sort(order.begin(), order.end(), fresh_before);
  for (const EmbedRequest& r : order) {
    validate_spans(r);
    const auto placed = km_place(grid, r);
    if (placed.has_value()) {
      result.placements.push_back(*placed);
      result.embedded_ids.push_back(r.id);
    } else {
      result.deferred_ids.push_back(r.id);
    }
  }
}

}  // namespace

StageResult embed_static_km(SubstrateDims dims,
                            const std::vector<EmbedRequest>& existing,
                            const std::vector<EmbedRequest>& fresh) {
  OccupancyGrid grid = grid_from_previous(dims, existing);
  StageResult result;
  for (const EmbedRequest& e : existing) {
    result.placements.push_back(*e.previous);
  }
  place_fresh(grid, fresh, result);
  return result;
}

StageResult embed_dynamic_km(SubstrateDims dims,
                             const std::vector<EmbedRequest>& existing,
                             const std::vector<EmbedRequest>& fresh) {
  ReembedOutcome base = reembed_existing(dims, existing);
  StageResult result;
  result.placements = std::move(base.placements);
  result.reembed_failure = base.fallback;
  place_fresh(base.grid, fresh, result);
  return result;
}

CombinationSet enumerate_combinations(std::size_t count, std::size_t cap) {
  CombinationSet set;
  if (count > cap || count >= 32) {
    set.exploded = true;
    return set;
  }
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << count);
  set.masks.reserve(limit > 0 ? limit - 1 : 0);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    set.masks.push_back(mask);
  }
  return set;
}

StageResult embed_dynamic_greedy(
    SubstrateDims dims, const std::vector<EmbedRequest>& existing,
    const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
    int combination_cap) {
  if (combination_cap < 0) {
    throw InvalidStateError("combination cap must be non-negative");
  }
  // Phase 1 does not depend on the chosen combination, so it runs once and
  // every candidate below extends a copy of this grid. This matches running
  // dynamic KM per candidate: new requests sort after the already committed
  // (higher-priority) ones, so the shared prefix evolves identically.
  ReembedOutcome base = reembed_existing(dims, existing);
  long used_area = 0;
  for (const EmbedRequest& e : existing) used_area += e.area();

  StageResult result;
  result.placements = base.placements;
  result.reembed_failure = base.fallback;

  OccupancyGrid grid = base.grid;
  for (std::size_t li = 0; li < fresh_by_priority.size(); ++li) {
    const std::vector<EmbedRequest>& level = fresh_by_priority[li];
    if (level.empty()) continue;
    for (const EmbedRequest& r : level) {
      validate_spans(r);
      if (r.priority != static_cast<int>(li) + 1) {
        throw InvalidStateError("request " + std::to_string(r.id) + " with priority " +
                                std::to_string(r.priority) + " listed at level " +
                                std::to_string(li + 1));
      }
    }

    std::vector<EmbedRequest> order = level;
    std::sort(order.begin(), order.end(), fresh_before);

    const CombinationSet combos =
        enumerate_combinations(order.size(), static_cast<std::size_t>(combination_cap));
    if (combos.exploded) {
      // Too many subsets to enumerate; take what fits in service order.
      result.combination_cap_hit = true;
      StageResult level_result;
      place_fresh(grid, order, level_result);
      for (const Placement& p : level_result.placements) {
        result.placements.push_back(p);
        used_area += p.area();
      }
      result.embedded_ids.insert(result.embedded_ids.end(),
                                 level_result.embedded_ids.begin(),
                                 level_result.embedded_ids.end());
      result.deferred_ids.insert(result.deferred_ids.end(),
                                 level_result.deferred_ids.begin(),
                                 level_result.deferred_ids.end());
      continue;
    }

    // Candidate combinations: subsets that fit the remaining capacity, tried
    // largest total area first. Equal areas prefer more requests (the goal is
    // to embed as many networks as possible), then keep enumeration order.
    // The empty subset sorts last and always succeeds, so the level cannot
    // wedge.
    struct Candidate {
      std::uint32_t mask;
      long total_area;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(combos.masks.size() + 1);
    for (const std::uint32_t mask : combos.masks) {
      long area = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (mask & (1u << i)) area += order[i].area();
      }
      if (used_area + area <= dims.cells()) {
        candidates.push_back({mask, area});
      }
    }
    candidates.push_back({0u, 0});
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.total_area != b.total_area) return a.total_area > b.total_area;
                       return std::popcount(a.mask) > std::popcount(b.mask);
                     });

    for (const Candidate& candidate : candidates) {
      OccupancyGrid attempt = grid;
      std::vector<Placement> placed;
      bool complete = true;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (!(candidate.mask & (1u << i))) continue;
        const auto p = km_place(attempt, order[i]);
        if (!p.has_value()) {
          complete = false;
          break;
        }
        placed.push_back(*p);
      }
      if (!complete) continue;

      grid = std::move(attempt);
      used_area += candidate.total_area;
      for (const Placement& p : placed) result.placements.push_back(p);
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (candidate.mask & (1u << i)) {
          result.embedded_ids.push_back(order[i].id);
        } else {
          result.deferred_ids.push_back(order[i].id);
        }
      }
      break;
    }
  }
  return result;
}

double stage_revenue(const StageResult& result,
                     const std::vector<EmbedRequest>& existing,
                     const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
                     const std::vector<double>& priority_costs) {
  std::unordered_map<NetworkId, int> priority_of;
  for (const EmbedRequest& e : existing) priority_of[e.id] = e.priority;
  for (const std::vector<EmbedRequest>& level : fresh_by_priority) {
    for (const EmbedRequest& r : level) priority_of[r.id] = r.priority;
  }
  double revenue = 0.0;
  for (const Placement& p : result.placements) {
    const auto it = priority_of.find(p.network_id);
    if (it == priority_of.end()) {
      throw InvalidStateError("placement for unknown network " +
                              std::to_string(p.network_id));
    }
    const int priority = it->second;
    if (priority < 1 || static_cast<std::size_t>(priority) > priority_costs.size()) {
      throw InvalidStateError("no cost for priority " + std::to_string(priority));
    }
    revenue += priority_costs[static_cast<std::size_t>(priority - 1)] *
               static_cast<double>(p.area());
  }
  return revenue;
}

}  // namespace vne
