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

#include "vne/verify.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace vne {

std::vector<std::string> check_stage_result(
    SubstrateDims dims, const std::vector<EmbedRequest>& existing,
    const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
    const StageResult& result, bool static_mode) {
  std::vector<std::string> violations;
  auto report = [&violations](std::string message) {
    violations.push_back(std::move(message));
  };

  std::unordered_map<NetworkId, const EmbedRequest*> known;
  for (const EmbedRequest& e : existing) known[e.id] = &e;
  for (const auto& level : fresh_by_priority) {
    for (const EmbedRequest& r : level) known[r.id] = &r;
  }

  // Deliberately separate cell marking, not OccupancyGrid.
  std::vector<int> coverage(static_cast<std::size_t>(dims.cells()), 0);
  std::unordered_map<NetworkId, Placement> placed;
  for (const Placement& p : result.placements) {
    if (!placed.emplace(p.network_id, p).second) {
      report("network " + std::to_string(p.network_id) + " is placed twice");
      continue;
    }
    const auto it = known.find(p.network_id);
    if (it == known.end()) {
      report("placement for unknown network " + std::to_string(p.network_id));
      continue;
    }
    if (p.span_f != it->second->span_f || p.span_t != it->second->span_t) {
      report("network " + std::to_string(p.network_id) + " spans " +
             std::to_string(p.span_f) + "x" + std::to_string(p.span_t) +
             ", request wants " + std::to_string(it->second->span_f) + "x" +
             std::to_string(it->second->span_t));
    }
    if (p.origin_f < 0 || p.origin_t < 0 || p.span_f < 1 || p.span_t < 1 ||
        p.origin_f + p.span_f > dims.freq || p.origin_t + p.span_t > dims.time) {
      report("network " + std::to_string(p.network_id) + " exceeds the substrate");
      continue;
    }
    for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
      for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
        ++coverage[static_cast<std::size_t>(fi) * dims.time + tj];
      }
    }
  }
  for (int fi = 0; fi < dims.freq; ++fi) {
    for (int tj = 0; tj < dims.time; ++tj) {
      if (coverage[static_cast<std::size_t>(fi) * dims.time + tj] > 1) {
        report("cell (" + std::to_string(fi) + "," + std::to_string(tj) +
               ") is assigned to multiple networks");
      }
    }
  }

  for (const EmbedRequest& e : existing) {
    const auto it = placed.find(e.id);
    if (it == placed.end()) {
      report("existing network " + std::to_string(e.id) + " is not embedded");
      continue;
    }
    if (static_mode) {
      if (!e.previous.has_value()) {
        report("existing network " + std::to_string(e.id) +
               " has no previous placement to hold");
      } else if (!(it->second == *e.previous)) {
        report("existing network " + std::to_string(e.id) +
               " moved in static mode");
      }
    }
  }

  std::unordered_set<NetworkId> embedded(result.embedded_ids.begin(),
                                         result.embedded_ids.end());
  std::unordered_set<NetworkId> deferred(result.deferred_ids.begin(),
                                         result.deferred_ids.end());
  if (embedded.size() != result.embedded_ids.size()) {
    report("embedded_ids contains duplicates");
  }
  if (deferred.size() != result.deferred_ids.size()) {
    report("deferred_ids contains duplicates");
  }
  for (const auto& level : fresh_by_priority) {
    for (const EmbedRequest& r : level) {
      const bool has_placement = placed.count(r.id) != 0;
      const bool is_embedded = embedded.count(r.id) != 0;
      const bool is_deferred = deferred.count(r.id) != 0;
      if (is_embedded == is_deferred) {
        report("new request " + std::to_string(r.id) +
               " must be either embedded or deferred");
      }
      if (is_embedded != has_placement) {
        report("new request " + std::to_string(r.id) +
               (has_placement ? " is placed but not reported embedded"
                              : " is reported embedded but not placed"));
      }
    }
  }

  return violations;
}

}  // namespace vne
