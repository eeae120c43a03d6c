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

#ifndef VNE_VERIFY_HPP
#define VNE_VERIFY_HPP

#include <string>
#include <vector>

#include "vne/embedders.hpp"

namespace vne {

// Checks one timeslot's embedding outcome against the feasibility rules,
// independently of OccupancyGrid: placements inside the substrate, no cell
// assigned twice, spans matching the requests, every existing network
// embedded (at its previous placement when static_mode is set), each new
// request embedded at most once, and embedded_ids / deferred_ids consistent
// with the placements. Returns one message per violation; empty means the
// result is feasible.
std::vector<std::string> check_stage_result(
    SubstrateDims dims, const std::vector<EmbedRequest>& existing,
    const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
    const StageResult& result, bool static_mode);

}  // namespace vne

#endif  // VNE_VERIFY_HPP
