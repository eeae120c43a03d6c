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

#include "vne/simulator.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "vne/errors.hpp"

namespace vne {

PriorityCosts::PriorityCosts(std::vector<double> costs) : costs_(std::move(costs)) {
  if (costs_.empty()) {
    throw ConfigError("at least one priority cost is required");
  }
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    if (costs_[i] <= 0.0) {
      throw ConfigError("priority costs must be positive, got " +
                        std::to_string(costs_[i]) + " for priority " +
                        std::to_string(i + 1));
    }
    if (i > 0 && costs_[i] >= costs_[i - 1]) {
      throw ConfigError("priority costs must be strictly decreasing");
    }
  }
}

double PriorityCosts::of(int priority) const {
  if (priority < 1 || priority > levels()) {
    throw InvalidStateError("no cost for priority " + std::to_string(priority));
  }
  return costs_[static_cast<std::size_t>(priority - 1)];
}

MaxDelays::MaxDelays(std::vector<int> delays) : delays_(std::move(delays)) {
  if (delays_.empty()) {
    throw ConfigError("at least one max delay is required");
  }
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    if (delays_[i] < 1) {
      throw ConfigError("max delays must be at least 1, got " +
                        std::to_string(delays_[i]) + " for priority " +
                        std::to_string(i + 1));
    }
  }
}

int MaxDelays::of(int priority) const {
  if (priority < 1 || priority > levels()) {
    throw InvalidStateError("no max delay for priority " + std::to_string(priority));
  }
  return delays_[static_cast<std::size_t>(priority - 1)];
}

double revenue_of_slot(const std::vector<ActiveNetwork>& active,
                       const PriorityCosts& costs) {
  double revenue = 0.0;
  for (const ActiveNetwork& a : active) {
    revenue += costs.of(a.request.priority) * static_cast<double>(a.request.area());
  }
  return revenue;
}

std::optional<double> rejection_rate_of_slot(
    const std::vector<ResolvedRequest>& resolved) {
  double resolved_service = 0.0;
  double rejected_service = 0.0;
  for (const ResolvedRequest& r : resolved) {
    const double service =
        static_cast<double>(r.request.area()) * r.request.duration;
    resolved_service += service;
    if (!r.accepted) rejected_service += service;
  }
  if (resolved_service <= 0.0) return std::nullopt;
  return rejected_service / resolved_service;
}

std::optional<double> SimulationSummary::priority_rejection(int priority) const {
  if (priority < 1 || static_cast<std::size_t>(priority) > per_priority.size()) {
    return std::nullopt;
  }
  const PrioritySlice& slice = per_priority[static_cast<std::size_t>(priority - 1)];
  if (slice.resolved_service <= 0.0) return std::nullopt;
  return slice.rejected_service / slice.resolved_service;
}

Simulation::Simulation(SubstrateDims dims, EmbedderMode mode, PriorityCosts costs,
                       MaxDelays delays, int combination_cap)
    : dims_(dims),
      mode_(mode),
      costs_(std::move(costs)),
      delays_(std::move(delays)),
      combination_cap_(combination_cap),
      grid_(dims) {
  if (costs_.levels() != delays_.levels()) {
    throw ConfigError("priority costs cover " + std::to_string(costs_.levels()) +
                      " levels, max delays cover " + std::to_string(delays_.levels()));
  }
}

StageResult Simulation::embed(const std::vector<EmbedRequest>& existing,
                              const std::vector<BufferEntry>& waiting) const {
  std::vector<EmbedRequest> fresh;
  fresh.reserve(waiting.size());
  for (const BufferEntry& entry : waiting) {
    fresh.push_back({entry.request.id, entry.request.priority, entry.request.span_f,
                     entry.request.span_t, RequestKind::kNew, std::nullopt,
                     entry.request.arrival_slot});
  }
  switch (mode_) {
    case EmbedderMode::kStaticKm:
      return embed_static_km(dims_, existing, fresh);
    case EmbedderMode::kDynamicKm:
      return embed_dynamic_km(dims_, existing, fresh);
    case EmbedderMode::kDynamicGreedy:
    case EmbedderMode::kExactStatic:
    case EmbedderMode::kExactDynamic: {
      std::vector<std::vector<EmbedRequest>> by_priority(
          static_cast<std::size_t>(costs_.levels()));
      for (const EmbedRequest& r : fresh) {
        by_priority[static_cast<std::size_t>(r.priority - 1)].push_back(r);
      }
      if (mode_ == EmbedderMode::kDynamicGreedy) {
        return embed_dynamic_greedy(dims_, existing, by_priority, combination_cap_);
      }
      const ExactMode exact_mode = mode_ == EmbedderMode::kExactStatic
                                       ? ExactMode::kStatic
                                       : ExactMode::kDynamic;
      return embed_exact(dims_, existing, by_priority, exact_mode, costs_.values())
          .result;
    }
  }
  throw InvalidStateError("unknown embedder mode");
}

TimeslotMetrics Simulation::step(int slot, std::span<const VNRequest> arrivals) {
  // Expire networks that finished their last slot.
  for (ActiveNetwork& a : active_) --a.remaining;
  for (auto it = active_.begin(); it != active_.end();) {
    if (it->remaining <= 0) {
      grid_.remove(it->request.id);
      it = active_.erase(it);
    } else {
      ++it;
    }
  }

  for (const VNRequest& r : arrivals) {
    if (r.priority < 1 || r.priority > costs_.levels()) {
      throw InvalidStateError("request " + std::to_string(r.id) + " has priority " +
                              std::to_string(r.priority) + ", configured levels: " +
                              std::to_string(costs_.levels()));
    }
    buffer_.push_back({r, 0});
  }

  std::vector<EmbedRequest> existing;
  existing.reserve(active_.size());
  for (const ActiveNetwork& a : active_) {
    existing.push_back({a.request.id, a.request.priority, a.request.span_f,
                        a.request.span_t, RequestKind::kExisting, a.placement,
                        a.request.arrival_slot});
  }

  const StageResult result = embed(existing, buffer_);
  last_cap_hit_ = result.combination_cap_hit;

  // Re-book the substrate from scratch; dynamic modes may have moved networks.
  grid_ = OccupancyGrid(dims_);
  std::unordered_map<NetworkId, Placement> placed;
  for (const Placement& p : result.placements) {
    grid_.place(p);
    placed.emplace(p.network_id, p);
  }
  for (ActiveNetwork& a : active_) {
    const auto it = placed.find(a.request.id);
    if (it == placed.end()) {
      throw InvalidStateError("active network " + std::to_string(a.request.id) +
                              " missing from the embedding result");
    }
    a.placement = it->second;
  }

  last_resolved_.clear();
  TimeslotMetrics metrics;
  metrics.slot = slot;

  std::unordered_set<NetworkId> embedded(result.embedded_ids.begin(),
                                         result.embedded_ids.end());
  std::vector<BufferEntry> still_waiting;
  for (BufferEntry& entry : buffer_) {
    if (embedded.count(entry.request.id) != 0) {
      active_.push_back(
          {entry.request, placed.at(entry.request.id), entry.request.duration});
      last_resolved_.push_back({entry.request, true});
      ++metrics.accepted;
      continue;
    }
    ++entry.slots_waited;
    if (entry.slots_waited >= delays_.of(entry.request.priority)) {
      last_resolved_.push_back({entry.request, false});
      ++metrics.rejected;
    } else {
      still_waiting.push_back(entry);
    }
  }
  buffer_ = std::move(still_waiting);

  metrics.revenue = revenue_of_slot(active_, costs_);
  metrics.rejection_rate = rejection_rate_of_slot(last_resolved_);
  metrics.deferred = static_cast<int>(buffer_.size());
  metrics.occupancy =
      static_cast<double>(grid_.occupied_cells()) / static_cast<double>(dims_.cells());
  metrics.reembed_failures = result.reembed_failure ? 1 : 0;
  return metrics;
}

SimulationSummary run_simulation(const Trace& trace, EmbedderMode mode,
                                 const PriorityCosts& costs, const MaxDelays& delays,
                                 int combination_cap) {
  if (trace.priority_levels > costs.levels()) {
    throw ConfigError("trace uses " + std::to_string(trace.priority_levels) +
                      " priority levels, costs cover " + std::to_string(costs.levels()));
  }
  if (trace.priority_levels > delays.levels()) {
    throw ConfigError("trace uses " + std::to_string(trace.priority_levels) +
                      " priority levels, max delays cover " +
                      std::to_string(delays.levels()));
  }

  Simulation sim(trace.dims, mode, costs, delays, combination_cap);
  SimulationSummary summary;
  summary.per_priority.assign(static_cast<std::size_t>(costs.levels()), {});
  summary.total_arrivals = static_cast<long>(trace.requests.size());

  double revenue_sum = 0.0;
  double rejection_sum = 0.0;
  long rejection_slots = 0;

  std::size_t next = 0;
  for (int slot = 1; slot <= trace.horizon; ++slot) {
    std::size_t first = next;
    while (next < trace.requests.size() && trace.requests[next].arrival_slot == slot) {
      ++next;
    }
    const std::span<const VNRequest> arrivals(trace.requests.data() + first,
                                              next - first);
    const TimeslotMetrics metrics = sim.step(slot, arrivals);

    revenue_sum += metrics.revenue;
    summary.running_mean_revenue.push_back(revenue_sum / slot);
    if (metrics.rejection_rate.has_value()) {
      rejection_sum += *metrics.rejection_rate;
      ++rejection_slots;
    }
    if (rejection_slots > 0) {
      summary.running_mean_rejection.push_back(rejection_sum / rejection_slots);
    } else {
      summary.running_mean_rejection.push_back(std::nullopt);
    }

    summary.total_accepted += metrics.accepted;
    summary.total_rejected += metrics.rejected;
    summary.reembed_failures += metrics.reembed_failures;
    summary.combination_cap_hit = summary.combination_cap_hit || sim.last_cap_hit();

    for (const ResolvedRequest& r : sim.last_resolved()) {
      PrioritySlice& slice =
          summary.per_priority[static_cast<std::size_t>(r.request.priority - 1)];
      const double service =
          static_cast<double>(r.request.area()) * r.request.duration;
      slice.resolved_service += service;
      ++slice.resolved_count;
      if (r.accepted) {
        summary.accepted_ids.push_back(r.request.id);
      } else {
        slice.rejected_service += service;
        ++slice.rejected_count;
        summary.rejected_ids.push_back(r.request.id);
      }
    }

    summary.per_slot.push_back(metrics);
  }

  if (!summary.per_slot.empty()) {
    summary.mean_revenue = revenue_sum / static_cast<double>(summary.per_slot.size());
  }
  if (rejection_slots > 0) {
    summary.mean_rejection = rejection_sum / static_cast<double>(rejection_slots);
  }
  return summary;
}

}  // namespace vne
