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

#ifndef VNE_SIMULATOR_HPP
#define VNE_SIMULATOR_HPP

#include <optional>
#include <span>
#include <vector>

#include "vne/embedders.hpp"
#include "vne/grid.hpp"
#include "vne/traffic.hpp"

namespace vne {

// Per-block revenue weights by priority, strictly decreasing: serving a
// priority-1 block earns more than a priority-2 block, and so on.
class PriorityCosts {
 public:
  explicit PriorityCosts(std::vector<double> costs);

  int levels() const { return static_cast<int>(costs_.size()); }
  double of(int priority) const;
  const std::vector<double>& values() const { return costs_; }

 private:
  std::vector<double> costs_;
};

// Buffering budget by priority: a request is rejected once it has been
// offered to the embedder max_delay times without success.
class MaxDelays {
 public:
  explicit MaxDelays(std::vector<int> delays);

  int levels() const { return static_cast<int>(delays_.size()); }
  int of(int priority) const;
  const std::vector<int>& values() const { return delays_; }

 private:
  std::vector<int> delays_;
};

// A virtual network currently holding substrate resources. `remaining` counts
// the timeslots still to serve, including the current one.
struct ActiveNetwork {
  VNRequest request;
  Placement placement;
  int remaining = 0;
};

// A request waiting in the admission buffer. `slots_waited` counts failed
// embedding attempts so far.
struct BufferEntry {
  VNRequest request;
  int slots_waited = 0;
};

// A request whose admission was decided this timeslot.
struct ResolvedRequest {
  VNRequest request;
  bool accepted = false;
};

struct TimeslotMetrics {
  int slot = 0;
  double revenue = 0.0;
  // Rejected service share among the requests resolved this slot; empty when
  // nothing was resolved.
  std::optional<double> rejection_rate;
  int accepted = 0;
  int rejected = 0;
  int deferred = 0;  // buffer size after the slot
  double occupancy = 0.0;
  int reembed_failures = 0;  // 1 when dynamic re-embedding fell back this slot
};

// Revenue of the currently served networks: cost(priority) * area per network.
double revenue_of_slot(const std::vector<ActiveNetwork>& active,
                       const PriorityCosts& costs);

// Rejected share of the service (area * duration) resolved this slot, or empty
// when no request was resolved.
std::optional<double> rejection_rate_of_slot(const std::vector<ResolvedRequest>& resolved);

struct PrioritySlice {
  double resolved_service = 0.0;  // sum of area * duration over resolved requests
  double rejected_service = 0.0;
  long resolved_count = 0;
  long rejected_count = 0;
};

struct SimulationSummary {
  std::vector<TimeslotMetrics> per_slot;
  // Prefix means over slots 1..t; rejection skips slots with no resolution.
  std::vector<double> running_mean_revenue;
  std::vector<std::optional<double>> running_mean_rejection;
  double mean_revenue = 0.0;
  std::optional<double> mean_rejection;
  long total_arrivals = 0;
  long total_accepted = 0;
  long total_rejected = 0;
  long reembed_failures = 0;
  bool combination_cap_hit = false;
  std::vector<NetworkId> accepted_ids;  // admission order
  std::vector<NetworkId> rejected_ids;  // rejection order
  std::vector<PrioritySlice> per_priority;  // index = priority - 1

  // Rejected service share among resolved priority-p requests over the whole
  // run; empty when none were resolved.
  std::optional<double> priority_rejection(int priority) const;
};

// Discrete-time embedding simulation. Each step: expire finished networks,
// buffer the new arrivals, run the embedder over the active networks and the
// buffer, activate what embedded, age what did not and reject entries that
// exhausted their delay budget.
class Simulation {
 public:
  Simulation(SubstrateDims dims, EmbedderMode mode, PriorityCosts costs,
             MaxDelays delays, int combination_cap = kDefaultCombinationCap);

  TimeslotMetrics step(int slot, std::span<const VNRequest> arrivals);

  const OccupancyGrid& grid() const { return grid_; }
  const std::vector<ActiveNetwork>& active() const { return active_; }
  const std::vector<BufferEntry>& buffer() const { return buffer_; }
  // Requests accepted or rejected by the most recent step.
  const std::vector<ResolvedRequest>& last_resolved() const { return last_resolved_; }
  // The greedy embedder hit its combination cap in the most recent step.
  bool last_cap_hit() const { return last_cap_hit_; }

 private:
  StageResult embed(const std::vector<EmbedRequest>& existing,
                    const std::vector<BufferEntry>& waiting) const;

  SubstrateDims dims_;
  EmbedderMode mode_;
  PriorityCosts costs_;
  MaxDelays delays_;
  int combination_cap_;
  OccupancyGrid grid_;
  std::vector<ActiveNetwork> active_;
  std::vector<BufferEntry> buffer_;
  std::vector<ResolvedRequest> last_resolved_;
  bool last_cap_hit_ = false;
};

// Runs the whole trace through a fresh simulation and aggregates the metrics.
// Throws ConfigError when the trace's priority levels exceed the configured
// costs or delays.
SimulationSummary run_simulation(const Trace& trace, EmbedderMode mode,
                                 const PriorityCosts& costs, const MaxDelays& delays,
                                 int combination_cap = kDefaultCombinationCap);

}  // namespace vne

#endif  // VNE_SIMULATOR_HPP
