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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vne/embedders.hpp"
#include "vne/errors.hpp"

namespace vne {

namespace {

// Plain occupancy bitmap for the search; no ownership tracking needed.
class ScratchGrid {
 public:
  explicit ScratchGrid(SubstrateDims dims)
      : freq_(dims.freq), time_(dims.time),
        occ_(static_cast<std::size_t>(dims.cells()), 0) {}

  bool fits(const Placement& p) const {
    if (p.origin_f < 0 || p.origin_t < 0 || p.origin_f + p.span_f > freq_ ||
        p.origin_t + p.span_t > time_) {
      return false;
    }
    for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
      for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
        if (occ_[index(fi, tj)]) return false;
      }
    }
    return true;
  }

  void set(const Placement& p, bool value) {
    for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
      for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
        occ_[index(fi, tj)] = value ? 1 : 0;
      }
    }
  }

  int freq() const { return freq_; }
  int time() const { return time_; }

 private:
  std::size_t index(int fi, int tj) const {
    return static_cast<std::size_t>(fi) * time_ + tj;
  }

  int freq_;
  int time_;
  std::vector<char> occ_;
};

struct Item {
  NetworkId id = 0;
  int span_f = 1;
  int span_t = 1;
  bool mandatory = false;
  std::optional<Placement> fixed;  // static mode locks mandatory items here
  double weight = 0.0;             // objective gain when embedded; 0 for mandatory
};

// Branch and bound over one stage. Items are scanned in order; each is tried
// at every position row-major, optionals additionally as "not embedded" after
// all positions. Only strictly better solutions replace the incumbent, so the
// first optimum found is kept: the lexicographically smallest assignment.
class StageSolver {
 public:
  StageSolver(SubstrateDims dims, std::vector<Item> items)
      : grid_(dims), items_(std::move(items)) {
    suffix_.assign(items_.size() + 1, 0.0);
    for (std::size_t i = items_.size(); i > 0; --i) {
      suffix_[i - 1] = suffix_[i] + items_[i - 1].weight;
    }
    assigned_.assign(items_.size(), std::nullopt);
  }

  bool solve() {
    dfs(0, 0.0);
    return have_best_;
  }

  const std::vector<std::optional<Placement>>& solution() const { return best_assigned_; }
  double value() const { return best_value_; }

 private:
  void dfs(std::size_t idx, double current) {
    // No strict improvement possible below this node.
    if (have_best_ && current + suffix_[idx] <= best_value_) return;
    if (idx == items_.size()) {
      best_value_ = current;
      best_assigned_ = assigned_;
      have_best_ = true;
      return;
    }
    const Item& item = items_[idx];
    if (item.fixed.has_value()) {
      if (grid_.fits(*item.fixed)) {
        grid_.set(*item.fixed, true);
        assigned_[idx] = *item.fixed;
        dfs(idx + 1, current);
        grid_.set(*item.fixed, false);
      }
      return;
    }
    for (int of = 0; of + item.span_f <= grid_.freq(); ++of) {
      for (int ot = 0; ot + item.span_t <= grid_.time(); ++ot) {
        const Placement p{item.id, of, ot, item.span_f, item.span_t};
        if (!grid_.fits(p)) continue;
        grid_.set(p, true);
        assigned_[idx] = p;
        dfs(idx + 1, current + item.weight);
        grid_.set(p, false);
      }
    }
    if (!item.mandatory) {
      assigned_[idx] = std::nullopt;
      dfs(idx + 1, current);
    }
  }

  ScratchGrid grid_;
  std::vector<Item> items_;
  std::vector<double> suffix_;  // suffix_[i] = weight still winnable from item i on
  std::vector<std::optional<Placement>> assigned_;
  std::vector<std::optional<Placement>> best_assigned_;
  double best_value_ = -1.0;
  bool have_best_ = false;
};

double cost_of(const std::vector<double>& priority_costs, int priority) {
  if (priority < 1 || static_cast<std::size_t>(priority) > priority_costs.size()) {
    throw InvalidStateError("no cost for priority " + std::to_string(priority));
  }
  return priority_costs[static_cast<std::size_t>(priority - 1)];
}

}  // namespace

ExactResult embed_exact(SubstrateDims dims,
                        const std::vector<EmbedRequest>& existing,
                        const std::vector<std::vector<EmbedRequest>>& fresh_by_priority,
                        ExactMode mode, const std::vector<double>& priority_costs) {
  long mandatory_area = 0;
  for (const EmbedRequest& e : existing) {
    if (e.kind != RequestKind::kExisting) {
      throw InvalidStateError("request " + std::to_string(e.id) +
                              " in the existing set is not marked existing");
    }
    if (e.span_f < 1 || e.span_t < 1) {
      throw InvalidStateError("request " + std::to_string(e.id) +
                              " has non-positive spans");
    }
    if (mode == ExactMode::kStatic) {
      if (!e.previous.has_value()) {
        throw InvalidStateError("existing network " + std::to_string(e.id) +
                                " has no previous placement");
      }
      const Placement& prev = *e.previous;
      if (prev.network_id != e.id || prev.span_f != e.span_f ||
          prev.span_t != e.span_t) {
        throw InvalidStateError("previous placement of network " +
                                std::to_string(e.id) + " does not match the request");
      }
    }
    mandatory_area += e.area();
  }
  for (std::size_t level = 0; level < fresh_by_priority.size(); ++level) {
    for (const EmbedRequest& r : fresh_by_priority[level]) {
      if (r.span_f < 1 || r.span_t < 1) {
        throw InvalidStateError("request " + std::to_string(r.id) +
                                " has non-positive spans");
      }
      if (r.priority != static_cast<int>(level) + 1) {
        throw InvalidStateError("request " + std::to_string(r.id) + " with priority " +
                                std::to_string(r.priority) + " listed at level " +
                                std::to_string(level + 1));
      }
      cost_of(priority_costs, r.priority);  // fail fast on missing costs
    }
  }
  if (mandatory_area > dims.cells()) {
    throw InfeasibleError("existing networks cover " + std::to_string(mandatory_area) +
                          " cells, substrate has " + std::to_string(dims.cells()));
  }

  // The mandatory set grows stage by stage: existing networks first, then the
  // requests committed at each level, in that order. In static mode every
  // mandatory item is locked to its placement; in dynamic mode each stage may
  // re-pack all of them.
  struct Mandatory {
    const EmbedRequest* request;
    std::optional<Placement> locked;  // static mode only
  };
  std::vector<Mandatory> mandatory;
  mandatory.reserve(existing.size());
  for (const EmbedRequest& e : existing) {
    std::optional<Placement> locked;
    if (mode == ExactMode::kStatic) locked = *e.previous;
    mandatory.push_back({&e, locked});
  }

  const bool anything_to_solve =
      !existing.empty() ||
      std::any_of(fresh_by_priority.begin(), fresh_by_priority.end(),
                  [](const auto& level) { return !level.empty(); });

  StageResult out;
  if (!anything_to_solve) {
    return ExactResult{out, 0.0};
  }

  auto build_items = [&](const std::vector<EmbedRequest>* optionals) {
    std::vector<Item> items;
    items.reserve(mandatory.size() + (optionals ? optionals->size() : 0));
    for (const Mandatory& m : mandatory) {
      items.push_back({m.request->id, m.request->span_f, m.request->span_t, true,
                       m.locked, 0.0});
    }
    if (optionals) {
      for (const EmbedRequest& r : *optionals) {
        items.push_back({r.id, r.span_f, r.span_t, false, std::nullopt,
                         cost_of(priority_costs, r.priority) *
                             static_cast<double>(r.area())});
      }
    }
    return items;
  };

  // Per-item placements from the most recent stage: the mandatory list
  // followed by that stage's optionals, skipped optionals empty.
  std::vector<std::optional<Placement>> last_solution;

  auto run_stage = [&](const std::vector<EmbedRequest>* optionals) {
    StageSolver solver(dims, build_items(optionals));
    if (!solver.solve()) {
      throw InfeasibleError("mandatory networks cannot all be embedded");
    }
    last_solution = solver.solution();
  };

  // Stage 0: the existing networks alone.
  run_stage(nullptr);

  for (const std::vector<EmbedRequest>& level : fresh_by_priority) {
    if (level.empty()) continue;
    run_stage(&level);
    // Commit the embedded requests of this level.
    const std::size_t base = mandatory.size();
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::optional<Placement>& placed = last_solution[base + i];
      if (placed.has_value()) {
        std::optional<Placement> locked;
        if (mode == ExactMode::kStatic) locked = *placed;
        mandatory.push_back({&level[i], locked});
        out.embedded_ids.push_back(level[i].id);
      } else {
        out.deferred_ids.push_back(level[i].id);
      }
    }
  }

  for (const std::optional<Placement>& placed : last_solution) {
    if (placed.has_value()) out.placements.push_back(*placed);
  }

  const double revenue = stage_revenue(out, existing, fresh_by_priority, priority_costs);
  return ExactResult{out, revenue};
}

}  // namespace vne
