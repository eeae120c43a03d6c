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

#include "vne/grid.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace vne {

namespace {

std::string rect_str(int origin_f, int origin_t, int span_f, int span_t) {
  return "(" + std::to_string(origin_f) + "," + std::to_string(origin_t) + ")+" +
         std::to_string(span_f) + "x" + std::to_string(span_t);
}

bool id_less(const Placement& p, NetworkId id) { return p.network_id < id; }

}  // namespace

OccupancyGrid::OccupancyGrid(SubstrateDims dims) : dims_(dims) {
  if (dims.freq < 1 || dims.time < 1) {
    throw InvalidStateError("substrate dimensions must be positive, got " +
                            std::to_string(dims.freq) + "x" + std::to_string(dims.time));
  }
  owner_.assign(static_cast<std::size_t>(dims_.cells()), NetworkId{-1});
}

bool OccupancyGrid::rect_in_bounds(int origin_f, int origin_t, int span_f,
                                   int span_t) const {
  return origin_f >= 0 && origin_t >= 0 && span_f >= 1 && span_t >= 1 &&
         origin_f + span_f <= dims_.freq && origin_t + span_t <= dims_.time;
}

bool OccupancyGrid::rect_vacant(int origin_f, int origin_t, int span_f,
                                int span_t) const {
  assert(rect_in_bounds(origin_f, origin_t, span_f, span_t));
  for (int fi = origin_f; fi < origin_f + span_f; ++fi) {
    for (int tj = origin_t; tj < origin_t + span_t; ++tj) {
      if (occupied(fi, tj)) return false;
    }
  }
  return true;
}

const Placement* OccupancyGrid::find_placement(NetworkId id) const {
  auto it = std::lower_bound(placements_.begin(), placements_.end(), id, id_less);
  if (it == placements_.end() || it->network_id != id) return nullptr;
  return &*it;
}

void OccupancyGrid::place(const Placement& p) {
  if (!rect_in_bounds(p.origin_f, p.origin_t, p.span_f, p.span_t)) {
    throw OutOfBoundsError("placement " +
                           rect_str(p.origin_f, p.origin_t, p.span_f, p.span_t) +
                           " exceeds " + std::to_string(dims_.freq) + "x" +
                           std::to_string(dims_.time) + " substrate");
  }
  auto it = std::lower_bound(placements_.begin(), placements_.end(), p.network_id, id_less);
  if (it != placements_.end() && it->network_id == p.network_id) {
    throw InvalidStateError("network " + std::to_string(p.network_id) +
                            " is already placed");
  }
  for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
    for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
      if (occupied(fi, tj)) {
        throw OverlapError("cell (" + std::to_string(fi) + "," + std::to_string(tj) +
                           ") already owned by network " +
                           std::to_string(owner(fi, tj)));
      }
    }
  }
  for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
    for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
      owner_[index(fi, tj)] = p.network_id;
    }
  }
  placements_.insert(it, p);
  occupied_cells_ += p.area();
}

void OccupancyGrid::remove(NetworkId id) {
  auto it = std::lower_bound(placements_.begin(), placements_.end(), id, id_less);
  if (it == placements_.end() || it->network_id != id) {
    throw UnknownNetworkError("network " + std::to_string(id) + " owns no cell");
  }
  const Placement& p = *it;
  for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
    for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
      owner_[index(fi, tj)] = -1;
    }
  }
  occupied_cells_ -= p.area();
  placements_.erase(it);
}

// Sweeps bottom rows: height[tj] is the run of vacant cells in column tj
// ending at the current row. A rectangle is emitted once, at its bottom row,
// when it cannot be widened (neighbouring columns are shorter), cannot grow
// up (some column has exactly the minimum height) and cannot grow down (next
// row blocked or boundary).
std::vector<VacantRegion> OccupancyGrid::find_vacant_regions(int min_f,
                                                             int min_t) const {
  assert(min_f >= 1 && min_t >= 1);
  std::vector<VacantRegion> out;
  std::vector<int> height(static_cast<std::size_t>(dims_.time), 0);
  for (int fi = 0; fi < dims_.freq; ++fi) {
    for (int tj = 0; tj < dims_.time; ++tj) {
      height[tj] = occupied(fi, tj) ? 0 : height[tj] + 1;
    }
    for (int c1 = 0; c1 < dims_.time; ++c1) {
      if (height[c1] == 0) continue;
      int h = height[c1];
      bool down_blocked = false;
      for (int c2 = c1; c2 < dims_.time; ++c2) {
        if (height[c2] == 0) break;
        h = std::min(h, height[c2]);
        down_blocked = down_blocked || fi + 1 == dims_.freq || occupied(fi + 1, c2);
        const int right = (c2 + 1 < dims_.time) ? height[c2 + 1] : 0;
        if (right >= h) continue;  // still widens right at this height
        const int left = (c1 >= 1) ? height[c1 - 1] : 0;
        if (left >= h) continue;
        if (!down_blocked) continue;
        const int width = c2 - c1 + 1;
        if (h >= min_f && width >= min_t) {
          out.push_back(VacantRegion{fi - h + 1, c1, h, width});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VacantRegion& a, const VacantRegion& b) {
    if (a.area() != b.area()) return a.area() < b.area();
    if (a.origin_f != b.origin_f) return a.origin_f < b.origin_f;
    if (a.origin_t != b.origin_t) return a.origin_t < b.origin_t;
    return a.span_f < b.span_f;
  });
  return out;
}

int OccupancyGrid::edi() const {
  int borders = 0;
  for (int fi = 0; fi < dims_.freq; ++fi) {
    for (int tj = 0; tj < dims_.time; ++tj) {
      const bool occ = occupied(fi, tj);
      if (tj + 1 < dims_.time && occ != occupied(fi, tj + 1)) ++borders;
      if (fi + 1 < dims_.freq && occ != occupied(fi + 1, tj)) ++borders;
    }
  }
  return borders;
}

int OccupancyGrid::edi_delta(const Placement& p) const {
  assert(rect_in_bounds(p.origin_f, p.origin_t, p.span_f, p.span_t));
  assert(rect_vacant(p.origin_f, p.origin_t, p.span_f, p.span_t));
  // Edges interior to the rectangle stay border-free; only edges crossing the
  // rectangle's perimeter change.
  int delta = 0;
  auto outside = [&](int fi, int tj) {
    if (fi < 0 || fi >= dims_.freq || tj < 0 || tj >= dims_.time) return;
    delta += occupied(fi, tj) ? -1 : +1;
  };
  for (int tj = p.origin_t; tj < p.origin_t + p.span_t; ++tj) {
    outside(p.origin_f - 1, tj);
    outside(p.origin_f + p.span_f, tj);
  }
  for (int fi = p.origin_f; fi < p.origin_f + p.span_f; ++fi) {
    outside(fi, p.origin_t - 1);
    outside(fi, p.origin_t + p.span_t);
  }
  return delta;
}

bool OccupancyGrid::operator==(const OccupancyGrid& other) const {
  return dims_ == other.dims_ && owner_ == other.owner_ &&
         placements_ == other.placements_;
}

Placement best_corner(const OccupancyGrid& grid, const VacantRegion& region,
                      int span_f, int span_t, NetworkId network_id) {
  if (region.span_f < span_f || region.span_t < span_t) {
    throw RegionTooSmallError("region " + rect_str(region.origin_f, region.origin_t,
                                                   region.span_f, region.span_t) +
                              " cannot contain " + std::to_string(span_f) + "x" +
                              std::to_string(span_t));
  }
  const int top = region.origin_f;
  const int bottom = region.origin_f + region.span_f - span_f;
  const int left = region.origin_t;
  const int right = region.origin_t + region.span_t - span_t;
  const int corners[4][2] = {{top, left}, {top, right}, {bottom, left}, {bottom, right}};

  Placement best{};
  int best_delta = 0;
  bool have_best = false;
  for (const auto& corner : corners) {
    const Placement candidate{network_id, corner[0], corner[1], span_f, span_t};
    const int delta = grid.edi_delta(candidate);
    if (!have_best || delta < best_delta) {
      best = candidate;
      best_delta = delta;
      have_best = true;
    }
  }
  return best;
}

}  // namespace vne
