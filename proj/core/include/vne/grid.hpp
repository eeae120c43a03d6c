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

#ifndef VNE_GRID_HPP
#define VNE_GRID_HPP

#include <cstdint>
#include <vector>

#include "vne/errors.hpp"

namespace vne {

using NetworkId = std::int64_t;

// Substrate dimensions: freq frequency blocks by time time-domain blocks.
struct SubstrateDims {
  int freq = 0;
  int time = 0;

  long cells() const { return static_cast<long>(freq) * time; }
  bool operator==(const SubstrateDims&) const = default;
};

// Axis-aligned rectangle of resource blocks assigned to one network.
// Origins are 0-based grid indices, spans are block counts (>= 1).
struct Placement {
  NetworkId network_id = 0;
  int origin_f = 0;
  int origin_t = 0;
  int span_f = 0;
  int span_t = 0;

  long area() const { return static_cast<long>(span_f) * span_t; }
  bool operator==(const Placement&) const = default;
};

// A maximal vacant rectangle: every cell inside is vacant in the grid it was
// derived from and it cannot be extended in any direction.
struct VacantRegion {
  int origin_f = 0;
  int origin_t = 0;
  int span_f = 0;
  int span_t = 0;

  long area() const { return static_cast<long>(span_f) * span_t; }
  bool operator==(const VacantRegion&) const = default;
};

// Occupancy state of the substrate. Each occupied cell belongs to exactly one
// network and the cells of one network form a single rectangle. Grids are
// plain values; copying one gives an independent snapshot.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(SubstrateDims dims);

  const SubstrateDims& dims() const { return dims_; }
  bool occupied(int fi, int tj) const { return owner_[index(fi, tj)] >= 0; }
  // Owning network of a cell, or -1 when vacant.
  NetworkId owner(int fi, int tj) const { return owner_[index(fi, tj)]; }
  long occupied_cells() const { return occupied_cells_; }
  bool empty() const { return occupied_cells_ == 0; }
  // All placements, sorted by ascending network id.
  const std::vector<Placement>& placements() const { return placements_; }
  // Placement of the network, or nullptr when it owns no cell.
  const Placement* find_placement(NetworkId id) const;

  // Marks every cell covered by p as owned by p.network_id. Throws
  // OutOfBoundsError if p exceeds the substrate, OverlapError if any covered
  // cell is occupied, InvalidStateError if the network is already placed.
  void place(const Placement& p);

  // Frees every cell owned by the network. Throws UnknownNetworkError if the
  // network owns no cell.
  void remove(NetworkId id);

  bool rect_in_bounds(int origin_f, int origin_t, int span_f, int span_t) const;
  bool rect_vacant(int origin_f, int origin_t, int span_f, int span_t) const;

  // All maximal vacant rectangles with span_f >= min_f and span_t >= min_t,
  // sorted by ascending area, then (origin_f, origin_t), then span_f.
  std::vector<VacantRegion> find_vacant_regions(int min_f, int min_t) const;

  // Embedding Density Index: the number of internal 4-neighbour cell pairs
  // where exactly one cell is occupied. The substrate boundary is neutral.
  int edi() const;

  // Change of edi() if p were placed. The covered cells must be vacant.
  int edi_delta(const Placement& p) const;

  bool operator==(const OccupancyGrid& other) const;

 private:
  std::size_t index(int fi, int tj) const {
    return static_cast<std::size_t>(fi) * dims_.time + tj;
  }

  SubstrateDims dims_;
  std::vector<NetworkId> owner_;  // -1 = vacant
  std::vector<Placement> placements_;  // sorted by network id
  long occupied_cells_ = 0;
};

// The EDI-minimizing placement of a span_f x span_t rectangle anchored at one
// of the region's four corners. Ties are broken in the fixed order top-left,
// top-right, bottom-left, bottom-right. Throws RegionTooSmallError if the
// region cannot contain the rectangle.
Placement best_corner(const OccupancyGrid& grid, const VacantRegion& region,
                      int span_f, int span_t, NetworkId network_id);

}  // namespace vne

#endif  // VNE_GRID_HPP
