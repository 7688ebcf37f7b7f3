// Copyright 2026 The CSPRQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Regions with holes (outer ring + hole list + has-holes flag) and the
// subtraction / intersection operations that may split them into several
// subdivisions.

#ifndef CSPRQ_REGION_HPP_
#define CSPRQ_REGION_HPP_

#include <cstdint>
#include <vector>

#include "csprq/geometry.hpp"

namespace csprq {

class Region {
 public:
  explicit Region(SimplePolygon outer, std::vector<SimplePolygon> holes = {})
      : outer_(std::move(outer)), holes_(std::move(holes)) {}

  // The label domain: true iff the region has at least one hole.
  bool has_holes() const { return !holes_.empty(); }
  const SimplePolygon& outer() const { return outer_; }
  const std::vector<SimplePolygon>& holes() const { return holes_; }
  const Mbr& mbr() const { return outer_.mbr(); }

  // Caller guarantees the hole lies inside the outer ring and is disjoint
  // from existing holes.
  void add_hole(SimplePolygon hole) { holes_.push_back(std::move(hole)); }

 private:
  SimplePolygon outer_;
  std::vector<SimplePolygon> holes_;
};

// Pairwise interior-disjoint subdivisions; empty means an empty point set.
using RegionSet = std::vector<Region>;

struct OverlayCounters {
  std::uint64_t subtractions = 0;
  std::uint64_t intersections = 0;
};

// a \ p split into maximal connected subdivisions. A polygon strictly inside
// `a` becomes a new hole. Throws DegeneracyError when snapping collapses a
// ring.
RegionSet region_subtract(const Region& a, const SimplePolygon& p);

// Outer ring of `a` intersected with polygon `p`; holes of `a` are ignored.
RegionSet outer_intersect(const Region& a, const SimplePolygon& p);

// a ∩ r for an axis-aligned rectangle r: the outer ring is clipped first and
// every hole is then subtracted from every resulting subdivision, in stored
// order. Throws InvalidGeometry when r is not an axis-aligned rectangle.
RegionSet region_intersect_rect(const Region& a, const SimplePolygon& r,
                                OverlayCounters* counters = nullptr);

// Area of the outer ring minus the hole areas. Hole areas are summed in
// ascending order so the result does not depend on hole order.
double region_area(const Region& a);

// Sum of subdivision areas, accumulated in ascending order.
double regionset_area(const RegionSet& s);

// Closed membership: boundaries of the outer ring and of holes count as
// inside the region.
bool point_in_region(Point pt, const Region& a);
bool point_in_regionset(Point pt, const RegionSet& s);

// True if any edge of `p` comes within kEpsilon of any ring of `a`.
bool boundaries_touch(const Region& a, const SimplePolygon& p);

// `p` lies in the interior of `a` without touching its boundary. `a_box` is
// the box used for the cheap first test (may be looser than a.mbr()).
bool strictly_inside(const SimplePolygon& p, const Region& a, const Mbr& a_box);

// Both `a` and `b` intersect nowhere, not even on boundaries.
bool disjoint(const Region& a, const SimplePolygon& p);

bool is_axis_rectangle(const SimplePolygon& p);

}  // namespace csprq

#endif  // CSPRQ_REGION_HPP_
