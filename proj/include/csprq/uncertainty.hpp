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

// Uncertainty regions of moving objects under restricted areas.
//
// The uncertainty circle (recorded location, radius tau) is replaced by its
// inscribed regular xi-gon before any boolean geometry, so every region is
// polygonal. The region is then the xi-gon minus the candidate restricted
// areas, keeping only the piece that contains the recorded location.
//
// Two procedures produce the same region:
//   * basic: subtract candidates in the given order, carry every piece,
//     select the piece containing the location at the end;
//   * optimized: sort candidates by span (largest first), keep only the piece
//     containing the location after each split and shrink the pruning box
//     to it, skip candidates outside that box or disjoint from the piece,
//     defer candidates strictly inside the piece and carve them as holes at
//     the end, and leave the box untouched after non-splitting subtractions.

#ifndef CSPRQ_UNCERTAINTY_HPP_
#define CSPRQ_UNCERTAINTY_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "csprq/geometry.hpp"
#include "csprq/region.hpp"

namespace csprq {

struct MovingObject {
  std::uint64_t id = 0;
  Point location;  // last recorded location
  double tau = 0.0;

  // Box of the uncertainty circle: a 2*tau square centred on the location.
  Mbr mbr() const { return Mbr::square(location, tau); }
};

struct RestrictedArea {
  std::uint64_t id = 0;
  SimplePolygon shape;
};

// Regular xi-gon inscribed in the circle (center, tau); vertex i sits at
// angle 2*pi*i/xi. Throws InvalidGeometry for xi < 3 or tau <= 0.
SimplePolygon approximate_circle(Point center, double tau, int xi);

// Instrumentation in place of analytic cost terms.
struct OpStats {
  std::uint64_t subtractions = 0;
  std::uint64_t intersections = 0;
  std::uint64_t pruned_by_mbr = 0;
  std::uint64_t pruned_disjoint = 0;
  std::uint64_t postponed = 0;
  std::uint64_t splits = 0;
  std::uint64_t lazy_updates = 0;

  OpStats& operator+=(const OpStats& o);
  friend bool operator==(const OpStats&, const OpStats&) = default;
};

enum class CandidateAction {
  pruned_by_mbr,    // outside the current pruning box
  pruned_disjoint,  // box overlaps but geometry does not
  postponed,        // strictly inside; carved as a hole at the end
  subtracted,       // subtracted, single piece left (lazy: box kept)
  split,            // subtracted, several pieces, effective one kept
};

using UncertaintyTrace = std::vector<std::pair<std::uint64_t, CandidateAction>>;

// Candidates are the restricted areas whose boxes meet the object's box.
Region compute_uncertainty_basic(const SimplePolygon& e,
                                 std::span<const RestrictedArea* const> candidates,
                                 Point location, OpStats* stats = nullptr);
Region compute_uncertainty_basic(const SimplePolygon& e,
                                 std::span<const RestrictedArea> candidates,
                                 Point location, OpStats* stats = nullptr);

Region compute_uncertainty_optimized(const SimplePolygon& e,
                                     std::span<const RestrictedArea* const> candidates,
                                     Point location, OpStats* stats = nullptr,
                                     UncertaintyTrace* trace = nullptr);
Region compute_uncertainty_optimized(const SimplePolygon& e,
                                     std::span<const RestrictedArea> candidates,
                                     Point location, OpStats* stats = nullptr,
                                     UncertaintyTrace* trace = nullptr);

// The piece of `pieces` containing `location`. Throws SelectionError when
// none does.
Region select_real_region(RegionSet pieces, Point location);

// u ∩ R with the hole-aware ordering: clip the outer ring first, then
// subtract holes by ascending span keeping every piece, defer holes strictly
// inside a piece, and keep piece boxes stale after non-splitting
// subtractions. Point-set equal to region_intersect_rect(u, R).
RegionSet intersect_with_query(const Region& u, const SimplePolygon& range,
                               OpStats* stats = nullptr);

}  // namespace csprq

#endif  // CSPRQ_UNCERTAINTY_HPP_
