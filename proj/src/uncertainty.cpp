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

#include "csprq/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csprq/error.hpp"

namespace csprq {

SimplePolygon approximate_circle(Point center, double tau, int xi) {
  if (xi < 3) throw InvalidGeometry("xi must be at least 3");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidGeometry("tau must be positive");
  return regular_polygon(center, tau, xi);
}

OpStats& OpStats::operator+=(const OpStats& o) {
  subtractions += o.subtractions;
  intersections += o.intersections;
  pruned_by_mbr += o.pruned_by_mbr;
  pruned_disjoint += o.pruned_disjoint;
  postponed += o.postponed;
  splits += o.splits;
  lazy_updates += o.lazy_updates;
  return *this;
}

namespace {

std::vector<const RestrictedArea*> pointers(std::span<const RestrictedArea> areas) {
  std::vector<const RestrictedArea*> out;
  out.reserve(areas.size());
  for (const RestrictedArea& a : areas) out.push_back(&a);
  return out;
}

void record(UncertaintyTrace* trace, std::uint64_t id, CandidateAction a) {
  if (trace) trace->emplace_back(id, a);
}

// Subtract `r` and keep the piece holding the location. Returns true when
// the subtraction split the region.
bool subtract_keep_effective(Region& working, const SimplePolygon& r, Point location,
                             OpStats& st) {
  RegionSet parts = region_subtract(working, r);
  ++st.subtractions;
  if (parts.size() == 1) {
    working = std::move(parts.front());
    return false;
  }
  working = select_real_region(std::move(parts), location);
  ++st.splits;
  return true;
}

bool span_descending(const RestrictedArea* a, const RestrictedArea* b) {
  const Span sa = span_of(a->shape.mbr());
  const Span sb = span_of(b->shape.mbr());
  if (sa != sb) return sa > sb;
  const double aa = a->shape.mbr().area();
  const double ab = b->shape.mbr().area();
  if (aa != ab) return aa > ab;
  return a->id < b->id;
}

}  // namespace

Region select_real_region(RegionSet pieces, Point location) {
  const Region* closed_hit = nullptr;
  for (const Region& piece : pieces) {
    if (!point_in_region(location, piece)) continue;
    if (point_in_polygon(location, piece.outer()) == Containment::inside) return piece;
    if (!closed_hit) closed_hit = &piece;
  }
  if (!closed_hit) throw SelectionError("no subdivision contains the recorded location");
  return *closed_hit;
}

Region compute_uncertainty_basic(const SimplePolygon& e,
                                 std::span<const RestrictedArea* const> candidates,
                                 Point location, OpStats* stats) {
  OpStats st;
  std::vector<const RestrictedArea*> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(),
            [](const RestrictedArea* a, const RestrictedArea* b) { return a->id < b->id; });

  RegionSet current{Region(e)};
  for (const RestrictedArea* r : order) {
    RegionSet next;
    for (const Region& d : current) {
      RegionSet parts = region_subtract(d, r->shape);
      ++st.subtractions;
      if (parts.size() > 1) ++st.splits;
      for (Region& p : parts) next.push_back(std::move(p));
    }
    current = std::move(next);
  }
  if (stats) *stats += st;
  return select_real_region(std::move(current), location);
}

Region compute_uncertainty_basic(const SimplePolygon& e,
                                 std::span<const RestrictedArea> candidates,
                                 Point location, OpStats* stats) {
  const auto ptrs = pointers(candidates);
  return compute_uncertainty_basic(e, ptrs, location, stats);
}

Region compute_uncertainty_optimized(const SimplePolygon& e,
                                     std::span<const RestrictedArea* const> candidates,
                                     Point location, OpStats* stats,
                                     UncertaintyTrace* trace) {
  OpStats st;
  std::vector<const RestrictedArea*> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), span_descending);

  Region working(e);
  Mbr box = e.mbr();
  std::vector<const RestrictedArea*> postponed;

  for (const RestrictedArea* r : order) {
    const SimplePolygon& shape = r->shape;
    if (!mbr_intersects(shape.mbr(), box)) {
      ++st.pruned_by_mbr;
      record(trace, r->id, CandidateAction::pruned_by_mbr);
      continue;
    }
    // Cheap tests first; the boundary scan is the expensive one.
    const bool box_inside = box.contains(shape.mbr());
    const bool touches = boundaries_touch(working, shape);
    if (!touches) {
      if (box_inside && point_in_region(shape.vertex(0), working)) {
        postponed.push_back(r);
        ++st.postponed;
        record(trace, r->id, CandidateAction::postponed);
        continue;
      }
      if (!point_in_region(shape.vertex(0), working)) {
        if (point_in_polygon(working.outer().vertex(0), shape) == Containment::outside) {
          ++st.pruned_disjoint;
          record(trace, r->id, CandidateAction::pruned_disjoint);
          continue;
        }
      }
    }
    if (subtract_keep_effective(working, shape, location, st)) {
      box = working.mbr();
      record(trace, r->id, CandidateAction::split);
    } else {
      ++st.lazy_updates;
      record(trace, r->id, CandidateAction::subtracted);
    }
  }

  // Deferred candidates: still strictly inside means a plain new hole.
  // A later split may have moved them out of the effective piece or onto
  // its boundary.
  for (const RestrictedArea* r : postponed) {
    const SimplePolygon& shape = r->shape;
    if (strictly_inside(shape, working, working.mbr())) {
      working.add_hole(shape);
    } else if (!disjoint(working, shape)) {
      subtract_keep_effective(working, shape, location, st);
    }
  }
  if (stats) *stats += st;
  return working;
}

Region compute_uncertainty_optimized(const SimplePolygon& e,
                                     std::span<const RestrictedArea> candidates,
                                     Point location, OpStats* stats,
                                     UncertaintyTrace* trace) {
  const auto ptrs = pointers(candidates);
  return compute_uncertainty_optimized(e, ptrs, location, stats, trace);
}

RegionSet intersect_with_query(const Region& u, const SimplePolygon& range, OpStats* stats) {
  if (!is_axis_rectangle(range)) {
    throw InvalidGeometry("query range must be an axis-aligned rectangle");
  }
  OpStats st;
  if (!mbr_intersects(u.mbr(), range.mbr())) {
    ++st.pruned_by_mbr;
    if (stats) *stats += st;
    return {};
  }

  struct Piece {
    Region region;
    Mbr box;
  };
  std::vector<Piece> pieces;
  for (Region& r : outer_intersect(u, range)) {
    const Mbr b = r.mbr();
    pieces.push_back({std::move(r), b});
  }
  ++st.intersections;

  const auto& holes = u.holes();
  std::vector<std::size_t> order(holes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Span sa = span_of(holes[a].mbr());
    const Span sb = span_of(holes[b].mbr());
    if (sa != sb) return sa < sb;
    const double aa = holes[a].mbr().area();
    const double ab = holes[b].mbr().area();
    if (aa != ab) return aa < ab;
    return a < b;
  });

  std::vector<std::size_t> postponed;
  for (std::size_t hi : order) {
    const SimplePolygon& h = holes[hi];
    if (!mbr_intersects(h.mbr(), range.mbr())) {
      ++st.pruned_by_mbr;
      continue;
    }
    const bool inside_some = std::any_of(pieces.begin(), pieces.end(), [&](const Piece& p) {
      return strictly_inside(h, p.region, p.box);
    });
    if (inside_some) {
      postponed.push_back(hi);
      ++st.postponed;
      continue;
    }
    std::vector<Piece> next;
    for (Piece& p : pieces) {
      if (!mbr_intersects(h.mbr(), p.box) || disjoint(p.region, h)) {
        ++st.pruned_disjoint;
        next.push_back(std::move(p));
        continue;
      }
      RegionSet parts = region_subtract(p.region, h);
      ++st.subtractions;
      if (parts.size() == 1) {
        ++st.lazy_updates;
        next.push_back({std::move(parts.front()), p.box});
      } else {
        if (parts.size() > 1) ++st.splits;
        for (Region& r : parts) {
          const Mbr b = r.mbr();
          next.push_back({std::move(r), b});
        }
      }
    }
    pieces = std::move(next);
  }

  for (std::size_t hi : postponed) {
    const SimplePolygon& h = holes[hi];
    std::vector<Piece> next;
    for (Piece& p : pieces) {
      if (strictly_inside(h, p.region, p.region.mbr())) {
        p.region.add_hole(h);
        next.push_back(std::move(p));
      } else if (disjoint(p.region, h)) {
        next.push_back(std::move(p));
      } else {
        RegionSet parts = region_subtract(p.region, h);
        ++st.subtractions;
        for (Region& r : parts) {
          const Mbr b = r.mbr();
          next.push_back({std::move(r), b});
        }
      }
    }
    pieces = std::move(next);
  }

  if (stats) *stats += st;
  RegionSet out;
  out.reserve(pieces.size());
  for (Piece& p : pieces) out.push_back(std::move(p.region));
  return out;
}

}  // namespace csprq
