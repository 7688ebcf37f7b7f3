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

#include "csprq/region.hpp"

#include <algorithm>

#include "csprq/error.hpp"
#include "overlay.hpp"

namespace csprq {

RegionSet region_subtract(const Region& a, const SimplePolygon& p) {
  return detail::overlay(a, p, detail::OverlayOp::difference);
}

RegionSet outer_intersect(const Region& a, const SimplePolygon& p) {
  return detail::overlay(Region(a.outer()), p, detail::OverlayOp::intersection);
}

bool is_axis_rectangle(const SimplePolygon& p) {
  if (p.size() != 4) return false;
  const Mbr& b = p.mbr();
  for (const Point& v : p.vertices()) {
    if ((v.x != b.lo.x && v.x != b.hi.x) || (v.y != b.lo.y && v.y != b.hi.y)) return false;
  }
  return b.width() > 0.0 && b.height() > 0.0;
}

RegionSet region_intersect_rect(const Region& a, const SimplePolygon& r,
                                OverlayCounters* counters) {
  if (!is_axis_rectangle(r)) throw InvalidGeometry("query range must be an axis-aligned rectangle");
  RegionSet current = outer_intersect(a, r);
  if (counters) ++counters->intersections;
  for (const SimplePolygon& hole : a.holes()) {
    RegionSet next;
    for (const Region& piece : current) {
      RegionSet parts = region_subtract(piece, hole);
      if (counters) ++counters->subtractions;
      for (Region& part : parts) next.push_back(std::move(part));
    }
    current = std::move(next);
  }
  return current;
}

double region_area(const Region& a) {
  std::vector<double> hole_areas;
  hole_areas.reserve(a.holes().size());
  for (const SimplePolygon& h : a.holes()) hole_areas.push_back(polygon_area(h));
  std::sort(hole_areas.begin(), hole_areas.end());
  double holes = 0.0;
  for (double v : hole_areas) holes += v;
  return polygon_area(a.outer()) - holes;
}

double regionset_area(const RegionSet& s) {
  std::vector<double> areas;
  areas.reserve(s.size());
  for (const Region& r : s) areas.push_back(region_area(r));
  std::sort(areas.begin(), areas.end());
  double total = 0.0;
  for (double v : areas) total += v;
  return total;
}

bool point_in_region(Point pt, const Region& a) {
  if (point_in_polygon(pt, a.outer()) == Containment::outside) return false;
  for (const SimplePolygon& h : a.holes()) {
    if (point_in_polygon(pt, h) == Containment::inside) return false;
  }
  return true;
}

bool point_in_regionset(Point pt, const RegionSet& s) {
  return std::any_of(s.begin(), s.end(), [&](const Region& r) { return point_in_region(pt, r); });
}

namespace {

bool ring_touches(const SimplePolygon& ring, const SimplePolygon& p) {
  const Mbr pbox = p.mbr().expanded(kEpsilon);
  if (!mbr_intersects(ring.mbr(), pbox)) return false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Segment e = ring.edge(i);
    const Point ends[2] = {e.a, e.b};
    if (!mbr_intersects(Mbr::of(ends), pbox)) continue;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Segment f = p.edge(j);
      if (segments_touch(e.a, e.b, f.a, f.b)) return true;
    }
  }
  return false;
}

}  // namespace

bool boundaries_touch(const Region& a, const SimplePolygon& p) {
  if (ring_touches(a.outer(), p)) return true;
  return std::any_of(a.holes().begin(), a.holes().end(),
                     [&](const SimplePolygon& h) { return ring_touches(h, p); });
}

bool strictly_inside(const SimplePolygon& p, const Region& a, const Mbr& a_box) {
  if (!a_box.contains(p.mbr())) return false;
  if (boundaries_touch(a, p)) return false;
  return point_in_region(p.vertex(0), a);
}

bool disjoint(const Region& a, const SimplePolygon& p) {
  if (!mbr_intersects(a.mbr(), p.mbr())) return true;
  if (boundaries_touch(a, p)) return false;
  // No boundary contact: either one contains the other or they are apart.
  if (point_in_region(p.vertex(0), a)) return false;
  return point_in_polygon(a.outer().vertex(0), p) == Containment::outside;
}

}  // namespace csprq
