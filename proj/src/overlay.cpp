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

#include "overlay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "csprq/error.hpp"

namespace csprq::detail {
namespace {

// Interns points, merging any two closer than kEpsilon.
class VertexPool {
 public:
  int intern(Point p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / kCell));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / kCell));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(cx + dx, cy + dy));
        if (it == grid_.end()) continue;
        for (int idx : it->second) {
          if (distance(points_[static_cast<std::size_t>(idx)], p) <= kEpsilon) return idx;
        }
      }
    }
    const int idx = static_cast<int>(points_.size());
    points_.push_back(p);
    grid_[key(cx, cy)].push_back(idx);
    return idx;
  }

  Point operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return points_.size(); }

 private:
  static constexpr double kCell = 1e-6;

  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ULL ^
           static_cast<std::uint64_t>(cy);
  }

  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

struct Edge {
  int from;
  int to;
  Segment support;
  Mbr box;
  std::vector<int> splits;
};

struct SubEdge {
  int from;
  int to;
  Segment support;
};

std::uint64_t undirected_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

void add_ring_edges(const std::vector<Point>& verts, const std::vector<Segment>& sups,
                    VertexPool& pool, std::vector<Edge>& out) {
  const std::size_t n = verts.size();
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = pool.intern(verts[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const int from = ids[i];
    const int to = ids[(i + 1) % n];
    if (from == to) continue;
    Edge e{from, to, sups[i], {}, {}};
    const Point pts[2] = {pool[from], pool[to]};
    e.box = Mbr::of(pts).expanded(kEpsilon);
    out.push_back(std::move(e));
  }
}

double signed_line_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  return cross(d, p - a) / std::hypot(d.x, d.y);
}

bool strictly_opposite(double u, double v) {
  return (u > kEpsilon && v < -kEpsilon) || (u < -kEpsilon && v > kEpsilon);
}

// Records every crossing / touch between a subject edge and a clip edge as a
// split vertex on the edges it falls inside.
void split_pair(Edge& a, Edge& b, VertexPool& pool) {
  if (!mbr_intersects(a.box, b.box)) return;
  const Point a0 = pool[a.from], a1 = pool[a.to];
  const Point b0 = pool[b.from], b1 = pool[b.to];
  bool touched = false;
  if (point_segment_distance(b0, a0, a1) <= kEpsilon) { a.splits.push_back(b.from); touched = true; }
  if (point_segment_distance(b1, a0, a1) <= kEpsilon) { a.splits.push_back(b.to); touched = true; }
  if (point_segment_distance(a0, b0, b1) <= kEpsilon) { b.splits.push_back(a.from); touched = true; }
  if (point_segment_distance(a1, b0, b1) <= kEpsilon) { b.splits.push_back(a.to); touched = true; }
  if (touched) return;
  if (!strictly_opposite(signed_line_distance(b0, a0, a1), signed_line_distance(b1, a0, a1)) ||
      !strictly_opposite(signed_line_distance(a0, b0, b1), signed_line_distance(a1, b0, b1))) {
    return;
  }
  Point x = support_intersection(a.support, b.support);
  if (!std::isfinite(x.x) || !std::isfinite(x.y) ||
      point_segment_distance(x, a0, a1) > 1e-7 || point_segment_distance(x, b0, b1) > 1e-7) {
    // Support drifted from the sub-edge (only after heavy snapping).
    x = support_intersection({a0, a1}, {b0, b1});
  }
  const int id = pool.intern(x);
  a.splits.push_back(id);
  b.splits.push_back(id);
}

void explode(const Edge& e, const VertexPool& pool, std::vector<SubEdge>& out) {
  std::vector<int> ids;
  ids.reserve(e.splits.size());
  for (int s : e.splits) {
    if (s != e.from && s != e.to) ids.push_back(s);
  }
  const Point origin = pool[e.from];
  const Point dir = pool[e.to] - origin;
  auto param = [&](int id) { return dot(pool[id] - origin, dir); };
  std::sort(ids.begin(), ids.end(), [&](int l, int r) { return param(l) < param(r); });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  int prev = e.from;
  for (int id : ids) {
    if (id == prev) continue;
    out.push_back({prev, id, e.support});
    prev = id;
  }
  if (prev != e.to) out.push_back({prev, e.to, e.support});
}

struct RingOut {
  std::vector<Point> verts;
  std::vector<Segment> sups;
};

// Drops vertices within kEpsilon of the line through their neighbours
// (collinear splits, zero-width spikes and the duplicates a spike leaves).
void remove_collinear(RingOut& ring) {
  std::size_t i = 0;
  std::size_t stable = 0;
  while (ring.verts.size() >= 3 && stable < ring.verts.size()) {
    const std::size_t m = ring.verts.size();
    const std::size_t cur = i % m;
    const std::size_t prev = (cur + m - 1) % m;
    const std::size_t next = (cur + 1) % m;
    const Point p = ring.verts[prev], v = ring.verts[cur], q = ring.verts[next];
    const Point d = q - p;
    const double len = std::hypot(d.x, d.y);
    const double off = len == 0.0 ? 0.0 : std::abs(cross(d, v - p)) / len;
    if (off > kEpsilon) {
      ++stable;
      i = cur + 1;
      continue;
    }
    // Merged edge prev->next keeps the support of the longer piece.
    if (!(ring.sups[prev] == ring.sups[cur]) && distance(v, q) > distance(p, v)) {
      ring.sups[prev] = ring.sups[cur];
    }
    ring.verts.erase(ring.verts.begin() + static_cast<std::ptrdiff_t>(cur));
    ring.sups.erase(ring.sups.begin() + static_cast<std::ptrdiff_t>(cur));
    stable = 0;
    i = prev;  // the predecessor may have become collinear
  }
}

void rotate_to_lex_min(RingOut& ring) {
  const auto it = std::min_element(ring.verts.begin(), ring.verts.end(),
                                   [](Point a, Point b) { return lex_less(a, b); });
  const auto shift = it - ring.verts.begin();
  std::rotate(ring.verts.begin(), it, ring.verts.end());
  std::rotate(ring.sups.begin(), ring.sups.begin() + shift, ring.sups.end());
}

std::vector<RingOut> stitch(const std::vector<SubEdge>& kept, const VertexPool& pool) {
  std::vector<std::vector<int>> outgoing(pool.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    outgoing[static_cast<std::size_t>(kept[k].from)].push_back(static_cast<int>(k));
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<int> next(kept.size(), -1);
  std::vector<char> claimed(kept.size(), 0);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const SubEdge& in = kept[k];
    const Point at = pool[in.to];
    const Point back = pool[in.from] - at;
    const double back_angle = std::atan2(back.y, back.x);
    int best = -1;
    double best_turn = 0.0;
    for (int o : outgoing[static_cast<std::size_t>(in.to)]) {
      const Point d = pool[kept[static_cast<std::size_t>(o)].to] - at;
      // Clockwise sweep from the reversed incoming direction, in (0, 2pi].
      double turn = back_angle - std::atan2(d.y, d.x);
      while (turn <= 0.0) turn += kTwoPi;
      while (turn > kTwoPi) turn -= kTwoPi;
      if (best < 0 || turn < best_turn) {
        best = o;
        best_turn = turn;
      }
    }
    if (best < 0) throw DegeneracyError("overlay produced an open boundary chain");
    if (claimed[static_cast<std::size_t>(best)]) {
      throw DegeneracyError("overlay produced an ambiguous boundary vertex");
    }
    claimed[static_cast<std::size_t>(best)] = 1;
    next[k] = best;
  }

  std::vector<RingOut> rings;
  std::vector<char> visited(kept.size(), 0);
  for (std::size_t start = 0; start < kept.size(); ++start) {
    if (visited[start]) continue;
    RingOut ring;
    std::size_t k = start;
    while (!visited[k]) {
      visited[k] = 1;
      ring.verts.push_back(pool[kept[k].from]);
      ring.sups.push_back(kept[k].support);
      k = static_cast<std::size_t>(next[k]);
    }
    remove_collinear(ring);
    if (ring.verts.size() < 3) {
      throw DegeneracyError("ring collapsed below three non-collinear vertices");
    }
    rotate_to_lex_min(ring);
    rings.push_back(std::move(ring));
  }
  return rings;
}

bool hole_inside(const SimplePolygon& hole, const SimplePolygon& outer) {
  for (const Point& v : hole.vertices()) {
    switch (point_in_polygon(v, outer)) {
      case Containment::inside:
        return true;
      case Containment::outside:
        return false;
      case Containment::on_boundary:
        break;
    }
  }
  for (std::size_t i = 0; i < hole.size(); ++i) {
    const Segment e = hole.edge(i);
    const Containment c = point_in_polygon((e.a + e.b) * 0.5, outer);
    if (c != Containment::on_boundary) return c == Containment::inside;
  }
  return true;
}

RegionSet assemble(std::vector<RingOut> rings) {
  std::vector<SimplePolygon> outers;
  std::vector<SimplePolygon> holes;
  for (RingOut& r : rings) {
    const double a = signed_ring_area(r.verts);
    if (a == 0.0) throw DegeneracyError("overlay produced a zero-area ring");
    SimplePolygon poly(std::move(r.verts), std::move(r.sups));
    (a > 0.0 ? outers : holes).push_back(std::move(poly));
  }
  std::vector<double> outer_area;
  outer_area.reserve(outers.size());
  for (const auto& o : outers) outer_area.push_back(polygon_area(o));

  std::vector<std::vector<SimplePolygon>> assigned(outers.size());
  for (SimplePolygon& h : holes) {
    int best = -1;
    for (std::size_t i = 0; i < outers.size(); ++i) {
      if (!outers[i].mbr().expanded(kEpsilon).contains(h.mbr())) continue;
      if (best >= 0 && outer_area[i] >= outer_area[static_cast<std::size_t>(best)]) continue;
      if (hole_inside(h, outers[i])) best = static_cast<int>(i);
    }
    if (best < 0) throw DegeneracyError("hole ring is not enclosed by any outer ring");
    assigned[static_cast<std::size_t>(best)].push_back(std::move(h));
  }

  auto first_vertex_less = [](const SimplePolygon& l, const SimplePolygon& r) {
    return lex_less(l.vertex(0), r.vertex(0));
  };
  RegionSet out;
  out.reserve(outers.size());
  for (std::size_t i = 0; i < outers.size(); ++i) {
    std::sort(assigned[i].begin(), assigned[i].end(), first_vertex_less);
    out.emplace_back(std::move(outers[i]), std::move(assigned[i]));
  }
  std::sort(out.begin(), out.end(), [&](const Region& l, const Region& r) {
    return first_vertex_less(l.outer(), r.outer());
  });
  return out;
}

}  // namespace

RegionSet overlay(const Region& subject, const SimplePolygon& clip, OverlayOp op) {
  if (!mbr_intersects(subject.mbr().expanded(kEpsilon), clip.mbr())) {
    if (op == OverlayOp::difference) return {subject};
    return {};
  }

  VertexPool pool;
  std::vector<Edge> subject_edges;
  std::vector<std::vector<Point>> subject_rings;  // clockwise holes, for parity
  add_ring_edges(subject.outer().vertices(), subject.outer().supports(), pool, subject_edges);
  subject_rings.push_back(subject.outer().vertices());
  for (const SimplePolygon& h : subject.holes()) {
    std::vector<Point> v;
    std::vector<Segment> s;
    h.reversed_into(v, s);
    add_ring_edges(v, s, pool, subject_edges);
    subject_rings.push_back(std::move(v));
  }
  std::vector<Edge> clip_edges;
  add_ring_edges(clip.vertices(), clip.supports(), pool, clip_edges);

  for (Edge& a : subject_edges) {
    for (Edge& b : clip_edges) split_pair(a, b, pool);
  }

  std::vector<SubEdge> subject_parts;
  std::vector<SubEdge> clip_parts;
  for (const Edge& e : subject_edges) explode(e, pool, subject_parts);
  for (const Edge& e : clip_edges) explode(e, pool, clip_parts);

  std::unordered_map<std::uint64_t, int> clip_by_key;
  clip_by_key.reserve(clip_parts.size());
  for (std::size_t i = 0; i < clip_parts.size(); ++i) {
    clip_by_key.emplace(undirected_key(clip_parts[i].from, clip_parts[i].to), static_cast<int>(i));
  }
  std::vector<char> clip_coincident(clip_parts.size(), 0);

  std::vector<SubEdge> kept;
  for (const SubEdge& e : subject_parts) {
    auto it = clip_by_key.find(undirected_key(e.from, e.to));
    if (it != clip_by_key.end()) {
      const SubEdge& c = clip_parts[static_cast<std::size_t>(it->second)];
      clip_coincident[static_cast<std::size_t>(it->second)] = 1;
      const bool same_direction = c.from == e.from;
      // Shared boundary: keep one copy when the result lies on exactly one side.
      if (same_direction == (op == OverlayOp::intersection)) kept.push_back(e);
      continue;
    }
    const Point mid = (pool[e.from] + pool[e.to]) * 0.5;
    const bool in_clip = ring_parity(mid, clip.vertices());
    if (in_clip == (op == OverlayOp::intersection)) kept.push_back(e);
  }
  for (std::size_t i = 0; i < clip_parts.size(); ++i) {
    if (clip_coincident[i]) continue;
    const SubEdge& e = clip_parts[i];
    const Point mid = (pool[e.from] + pool[e.to]) * 0.5;
    bool in_subject = false;
    for (const auto& ring : subject_rings) in_subject ^= ring_parity(mid, ring);
    if (!in_subject) continue;
    if (op == OverlayOp::intersection) {
      kept.push_back(e);
    } else {
      kept.push_back({e.to, e.from, e.support});
    }
  }

  if (kept.empty()) return {};
  return assemble(stitch(kept, pool));
}

}  // namespace csprq::detail
