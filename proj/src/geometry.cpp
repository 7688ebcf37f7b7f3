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

#include "csprq/geometry.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "csprq/error.hpp"

namespace csprq {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Mbr Mbr::of(std::span<const Point> pts) {
  Mbr box{pts.front(), pts.front()};
  for (const Point& p : pts.subspan(1)) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

bool segments_touch(Point a0, Point a1, Point b0, Point b1, double eps) {
  const int o1 = sign_of(cross(a1 - a0, b0 - a0));
  const int o2 = sign_of(cross(a1 - a0, b1 - a0));
  const int o3 = sign_of(cross(b1 - b0, a0 - b0));
  const int o4 = sign_of(cross(b1 - b0, a1 - b0));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return point_segment_distance(b0, a0, a1) <= eps ||
         point_segment_distance(b1, a0, a1) <= eps ||
         point_segment_distance(a0, b0, b1) <= eps ||
         point_segment_distance(a1, b0, b1) <= eps;
}

namespace {

Segment canonical(Segment s) {
  if (lex_less(s.b, s.a)) std::swap(s.a, s.b);
  return s;
}

bool segment_less(const Segment& s, const Segment& t) {
  if (s.a != t.a) return lex_less(s.a, t.a);
  return lex_less(s.b, t.b);
}

}  // namespace

Point support_intersection(const Segment& s_in, const Segment& t_in) {
  Segment s = canonical(s_in);
  Segment t = canonical(t_in);
  if (segment_less(t, s)) std::swap(s, t);
  const Point d1 = s.b - s.a;
  const Point d2 = t.b - t.a;
  const double denom = cross(d1, d2);
  const double u = cross(t.a - s.a, d2) / denom;
  return {s.a.x + d1.x * u, s.a.y + d1.y * u};
}

double signed_ring_area(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (lex_less(ring[i], ring[start])) start = i;
  }
  const Point ref = ring[start];
  double sum = 0.0;
  // Terms touching the reference vertex vanish.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Point a = ring[(start + k) % n] - ref;
    const Point b = ring[(start + k + 1) % n] - ref;
    sum += cross(a, b);
  }
  return 0.5 * sum;
}

double polygon_area(const SimplePolygon& p) {
  return std::abs(signed_ring_area(p.vertices()));
}

SimplePolygon::SimplePolygon(std::vector<Point> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidGeometry("polygon needs at least 3 vertices");
  supports_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    supports_.push_back({vertices_[i], vertices_[(i + 1) % n]});
  }
  normalize();
}

SimplePolygon::SimplePolygon(std::vector<Point> vertices, std::vector<Segment> supports)
    : vertices_(std::move(vertices)), supports_(std::move(supports)) {
  if (vertices_.size() < 3) throw InvalidGeometry("polygon needs at least 3 vertices");
  if (supports_.size() != vertices_.size()) {
    throw InvalidGeometry("one support segment per edge required");
  }
  normalize();
}

void SimplePolygon::normalize() {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidGeometry("non-finite coordinate");
    }
    if (p == vertices_[(i + 1) % n]) throw InvalidGeometry("repeated consecutive vertex");
  }
  const double area = signed_ring_area(vertices_);
  if (area == 0.0) throw InvalidGeometry("zero-area ring");
  if (area < 0.0) {
    std::vector<Point> v;
    std::vector<Segment> s;
    reversed_into(v, s);
    vertices_ = std::move(v);
    supports_ = std::move(s);
  }
  mbr_ = Mbr::of(vertices_);
}

void SimplePolygon::reversed_into(std::vector<Point>& verts, std::vector<Segment>& sups) const {
  const std::size_t n = vertices_.size();
  verts.assign(vertices_.rbegin(), vertices_.rend());
  sups.resize(n);
  // Reversed edge k runs from old vertex n-1-k to n-2-k, i.e. old edge n-2-k.
  for (std::size_t k = 0; k < n; ++k) sups[k] = supports_[(2 * n - 2 - k) % n];
}

SimplePolygon SimplePolygon::rectangle(const Mbr& box) {
  return SimplePolygon({box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}});
}

bool ring_parity(Point pt, std::span<const Point> ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if (ray_crosses(pt, ring[j], ring[i])) inside = !inside;
  }
  return inside;
}

Containment point_in_polygon(Point pt, const SimplePolygon& p) {
  if (!p.mbr().expanded(kEpsilon).contains(pt)) return Containment::outside;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(pt, v[i], v[(i + 1) % n]) <= kEpsilon) {
      return Containment::on_boundary;
    }
  }
  return ring_parity(pt, v) ? Containment::inside : Containment::outside;
}

bool is_simple(const SimplePolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a0 = v[i];
    const Point a1 = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point b0 = v[j];
      const Point b1 = v[(j + 1) % n];
      const bool adjacent_next = j == i + 1;
      const bool adjacent_prev = i == 0 && j == n - 1;
      if (adjacent_next) {
        // Share a1 == b0; the far endpoint must not fold back onto the other edge.
        if (point_segment_distance(b1, a0, a1) <= kEpsilon ||
            point_segment_distance(a0, b0, b1) <= kEpsilon) {
          return false;
        }
      } else if (adjacent_prev) {
        if (point_segment_distance(b0, a0, a1) <= kEpsilon ||
            point_segment_distance(a1, b0, b1) <= kEpsilon) {
          return false;
        }
      } else if (segments_touch(a0, a1, b0, b1)) {
        return false;
      }
    }
  }
  return true;
}

SimplePolygon regular_polygon(Point center, double radius, int sides) {
  if (sides < 3) throw InvalidGeometry("regular polygon needs at least 3 sides");
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / sides;
    v.push_back({center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)});
  }
  return SimplePolygon(std::move(v));
}

}  // namespace csprq
