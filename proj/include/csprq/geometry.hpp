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

// Planar primitives shared by every other module: points, bounding boxes,
// simple polygons (rings), area, containment and span.

#ifndef CSPRQ_GEOMETRY_HPP_
#define CSPRQ_GEOMETRY_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace csprq {

// Boundary tolerance in world units. The world is 10000 x 10000, so this is
// far below any feature scale.
inline constexpr double kEpsilon = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double k) { return {a.x * k, a.y * k}; }
};

constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// Lexicographic (x, then y) order; used to pick canonical ring starts.
constexpr bool lex_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

double distance(Point a, Point b);

// Axis-aligned bounding box, closed on all sides.
struct Mbr {
  Point lo;
  Point hi;

  static Mbr of(std::span<const Point> pts);
  static Mbr square(Point center, double half_side) {
    return {{center.x - half_side, center.y - half_side},
            {center.x + half_side, center.y + half_side}};
  }

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  bool contains(Point p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool contains(const Mbr& o) const {
    return o.lo.x >= lo.x && o.hi.x <= hi.x && o.lo.y >= lo.y && o.hi.y <= hi.y;
  }
  Mbr merged(const Mbr& o) const {
    return {{std::min(lo.x, o.lo.x), std::min(lo.y, o.lo.y)},
            {std::max(hi.x, o.hi.x), std::max(hi.y, o.hi.y)}};
  }
  Mbr expanded(double d) const { return {{lo.x - d, lo.y - d}, {hi.x + d, hi.y + d}}; }

  friend bool operator==(const Mbr&, const Mbr&) = default;
};

// Closed-interval overlap: touching boxes intersect.
inline bool mbr_intersects(const Mbr& a, const Mbr& b) {
  return a.lo.x <= b.hi.x && b.lo.x <= a.hi.x && a.lo.y <= b.hi.y && b.lo.y <= a.hi.y;
}

// Largest side length of a bounding box.
struct Span {
  double value = 0.0;
  friend constexpr auto operator<=>(const Span&, const Span&) = default;
};

inline Span span_of(const Mbr& b) { return {std::max(b.width(), b.height())}; }

struct Segment {
  Point a;
  Point b;
  friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

double point_segment_distance(Point p, Point a, Point b);

// True when the closed segments come within `eps` of each other.
bool segments_touch(Point a0, Point a1, Point b0, Point b1, double eps = kEpsilon);

// Intersection of the infinite lines through two segments. The result
// depends only on the unordered pair of segments (each taken without
// direction), so the same crossing is reproduced bit-for-bit regardless of
// which operand order or which sub-edges led to it. Lines must not be
// parallel.
Point support_intersection(const Segment& s, const Segment& t);

// Ray-crossing test for a rightward horizontal ray from p against edge a->b.
// The SIMD kernels evaluate exactly this expression.
inline bool ray_crosses(Point p, Point a, Point b) {
  if ((a.y > p.y) != (b.y > p.y)) {
    const double slope = (b.x - a.x) / (b.y - a.y);
    return p.x < a.x + (p.y - a.y) * slope;
  }
  return false;
}

// A closed ring with implicit closing edge, stored counterclockwise.
//
// Each edge i (vertex i to vertex i+1) also records the original input
// segment it lies on (its support). Edges of freshly built polygons support
// themselves; clipping results inherit supports from the inputs so that
// later crossings are computed from the original segments.
class SimplePolygon {
 public:
  // Throws InvalidGeometry on fewer than 3 vertices, non-finite coordinates,
  // repeated consecutive vertices or zero area. Clockwise input is reversed.
  explicit SimplePolygon(std::vector<Point> vertices);
  SimplePolygon(std::vector<Point> vertices, std::vector<Segment> supports);

  static SimplePolygon rectangle(const Mbr& box);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Segment>& supports() const { return supports_; }
  const Mbr& mbr() const { return mbr_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i]; }
  Segment edge(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  // Same ring reversed to clockwise order (supports follow their edges).
  // Only the clipping engine uses clockwise rings.
  void reversed_into(std::vector<Point>& verts, std::vector<Segment>& sups) const;

 private:
  void normalize();

  std::vector<Point> vertices_;
  std::vector<Segment> supports_;
  Mbr mbr_;
};

// Shoelace area of a vertex ring, positive for counterclockwise rings. The
// sum starts at the lexicographically smallest vertex and is taken relative
// to it, so the result does not depend on where the ring starts.
double signed_ring_area(std::span<const Point> ring);

double polygon_area(const SimplePolygon& p);

enum class Containment { inside, on_boundary, outside };

// Boundary within kEpsilon wins; otherwise ray-crossing parity.
Containment point_in_polygon(Point pt, const SimplePolygon& p);

// Pure crossing parity against a ring, no boundary classification.
bool ring_parity(Point pt, std::span<const Point> ring);

// O(n^2) check that no two non-adjacent edges touch and adjacent edges meet
// only at their shared vertex.
bool is_simple(const SimplePolygon& p);

// Regular polygon with `sides` vertices at distance `radius` from `center`,
// first vertex at angle 0.
SimplePolygon regular_polygon(Point center, double radius, int sides);

}  // namespace csprq

#endif  // CSPRQ_GEOMETRY_HPP_
