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

// Random instance generators and independent oracles shared by the tests.

#ifndef CSPRQ_TESTS_TEST_SUPPORT_HPP_
#define CSPRQ_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "csprq/geometry.hpp"
#include "csprq/probability.hpp"
#include "csprq/region.hpp"
#include "csprq/uncertainty.hpp"

namespace csprq::testing {

inline SimplePolygon rect(double x0, double y0, double x1, double y1) {
  return SimplePolygon::rectangle({{x0, y0}, {x1, y1}});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_double(g_); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

inline Mbr random_box(Rng& rng, double space, double min_side, double max_side) {
  const double w = rng.uniform(min_side, max_side);
  const double h = rng.uniform(min_side, max_side);
  const double x = rng.uniform(0.0, space - w);
  const double y = rng.uniform(0.0, space - h);
  return {{x, y}, {x + w, y + h}};
}

// Star-shaped polygon around `c`: angles jittered around an even spacing so
// no angular gap reaches pi, which keeps the ring simple.
inline SimplePolygon random_star(Rng& rng, Point c, double rmin, double rmax, int n) {
  std::vector<double> angles;
  const double step = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) angles.push_back(step * (i + rng.uniform(-0.2, 0.2)));
  std::vector<Point> pts;
  for (double a : angles) {
    const double r = rng.uniform(rmin, rmax);
    pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return SimplePolygon(std::move(pts));
}

inline SimplePolygon random_convex(Rng& rng, Point c, double r, int n) {
  std::vector<double> angles;
  const double step = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) angles.push_back(step * (i + rng.uniform(-0.2, 0.2)));
  std::vector<Point> pts;
  for (double a : angles) pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  return SimplePolygon(std::move(pts));
}

// Rectangle [0, s]^2 with up to `holes` pairwise separated rectangular
// holes strictly inside.
inline Region random_region_with_holes(Rng& rng, double s, int holes) {
  std::vector<SimplePolygon> hs;
  std::vector<Mbr> boxes;
  for (int k = 0; k < holes * 20 && static_cast<int>(hs.size()) < holes; ++k) {
    const double w = rng.uniform(0.05 * s, 0.3 * s);
    const double h = rng.uniform(0.05 * s, 0.3 * s);
    const double x = rng.uniform(0.02 * s, 0.98 * s - w);
    const double y = rng.uniform(0.02 * s, 0.98 * s - h);
    const Mbr b{{x, y}, {x + w, y + h}};
    const bool clash = std::any_of(boxes.begin(), boxes.end(),
                                   [&](const Mbr& o) { return mbr_intersects(o.expanded(0.01 * s), b); });
    if (clash) continue;
    boxes.push_back(b);
    hs.push_back(SimplePolygon::rectangle(b));
  }
  return Region(rect(0, 0, s, s), std::move(hs));
}

// Winding-number membership, independent of the library's ray parity.
inline int winding_number(Point p, const std::vector<Point>& ring) {
  int wn = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i], b = ring[(i + 1) % n];
    const double side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else if (b.y <= p.y && side < 0) {
      --wn;
    }
  }
  return wn;
}

inline bool in_region_oracle(Point p, const Region& r) {
  if (winding_number(p, r.outer().vertices()) == 0) return false;
  for (const auto& h : r.holes()) {
    if (winding_number(p, h.vertices()) != 0) return false;
  }
  return true;
}

inline bool in_regionset_oracle(Point p, const RegionSet& s) {
  return std::any_of(s.begin(), s.end(), [&](const Region& r) { return in_region_oracle(p, r); });
}

// Fan triangulation from vertex 0: independent area formula.
inline double fan_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point p = v[i] - v[0], q = v[i + 1] - v[0];
    a += 0.5 * (p.x * q.y - p.y * q.x);
  }
  return std::abs(a);
}

// Distance from p to the nearest ring edge of any region in `rings`.
inline double boundary_distance(Point p, const std::vector<const SimplePolygon*>& rings) {
  double d = std::numeric_limits<double>::infinity();
  for (const SimplePolygon* r : rings) {
    for (std::size_t i = 0; i < r->size(); ++i) {
      const Segment e = r->edge(i);
      d = std::min(d, point_segment_distance(p, e.a, e.b));
    }
  }
  return d;
}

// One object and its candidate areas: disjoint rectangles and regular
// polygons scattered around the recorded location, none containing it.
struct UncertaintyInstance {
  Point location;
  double tau = 0.0;
  SimplePolygon e;
  std::vector<RestrictedArea> candidates;
};

inline UncertaintyInstance random_uncertainty_instance(Rng& rng, int xi, int max_areas) {
  const Point l{rng.uniform(100, 900), rng.uniform(100, 900)};
  const double tau = rng.integer(20, 50);
  UncertaintyInstance inst{l, tau, approximate_circle(l, tau, xi), {}};
  const int want = rng.integer(0, max_areas);
  std::vector<Mbr> boxes;
  for (int k = 0; k < want * 10 && static_cast<int>(inst.candidates.size()) < want; ++k) {
    const Point c{l.x + rng.uniform(-1.3, 1.3) * tau, l.y + rng.uniform(-1.3, 1.3) * tau};
    SimplePolygon shape = [&] {
      switch (rng.integer(0, 2)) {
        case 0: {
          // Long thin bars split the circle often.
          const bool wide = rng.integer(0, 1) == 0;
          const double len = rng.uniform(0.5, 2.5) * tau, th = rng.uniform(1, 8);
          const double hw = wide ? len / 2 : th / 2, hh = wide ? th / 2 : len / 2;
          return SimplePolygon::rectangle({{c.x - hw, c.y - hh}, {c.x + hw, c.y + hh}});
        }
        case 1:
          return regular_polygon(c, rng.uniform(2, 12), rng.integer(3, 8));
        default: {
          const double hw = rng.uniform(1, 15), hh = rng.uniform(1, 15);
          return SimplePolygon::rectangle({{c.x - hw, c.y - hh}, {c.x + hw, c.y + hh}});
        }
      }
    }();
    const Mbr b = shape.mbr();
    if (!mbr_intersects(b, inst.e.mbr())) continue;
    if (b.expanded(0.5).contains(l)) continue;
    if (std::any_of(boxes.begin(), boxes.end(), [&](const Mbr& o) { return mbr_intersects(o, b); })) continue;
    boxes.push_back(b);
    inst.candidates.push_back({static_cast<std::uint64_t>(inst.candidates.size() + 1), std::move(shape)});
  }
  return inst;
}

// Objects and areas in a [0, space]^2 world: areas are pairwise box-disjoint
// bars, rectangles and regular polygons; objects sit outside every area.
struct RandomWorld {
  std::vector<MovingObject> objects;
  std::vector<RestrictedArea> areas;
};

inline RandomWorld random_world(Rng& rng, int n, int m, double space) {
  RandomWorld w;
  std::vector<Mbr> boxes;
  for (int k = 0; k < m * 20 && static_cast<int>(w.areas.size()) < m; ++k) {
    const Point c{rng.uniform(0, space), rng.uniform(0, space)};
    SimplePolygon shape = [&] {
      switch (rng.integer(0, 3)) {
        case 0:
          return SimplePolygon::rectangle(Mbr{{c.x - 20, c.y - 5}, {c.x + 20, c.y + 5}});
        case 1: {
          const double len = rng.uniform(30, 120), th = rng.uniform(1, 6);
          return rng.integer(0, 1) ? SimplePolygon::rectangle(Mbr{{c.x - len / 2, c.y - th / 2}, {c.x + len / 2, c.y + th / 2}})
                                   : SimplePolygon::rectangle(Mbr{{c.x - th / 2, c.y - len / 2}, {c.x + th / 2, c.y + len / 2}});
        }
        case 2:
          return regular_polygon(c, rng.uniform(3, 20), rng.integer(3, 16));
        default:
          return SimplePolygon::rectangle(Mbr{{c.x - rng.uniform(1, 10), c.y - rng.uniform(1, 10)},
                                              {c.x + rng.uniform(1, 10), c.y + rng.uniform(1, 10)}});
      }
    }();
    const Mbr b = shape.mbr();
    if (std::any_of(boxes.begin(), boxes.end(), [&](const Mbr& o) { return mbr_intersects(o, b); })) continue;
    boxes.push_back(b);
    w.areas.push_back({static_cast<std::uint64_t>(w.areas.size() + 1), std::move(shape)});
  }
  for (int k = 0; k < n * 20 && static_cast<int>(w.objects.size()) < n; ++k) {
    const Point l{rng.uniform(0, space), rng.uniform(0, space)};
    const bool blocked = std::any_of(w.areas.begin(), w.areas.end(), [&](const RestrictedArea& a) {
      return a.shape.mbr().expanded(0.5).contains(l);
    });
    if (blocked) continue;
    w.objects.push_back({static_cast<std::uint64_t>(w.objects.size() + 1) * 3, l,
                         static_cast<double>(rng.integer(20, 50))});
  }
  return w;
}

}  // namespace csprq::testing

#endif  // CSPRQ_TESTS_TEST_SUPPORT_HPP_
