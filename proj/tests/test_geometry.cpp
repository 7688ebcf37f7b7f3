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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "csprq/error.hpp"
#include "csprq/geometry.hpp"
#include "test_support.hpp"

namespace csprq {
namespace {

using testing::Rng;
using testing::rect;

TEST(PolygonArea, UnitSquare) {
  EXPECT_EQ(polygon_area(SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 1.0);
}

TEST(PolygonArea, TriangleEitherOrientation) {
  EXPECT_EQ(polygon_area(SimplePolygon({{0, 0}, {4, 0}, {0, 3}})), 6.0);
  EXPECT_EQ(polygon_area(SimplePolygon({{0, 3}, {4, 0}, {0, 0}})), 6.0);
}

TEST(PolygonArea, ClockwiseInputIsNormalized) {
  const SimplePolygon p({{0, 3}, {4, 0}, {0, 0}});
  EXPECT_GT(signed_ring_area(p.vertices()), 0.0);
}

TEST(PolygonArea, MatchesFanTriangulationOnRandomPolygons) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const Point c{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const SimplePolygon p = t % 2 ? testing::random_convex(rng, c, rng.uniform(1, 50), rng.integer(3, 40))
                                  : testing::random_star(rng, c, 1.0, 30.0, rng.integer(3, 40));
    const double a = polygon_area(p);
    EXPECT_GE(a, 0.0);
    EXPECT_NEAR(a, testing::fan_area(p.vertices()), 1e-9 * a);
  }
}

TEST(PolygonArea, TranslationAndScaling) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const SimplePolygon p = testing::random_star(rng, {0, 0}, 1.0, 10.0, rng.integer(3, 20));
    const Point d{rng.uniform(-5000, 5000), rng.uniform(-5000, 5000)};
    const double k = rng.uniform(0.1, 10.0);
    std::vector<Point> moved, scaled;
    for (const Point& v : p.vertices()) {
      moved.push_back(v + d);
      scaled.push_back(v * k);
    }
    const double a = polygon_area(p);
    EXPECT_NEAR(polygon_area(SimplePolygon(moved)), a, 1e-9 * a);
    EXPECT_NEAR(polygon_area(SimplePolygon(scaled)), k * k * a, 1e-9 * k * k * a);
  }
}

TEST(PolygonArea, IndependentOfStartingVertex) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const SimplePolygon p = testing::random_star(rng, {3000, 7000}, 1.0, 30.0, rng.integer(3, 25));
    const double a = signed_ring_area(p.vertices());
    std::vector<Point> v = p.vertices();
    for (std::size_t r = 0; r < v.size(); ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      EXPECT_EQ(signed_ring_area(v), a);
    }
  }
}

TEST(SimplePolygon, RejectsInvalidInput) {
  EXPECT_THROW(SimplePolygon({{0, 0}, {1, 0}}), InvalidGeometry);
  EXPECT_THROW(SimplePolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidGeometry);
  EXPECT_THROW(SimplePolygon({{0, 0}, {1, 1}, {2, 2}}), InvalidGeometry);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SimplePolygon({{0, 0}, {1, nan}, {0, 1}}), InvalidGeometry);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SimplePolygon({{0, 0}, {inf, 0}, {0, 1}}), InvalidGeometry);
}

TEST(SimplePolygon, CachedMbrIsTight) {
  const SimplePolygon p({{1, 2}, {5, 3}, {2, 7}});
  EXPECT_EQ(p.mbr(), (Mbr{{1, 2}, {5, 7}}));
}

TEST(SimplePolygon, SimplicityCheck) {
  EXPECT_TRUE(is_simple(rect(0, 0, 1, 1)));
  // Bow tie.
  const SimplePolygon bow({{0, 0}, {3, 2}, {3, 0}, {0, 3}});
  EXPECT_FALSE(is_simple(bow));
}

TEST(PointInPolygon, UnitSquareCases) {
  const SimplePolygon sq = rect(0, 0, 1, 1);
  EXPECT_EQ(point_in_polygon({0.5, 0.5}, sq), Containment::inside);
  EXPECT_EQ(point_in_polygon({2, 2}, sq), Containment::outside);
  EXPECT_EQ(point_in_polygon({1, 0.5}, sq), Containment::on_boundary);
}

TEST(PointInPolygon, VerticesAreOnBoundary) {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const SimplePolygon p = testing::random_star(rng, {500, 500}, 1.0, 30.0, rng.integer(3, 25));
    for (const Point& v : p.vertices()) EXPECT_EQ(point_in_polygon(v, p), Containment::on_boundary);
  }
}

TEST(PointInPolygon, MatchesWindingNumberOracle) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const SimplePolygon p = testing::random_star(rng, {0, 0}, 1.0, 10.0, rng.integer(3, 30));
    const auto rings = std::vector<const SimplePolygon*>{&p};
    for (int k = 0; k < 200; ++k) {
      const Point q{rng.uniform(-11, 11), rng.uniform(-11, 11)};
      const Containment c = point_in_polygon(q, p);
      if (testing::boundary_distance(q, rings) <= kEpsilon) {
        EXPECT_EQ(c, Containment::on_boundary);
        continue;
      }
      const bool inside = testing::winding_number(q, p.vertices()) != 0;
      EXPECT_EQ(c, inside ? Containment::inside : Containment::outside);
    }
  }
}

TEST(Span, Examples) {
  EXPECT_EQ(span_of({{0, 0}, {3, 1}}).value, 3.0);
  EXPECT_EQ(span_of({{0, 0}, {2, 2}}).value, 2.0);
  EXPECT_EQ(span_of({{5, 5}, {5, 5}}).value, 0.0);
}

TEST(MbrIntersects, Examples) {
  EXPECT_TRUE(mbr_intersects({{0, 0}, {2, 2}}, {{1, 1}, {3, 3}}));
  EXPECT_FALSE(mbr_intersects({{0, 0}, {1, 1}}, {{2, 2}, {3, 3}}));
  EXPECT_TRUE(mbr_intersects({{0, 0}, {1, 1}}, {{1, 0}, {2, 1}}));
}

TEST(MbrIntersects, SymmetricAndReflexive) {
  Rng rng(16);
  for (int t = 0; t < 1000; ++t) {
    const Mbr a = testing::random_box(rng, 100, 0.1, 30);
    const Mbr b = testing::random_box(rng, 100, 0.1, 30);
    EXPECT_EQ(mbr_intersects(a, b), mbr_intersects(b, a));
    EXPECT_TRUE(mbr_intersects(a, a));
  }
}

TEST(SupportIntersection, SymmetricBitForBit) {
  Rng rng(17);
  for (int t = 0; t < 1000; ++t) {
    const Segment s{{rng.uniform(0, 100), rng.uniform(0, 100)}, {rng.uniform(0, 100), rng.uniform(0, 100)}};
    const Segment u{{rng.uniform(0, 100), rng.uniform(0, 100)}, {rng.uniform(0, 100), rng.uniform(0, 100)}};
    const Point p = support_intersection(s, u);
    EXPECT_EQ(p, support_intersection(u, s));
    EXPECT_EQ(p, support_intersection({s.b, s.a}, {u.b, u.a}));
  }
}

TEST(SupportIntersection, KnownCrossing) {
  const Point p = support_intersection({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
  EXPECT_DOUBLE_EQ(p.x, 1.0);
  EXPECT_DOUBLE_EQ(p.y, 1.0);
}

TEST(RegularPolygon, RejectsFewerThanThreeSides) {
  EXPECT_THROW(regular_polygon({0, 0}, 1, 2), InvalidGeometry);
}

}  // namespace
}  // namespace csprq
