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
#include <stdexcept>

#include "csprq/error.hpp"
#include "csprq/probability.hpp"
#include "csprq/uncertainty.hpp"
#include "test_support.hpp"

namespace csprq {
namespace {

using testing::Rng;
using testing::rect;

const Region kHoled(rect(0, 0, 4, 4), {rect(1, 1, 3, 3)});

RegionSet bottom_strip() { return region_intersect_rect(kHoled, rect(0, 0, 4, 1)); }

TEST(ProbabilityUniform, Examples) {
  const Region unit(rect(0, 0, 1, 1));
  EXPECT_EQ(probability_uniform(unit, region_intersect_rect(unit, rect(0.5, 0, 1, 1))).value, 0.5);
  EXPECT_EQ(probability_uniform(unit, {unit}).value, 1.0);
  EXPECT_EQ(probability_uniform(kHoled, bottom_strip()).value, 1.0 / 3.0);
  EXPECT_EQ(probability_uniform(kHoled, {}).value, 0.0);
}

TEST(ProbabilityUniform, StaysInUnitInterval) {
  Rng rng(51);
  for (int t = 0; t < 500; ++t) {
    const Region u = testing::random_region_with_holes(rng, 100, rng.integer(0, 3));
    const RegionSet s = region_intersect_rect(u, SimplePolygon::rectangle(testing::random_box(rng, 100, 1, 100)));
    const double p = probability_uniform(u, s).value;
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(ProbabilityUniform, MonotoneInTheRange) {
  Rng rng(52);
  for (int t = 0; t < 300; ++t) {
    const Region u = testing::random_region_with_holes(rng, 100, rng.integer(0, 3));
    const Mbr small = testing::random_box(rng, 100, 1, 50);
    const Mbr big = small.expanded(rng.uniform(0, 20));
    const double ps = probability_uniform(u, region_intersect_rect(u, SimplePolygon::rectangle(small))).value;
    const double pb = probability_uniform(u, region_intersect_rect(u, SimplePolygon::rectangle(big))).value;
    EXPECT_LE(ps, pb * (1 + 1e-12));
  }
}

TEST(MonteCarlo, UniformMatchesAreaRatioWithinThreeSigma) {
  const MonteCarloResult r = monte_carlo(kHoled, bottom_strip(), Pdf::uniform(), 1000000, 7);
  EXPECT_NEAR(r.p.value, 1.0 / 3.0, 0.0015);
  // The box is 16, u is 12: about three quarters are accepted.
  EXPECT_NEAR(static_cast<double>(r.accepted) / 1e6, 0.75, 0.003);
}

TEST(MonteCarlo, WholeAndEmptyRanges) {
  for (PdfKind k : {PdfKind::uniform, PdfKind::distorted_gaussian}) {
    const Pdf pdf = k == PdfKind::uniform ? Pdf::uniform() : Pdf::distorted_gaussian({2, 2}, 1);
    EXPECT_EQ(probability_monte_carlo(kHoled, {kHoled}, pdf, 5000, 3).value, 1.0);
    EXPECT_EQ(probability_monte_carlo(kHoled, {}, pdf, 5000, 3).value, 0.0);
  }
}

TEST(MonteCarlo, AgreesWithAnalyticOnRandomRegions) {
  Rng rng(53);
  int outside = 0;
  constexpr int kTrials = 100;
  for (int t = 0; t < kTrials; ++t) {
    const Region u = testing::random_region_with_holes(rng, 100, rng.integer(0, 3));
    const RegionSet s = region_intersect_rect(u, SimplePolygon::rectangle(testing::random_box(rng, 100, 10, 90)));
    const double exact = probability_uniform(u, s).value;
    const MonteCarloResult r = monte_carlo(u, s, Pdf::uniform(), 20000, 1000 + t);
    const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(r.accepted));
    if (std::abs(r.p.value - exact) > 3 * se + 1e-12) ++outside;
  }
  // Three sigma covers 99.7%; allow a couple of stragglers.
  EXPECT_LE(outside, 3);
}

TEST(MonteCarlo, DistortedGaussianSymmetricHalf) {
  const Region u(rect(-50, -50, 50, 50));
  const RegionSet s = region_intersect_rect(u, rect(-50, -50, 0, 50));
  const MonteCarloResult r = monte_carlo(u, s, Pdf::distorted_gaussian({0, 0}, 4), 400000, 9);
  EXPECT_NEAR(r.p.value, 0.5, 0.01);
  // Mass near the mean dominates: a thin central band beats its area share.
  const RegionSet band = region_intersect_rect(u, rect(-5, -50, 5, 50));
  EXPECT_GT(probability_monte_carlo(u, band, Pdf::distorted_gaussian({0, 0}, 4), 100000, 9).value, 0.7);
}

TEST(MonteCarlo, DeterministicForSeed) {
  const Pdf g = Pdf::distorted_gaussian({2, 0.5}, 0.8);
  EXPECT_EQ(probability_monte_carlo(kHoled, bottom_strip(), g, 700, 99),
            probability_monte_carlo(kHoled, bottom_strip(), g, 700, 99));
  EXPECT_NE(probability_monte_carlo(kHoled, bottom_strip(), g, 700, 99),
            probability_monte_carlo(kHoled, bottom_strip(), g, 700, 100));
}

TEST(MonteCarlo, ScaledEvaluatorPowersOfTwoAreBitIdentical) {
  Rng rng(54);
  for (int t = 0; t < 50; ++t) {
    const Region u = testing::random_region_with_holes(rng, 100, rng.integer(0, 3));
    const RegionSet s = region_intersect_rect(u, SimplePolygon::rectangle(testing::random_box(rng, 100, 10, 90)));
    const Pdf g = Pdf::distorted_gaussian({rng.uniform(0, 100), rng.uniform(0, 100)}, rng.uniform(4, 10));
    const double base = probability_monte_carlo(u, s, g, 700, 11 + t).value;
    for (double lambda : {0.125, 2.0, 1024.0, 0x1p-40}) {
      const Pdf scaled = Pdf::custom([g, lambda](Point p) { return lambda * g(p); });
      EXPECT_EQ(probability_monte_carlo(u, s, scaled, 700, 11 + t).value, base);
    }
    // Arbitrary factors round each product, so only near equality holds.
    for (double lambda : {0.3, 7.1, 12345.678}) {
      const Pdf scaled = Pdf::custom([g, lambda](Point p) { return lambda * g(p); });
      EXPECT_NEAR(probability_monte_carlo(u, s, scaled, 700, 11 + t).value, base, 1e-12);
    }
  }
}

TEST(MonteCarlo, StarvationAndBadArguments) {
  // A thin diagonal sliver covers almost none of its box.
  const Region sliver(SimplePolygon({{0, 0}, {1000, 1000}, {1000, 1000.001}}));
  EXPECT_THROW(monte_carlo(sliver, {}, Pdf::uniform(), 1, 1), SampleStarvation);
  EXPECT_THROW(monte_carlo(kHoled, {}, Pdf::uniform(), 0, 1), std::invalid_argument);
}

TEST(Pdf, ForObjectBindsMeanAndSigma) {
  const MovingObject o{1, {10, 20}, 25};
  const Pdf g = Pdf::distorted_gaussian().for_object(o);
  EXPECT_EQ(g.mean(), (Point{10, 20}));
  EXPECT_EQ(g.sigma(), 5.0);
  EXPECT_EQ(g({10, 20}), 1.0);
  EXPECT_EQ(Pdf::distorted_gaussian({0, 0}, 3).for_object(o).sigma(), 3.0);
  EXPECT_EQ(Pdf::uniform().for_object(o).kind(), PdfKind::uniform);
}

TEST(Pdf, Names) {
  EXPECT_EQ(parse_pdf_kind("UD"), PdfKind::uniform);
  EXPECT_EQ(parse_pdf_kind("DG"), PdfKind::distorted_gaussian);
  EXPECT_EQ(pdf_kind_name(PdfKind::distorted_gaussian), "DG");
  EXPECT_THROW(parse_pdf_kind("zipf"), std::invalid_argument);
}

TEST(Seeds, ObjectSeedIndependentOfOrder) {
  EXPECT_EQ(object_seed(5, 17), object_seed(5, 17));
  EXPECT_NE(object_seed(5, 17), object_seed(5, 18));
  EXPECT_NE(object_seed(5, 17), object_seed(6, 17));
  // Reference value of the splitmix64 finalizer.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace csprq
