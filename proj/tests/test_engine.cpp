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

#include <stdexcept>

#include "csprq/engine.hpp"
#include "csprq/error.hpp"
#include "test_support.hpp"

namespace csprq {
namespace {

using testing::Rng;
using testing::rect;

constexpr Strategy kAll[] = {Strategy::B, Strategy::S, Strategy::SO, Strategy::PSO};

QueryRange everything() { return QueryRange::from_mbr({{-1e6, -1e6}, {1e6, 1e6}}); }

TEST(Engine, SingleFreeObjectHasProbabilityOne) {
  Workspace w({{1, {100, 100}, 20}}, {});
  precompute_all(w);
  for (Strategy s : kAll) {
    const QueryResult r = run_query(w, s, QueryRange::centered({100, 100}, 60), 1);
    ASSERT_EQ(r.answer.entries.size(), 1u) << strategy_name(s);
    EXPECT_EQ(r.answer.entries[0], (AnswerEntry{1, {1.0}}));
  }
}

TEST(Engine, HalfCoveredObjectInsideRange) {
  Workspace w({{1, {100, 100}, 20}}, {{1, rect(100, 50, 150, 150)}});
  precompute_all(w);
  for (Strategy s : kAll) {
    const QueryResult r = run_query(w, s, everything(), 1);
    ASSERT_EQ(r.answer.entries.size(), 1u);
    EXPECT_EQ(r.answer.entries[0].p.value, 1.0);
  }
  // A range over the blocked half only sees nothing.
  for (Strategy s : kAll) {
    EXPECT_TRUE(run_query(w, s, QueryRange::from_mbr({{101, 90}, {119, 110}}), 1).answer.entries.empty());
  }
}

TEST(Engine, EmptyWorkspaceAndEmptyCandidateSet) {
  Workspace empty({}, {});
  precompute_all(empty);
  for (Strategy s : kAll) EXPECT_TRUE(run_query(empty, s, everything(), 1).answer.entries.empty());

  Workspace w({{1, {100, 100}, 20}}, {});
  AccessStats only_probe;
  w.index_o().range_search(Mbr{{500, 500}, {510, 510}}, &only_probe);
  const QueryResult r = query_S(w, QueryRange::from_mbr({{500, 500}, {510, 510}}), 1);
  EXPECT_TRUE(r.answer.entries.empty());
  EXPECT_EQ(r.access, only_probe);
  EXPECT_EQ(r.counters.candidate_objects, 0u);
}

TEST(Engine, WorkspaceValidation) {
  EXPECT_THROW(Workspace({{1, {0, 0}, 20}, {1, {5, 5}, 20}}, {}), std::invalid_argument);
  EXPECT_THROW(Workspace({{1, {5, 5}, 20}}, {{1, rect(0, 0, 10, 10)}}), ConstraintViolation);
  // On the boundary is allowed.
  EXPECT_NO_THROW(Workspace({{1, {10, 5}, 20}}, {{1, rect(0, 0, 10, 10)}}));
  EXPECT_THROW(QueryRange::from_mbr({{1, 1}, {0, 2}}), InvalidGeometry);
}

TEST(Engine, PsoNeedsCompletePrecomputation) {
  Workspace w({{1, {100, 100}, 20}, {2, {300, 300}, 20}}, {});
  EXPECT_THROW(query_PSO(w, everything(), 1), MissingPrecomputation);
  Precomputer pc(w);
  pc.step();
  EXPECT_EQ(w.precompute_state(), PrecomputeState::in_progress);
  EXPECT_THROW(query_PSO(w, everything(), 1), MissingPrecomputation);
  pc.step();
  EXPECT_TRUE(pc.done());
  EXPECT_EQ(w.precompute_state(), PrecomputeState::complete);
  EXPECT_EQ(query_PSO(w, everything(), 1).answer.entries.size(), 2u);
}

TEST(Engine, PrecomputeStoresApproximationWithoutAreas) {
  Workspace w({{4, {100, 100}, 25}}, {{9, rect(500, 500, 510, 510)}});
  precompute_all(w);
  const Region* u = w.precomputed(4);
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->outer().vertices(), approximate_circle({100, 100}, 25, 32).vertices());
  EXPECT_EQ(*w.index_u().find(4), u->mbr());
}

TEST(Engine, StrategiesAgreeOnRandomWorkspaces) {
  Rng rng(71);
  for (int t = 0; t < 12; ++t) {
    const auto world = testing::random_world(rng, 150, 150, 1000);
    WorkspaceOptions opt;
    opt.pdf = t % 3 == 0 ? Pdf::distorted_gaussian() : Pdf::uniform();
    opt.xi = t % 2 ? 32 : 16;
    Workspace w(world.objects, world.areas, opt);
    precompute_all(w);
    for (int q = 0; q < 10; ++q) {
      const QueryRange r = QueryRange::centered({rng.uniform(0, 1000), rng.uniform(0, 1000)}, rng.uniform(50, 400));
      const std::uint64_t seed = 100 * t + q;
      const QueryResult b = query_B(w, r, seed);
      EXPECT_EQ(query_S(w, r, seed).answer, b.answer);
      EXPECT_EQ(query_SO(w, r, seed).answer, b.answer);
      EXPECT_EQ(query_PSO(w, r, seed).answer, b.answer);
      for (const AnswerEntry& e : b.answer.entries) {
        EXPECT_GT(e.p.value, 0.0);
        EXPECT_LE(e.p.value, 1.0);
      }
      for (std::size_t i = 1; i < b.answer.entries.size(); ++i) {
        EXPECT_LT(b.answer.entries[i - 1].id, b.answer.entries[i].id);
      }
    }
  }
}

TEST(Engine, DeterministicIncludingCounters) {
  Rng rng(72);
  const auto world = testing::random_world(rng, 200, 200, 1000);
  WorkspaceOptions opt;
  opt.pdf = Pdf::distorted_gaussian();
  Workspace w(world.objects, world.areas, opt);
  precompute_all(w);
  const QueryRange r = QueryRange::centered({500, 500}, 300);
  for (Strategy s : kAll) {
    const QueryResult a = run_query(w, s, r, 5), b = run_query(w, s, r, 5);
    EXPECT_EQ(a.answer, b.answer);
    EXPECT_EQ(a.access, b.access);
    EXPECT_EQ(a.counters, b.counters);
  }
}

TEST(Engine, GrowingRangeNeverDropsObjects) {
  Rng rng(73);
  const auto world = testing::random_world(rng, 200, 200, 1000);
  Workspace w(world.objects, world.areas);
  for (int t = 0; t < 30; ++t) {
    const Point c{rng.uniform(0, 1000), rng.uniform(0, 1000)};
    const double side = rng.uniform(20, 300);
    const QueryAnswer small = query_SO(w, QueryRange::centered(c, side), 1).answer;
    const QueryAnswer big = query_SO(w, QueryRange::centered(c, side + rng.uniform(0, 100)), 1).answer;
    std::size_t j = 0;
    for (const AnswerEntry& e : small.entries) {
      while (j < big.entries.size() && big.entries[j].id < e.id) ++j;
      ASSERT_LT(j, big.entries.size());
      EXPECT_EQ(big.entries[j].id, e.id);
      EXPECT_GE(big.entries[j].p.value, e.p.value * (1 - 1e-12));
    }
  }
}

TEST(Engine, OptimizedStrategyDoesFewerSubtractionsAfterEarlySplit) {
  // A long bar splits the circle; small areas on the far side are pruned by
  // the shrunken box.
  std::vector<RestrictedArea> areas{{1, rect(505, 440, 510, 560)}};
  std::uint64_t id = 2;
  for (double y = 460; y <= 530; y += 14) areas.push_back({id++, rect(525, y, 530, y + 6)});
  Workspace w({{1, {480, 500}, 45}}, areas);
  const QueryRange r = QueryRange::centered({480, 500}, 200);
  const QueryResult s = query_S(w, r, 1), so = query_SO(w, r, 1);
  EXPECT_EQ(s.answer, so.answer);
  EXPECT_LT(so.counters.ops.subtractions, s.counters.ops.subtractions);
  EXPECT_GT(so.counters.ops.pruned_by_mbr, 0u);
}

TEST(Engine, BScansEverythingSUsesPages) {
  Rng rng(74);
  const auto world = testing::random_world(rng, 400, 400, 2000);
  Workspace w(world.objects, world.areas);
  const QueryRange r = QueryRange::centered({1000, 1000}, 200);
  const QueryResult b = query_B(w, r, 1);
  EXPECT_GE(b.access.records_scanned, w.objects().size());
  EXPECT_GT(b.access.pages_read, query_S(w, r, 1).access.pages_read);
}

TEST(ReportLocation, MovesTheObject) {
  Workspace w({{1, {100, 100}, 20}, {2, {700, 700}, 20}}, {{1, rect(400, 400, 450, 450)}});
  precompute_all(w);
  report_location(w, 1, {300, 300});
  const QueryRange at_new = QueryRange::centered({300, 300}, 60);
  const QueryRange at_old = QueryRange::centered({100, 100}, 60);
  for (Strategy s : kAll) {
    const QueryAnswer a = run_query(w, s, at_new, 1).answer;
    ASSERT_EQ(a.entries.size(), 1u);
    EXPECT_EQ(a.entries[0], (AnswerEntry{1, {1.0}}));
    EXPECT_TRUE(run_query(w, s, at_old, 1).answer.entries.empty());
  }
  EXPECT_EQ(w.precomputed(1)->mbr(), approximate_circle({300, 300}, 20, 32).mbr());
  EXPECT_THROW(report_location(w, 99, {0, 0}), NotFound);
  EXPECT_THROW(report_location(w, 2, {420, 420}), ConstraintViolation);
}

TEST(ReportLocation, DuringPrecomputation) {
  Workspace w({{1, {100, 100}, 20}, {2, {200, 200}, 20}, {3, {300, 300}, 20}}, {});
  Precomputer pc(w);
  ASSERT_TRUE(pc.step());  // object 1 done
  // Already processed: recomputed at once.
  report_location(w, 1, {150, 100});
  EXPECT_EQ(w.precomputed(1)->mbr(), approximate_circle({150, 100}, 20, 32).mbr());
  // Pending: only recorded, processed later with the new location.
  report_location(w, 3, {600, 600});
  EXPECT_EQ(w.precomputed(3), nullptr);
  while (pc.step()) {
  }
  EXPECT_EQ(pc.report().objects, 3u);
  EXPECT_EQ(w.precomputed(3)->mbr(), approximate_circle({600, 600}, 20, 32).mbr());
  EXPECT_EQ(query_PSO(w, QueryRange::centered({600, 600}, 60), 1).answer.entries.size(), 1u);
  EXPECT_TRUE(query_PSO(w, QueryRange::centered({300, 300}, 30), 1).answer.entries.empty());
}

TEST(Strategy, Names) {
  for (Strategy s : kAll) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_THROW(parse_strategy("X"), std::invalid_argument);
}

}  // namespace
}  // namespace csprq
