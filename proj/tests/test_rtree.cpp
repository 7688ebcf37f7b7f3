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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "csprq/error.hpp"
#include "csprq/rtree.hpp"
#include "test_support.hpp"

namespace csprq {
namespace {

using testing::Rng;

const Mbr kEverything{{-1e9, -1e9}, {1e9, 1e9}};

std::vector<RTreeEntry> random_entries(Rng& rng, std::size_t n, double space) {
  std::vector<RTreeEntry> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({testing::random_box(rng, space, 0, 20), i + 1});
  return out;
}

std::vector<std::uint64_t> brute(const std::map<std::uint64_t, Mbr>& live, const Mbr& probe) {
  std::vector<std::uint64_t> ids;
  for (const auto& [id, b] : live) {
    if (mbr_intersects(b, probe)) ids.push_back(id);
  }
  return ids;
}

std::vector<std::uint64_t> sorted(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(RTree, EmptyTree) {
  const RTree t;
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.height(), 0u);
  AccessStats st;
  EXPECT_TRUE(t.range_search(kEverything, &st).empty());
  EXPECT_GE(st.nodes_visited, 1u);
  EXPECT_TRUE(t.check_invariants());
}

TEST(RTree, SingleEntry) {
  const RTree t = RTree::build({{{{1, 1}, {2, 2}}, 42}});
  EXPECT_EQ(t.height(), 1u);
  EXPECT_EQ(t.range_search({{1.5, 1.5}, {1.5, 1.5}}), std::vector<std::uint64_t>{42});
  EXPECT_EQ(t.range_search({{2, 2}, {3, 3}}), std::vector<std::uint64_t>{42});
  EXPECT_TRUE(t.range_search({{3, 3}, {4, 4}}).empty());
}

TEST(RTree, RejectsSmallFanoutAndDuplicates) {
  EXPECT_THROW(RTree(3), std::invalid_argument);
  RTree t;
  t.insert({{{0, 0}, {1, 1}}, 1});
  EXPECT_THROW(t.insert({{{0, 0}, {1, 1}}, 1}), std::invalid_argument);
  EXPECT_THROW(t.remove(2), NotFound);
}

TEST(RTree, FiftyThousandEntriesHaveHeightThree) {
  Rng rng(61);
  const RTree t = RTree::build(random_entries(rng, 50000, 10000));
  EXPECT_EQ(t.height(), 3u);
  EXPECT_EQ(t.size(), 50000u);
  EXPECT_EQ(t.pages_per_node(), 1u);
  EXPECT_TRUE(t.check_invariants());
  EXPECT_EQ(t.range_search(kEverything).size(), 50000u);
}

TEST(RTree, HeightFollowsLogFanout) {
  Rng rng(62);
  for (std::size_t n : {10u, 100u, 1000u, 5000u, 20000u}) {
    for (std::size_t f : {4u, 8u, 50u}) {
      const RTree t = RTree::build(random_entries(rng, n, 1000), f);
      const double expect = std::ceil(std::log(static_cast<double>(n)) / std::log(static_cast<double>(f)));
      EXPECT_LE(std::abs(static_cast<double>(t.height()) - expect), 1.0) << n << " " << f;
      EXPECT_TRUE(t.check_invariants());
    }
  }
}

TEST(RTree, SearchMatchesLinearScan) {
  Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const auto entries = random_entries(rng, 1000, 500);
    std::map<std::uint64_t, Mbr> live;
    for (const auto& e : entries) live[e.id] = e.box;
    const RTree tree = RTree::build(entries, t % 2 ? 50 : 6);
    for (int q = 0; q < 50; ++q) {
      const Mbr probe = testing::random_box(rng, 500, 0, 100);
      EXPECT_EQ(sorted(tree.range_search(probe)), brute(live, probe));
    }
    EXPECT_TRUE(tree.range_search({{-10, -10}, {-5, -5}}).empty());
  }
}

TEST(RTree, InterleavedUpdatesMatchOracle) {
  Rng rng(64);
  for (std::size_t fanout : {4u, 10u, 50u}) {
    RTree tree = RTree::build(random_entries(rng, 300, 500), fanout);
    std::map<std::uint64_t, Mbr> live;
    for (std::uint64_t id = 1; id <= 300; ++id) live[id] = *tree.find(id);
    std::uint64_t next_id = 1000;
    for (int step = 0; step < 1000; ++step) {
      if (!live.empty() && rng.integer(0, 1) == 0) {
        auto it = live.begin();
        std::advance(it, rng.integer(0, static_cast<int>(live.size()) - 1));
        tree.remove(it->first);
        EXPECT_FALSE(tree.find(it->first).has_value());
        live.erase(it);
      } else {
        const RTreeEntry e{testing::random_box(rng, 500, 0, 20), next_id++};
        tree.insert(e);
        live[e.id] = e.box;
        EXPECT_EQ(*tree.find(e.id), e.box);
      }
      ASSERT_TRUE(tree.check_invariants()) << "step " << step;
      EXPECT_EQ(tree.size(), live.size());
      const Mbr probe = testing::random_box(rng, 500, 0, 120);
      EXPECT_EQ(sorted(tree.range_search(probe)), brute(live, probe));
    }
    // Drain completely and refill.
    while (!live.empty()) {
      tree.remove(live.begin()->first);
      live.erase(live.begin());
      ASSERT_TRUE(tree.check_invariants());
    }
    EXPECT_EQ(tree.height(), 0u);
    tree.insert({{{0, 0}, {1, 1}}, 5});
    EXPECT_EQ(tree.range_search(kEverything), std::vector<std::uint64_t>{5});
  }
}

TEST(RTree, EmptyProbeCostsLessThanFullProbe) {
  Rng rng(65);
  const RTree t = RTree::build(random_entries(rng, 2500, 10000), 50);
  AccessStats none, all;
  t.range_search({{-100, -100}, {-50, -50}}, &none);
  t.range_search(kEverything, &all);
  EXPECT_GE(none.nodes_visited, 1u);
  EXPECT_LT(none.pages_read, all.pages_read);
  EXPECT_EQ(all.nodes_visited, t.node_count());
}

TEST(RTree, PageProxies) {
  EXPECT_EQ(scan_pages(0), 0u);
  EXPECT_EQ(scan_pages(1), 1u);
  EXPECT_EQ(scan_pages(kPageBytes / kRecordBytes), 1u);
  EXPECT_EQ(scan_pages(kPageBytes / kRecordBytes + 1), 2u);
  EXPECT_EQ(RTree(50).pages_per_node(), 1u);
  EXPECT_EQ(RTree(200).pages_per_node(), 2u);
}

}  // namespace
}  // namespace csprq
