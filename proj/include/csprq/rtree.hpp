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

// In-memory R-tree over (box, id) entries with page-access accounting.
//
// Bulk loading uses sort-tile-recursive packing; later inserts use the
// classic quadratic split and removals condense underfull nodes by
// reinserting their records. Every node counts as one page read when a
// search visits it.

#ifndef CSPRQ_RTREE_HPP_
#define CSPRQ_RTREE_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "csprq/geometry.hpp"

namespace csprq {

inline constexpr std::size_t kPageBytes = 4096;
inline constexpr std::size_t kDefaultFanout = 50;
// Bytes per stored (box, id) record: four doubles and an id.
inline constexpr std::size_t kRecordBytes = 40;

struct AccessStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t pages_read = 0;
  std::uint64_t records_scanned = 0;  // linear scans only

  AccessStats& operator+=(const AccessStats& o) {
    nodes_visited += o.nodes_visited;
    pages_read += o.pages_read;
    records_scanned += o.records_scanned;
    return *this;
  }
  friend bool operator==(const AccessStats&, const AccessStats&) = default;
};

// Page proxy for a linear scan over `records` stored contiguously.
std::uint64_t scan_pages(std::uint64_t records);

struct RTreeEntry {
  Mbr box;
  std::uint64_t id = 0;
};

class RTree {
 public:
  // Throws std::invalid_argument for fanout < 4.
  explicit RTree(std::size_t fanout = kDefaultFanout);

  // Bulk load; ids must be unique.
  static RTree build(std::vector<RTreeEntry> entries, std::size_t fanout = kDefaultFanout);

  // Ids whose box meets `probe` (closed intervals).
  std::vector<std::uint64_t> range_search(const Mbr& probe, AccessStats* stats = nullptr) const;
  void range_search(const Mbr& probe, std::vector<std::uint64_t>& out,
                    AccessStats* stats = nullptr) const;

  // Throws std::invalid_argument when the id is already present.
  void insert(const RTreeEntry& e);
  // Throws NotFound when the id is absent.
  void remove(std::uint64_t id);

  std::optional<Mbr> find(std::uint64_t id) const;
  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }
  std::size_t fanout() const { return fanout_; }
  // Levels from root to leaves; 0 when empty.
  std::size_t height() const;
  std::size_t node_count() const;
  std::size_t pages_per_node() const;

  // Structural check: fanout bounds, containment of child boxes in parent
  // entries, equal leaf depth, id table consistency.
  bool check_invariants() const;

 private:
  struct Node {
    bool leaf = true;
    std::vector<Mbr> boxes;
    std::vector<std::uint64_t> refs;  // record id (leaf) or node index
  };

  std::uint32_t new_node(bool leaf);
  void free_node(std::uint32_t n);
  Mbr node_box(std::uint32_t n) const;
  std::optional<std::uint32_t> insert_rec(std::uint32_t n, const RTreeEntry& e,
                                          std::size_t depth, std::size_t leaf_depth);
  std::uint32_t split(std::uint32_t n);
  bool remove_rec(std::uint32_t n, std::uint64_t id, const Mbr& box,
                  std::vector<RTreeEntry>& orphans);
  void collect(std::uint32_t n, std::vector<RTreeEntry>& out);
  bool check_rec(std::uint32_t n, std::size_t depth, std::size_t& leaf_depth,
                 std::size_t& records) const;
  void insert_entry(const RTreeEntry& e);

  std::size_t fanout_;
  std::size_t min_fill_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
  std::optional<std::uint32_t> root_;
  std::unordered_map<std::uint64_t, Mbr> boxes_;
};

}  // namespace csprq

#endif  // CSPRQ_RTREE_HPP_
