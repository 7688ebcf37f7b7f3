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

#include "csprq/rtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "csprq/error.hpp"

namespace csprq {

std::uint64_t scan_pages(std::uint64_t records) {
  return (records * kRecordBytes + kPageBytes - 1) / kPageBytes;
}

RTree::RTree(std::size_t fanout) : fanout_(fanout), min_fill_(std::max<std::size_t>(2, fanout * 2 / 5)) {
  if (fanout < 4) throw std::invalid_argument("fanout must be at least 4");
}

std::uint32_t RTree::new_node(bool leaf) {
  std::uint32_t n;
  if (!free_.empty()) {
    n = free_.back();
    free_.pop_back();
    nodes_[n] = Node{};
  } else {
    n = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[n].leaf = leaf;
  return n;
}

void RTree::free_node(std::uint32_t n) {
  nodes_[n] = Node{};
  free_.push_back(n);
}

Mbr RTree::node_box(std::uint32_t n) const {
  const Node& node = nodes_[n];
  Mbr b = node.boxes.front();
  for (std::size_t i = 1; i < node.boxes.size(); ++i) b = b.merged(node.boxes[i]);
  return b;
}

namespace {

Point center(const Mbr& b) { return {(b.lo.x + b.hi.x) * 0.5, (b.lo.y + b.hi.y) * 0.5}; }

}  // namespace

RTree RTree::build(std::vector<RTreeEntry> entries, std::size_t fanout) {
  RTree t(fanout);
  for (const RTreeEntry& e : entries) {
    if (!t.boxes_.emplace(e.id, e.box).second) {
      throw std::invalid_argument("duplicate id " + std::to_string(e.id));
    }
  }
  if (entries.empty()) return t;

  // Level items: (box, ref); refs are ids at the leaf level, node indices
  // above.
  struct Item {
    Mbr box;
    std::uint64_t ref;
  };
  std::vector<Item> items;
  items.reserve(entries.size());
  for (const RTreeEntry& e : entries) items.push_back({e.box, e.id});

  bool leaf = true;
  for (;;) {
    const std::size_t n = items.size();
    const std::size_t pages = (n + fanout - 1) / fanout;
    const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(pages))));
    const std::size_t per_slice = slices * fanout;
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      const double ax = center(a.box).x, bx = center(b.box).x;
      return ax != bx ? ax < bx : a.ref < b.ref;
    });
    std::vector<Item> parents;
    for (std::size_t s = 0; s < n; s += per_slice) {
      const std::size_t end = std::min(n, s + per_slice);
      std::sort(items.begin() + static_cast<std::ptrdiff_t>(s),
                items.begin() + static_cast<std::ptrdiff_t>(end), [](const Item& a, const Item& b) {
                  const double ay = center(a.box).y, by = center(b.box).y;
                  return ay != by ? ay < by : a.ref < b.ref;
                });
      for (std::size_t i = s; i < end; i += fanout) {
        const std::uint32_t node = t.new_node(leaf);
        for (std::size_t k = i; k < std::min(end, i + fanout); ++k) {
          t.nodes_[node].boxes.push_back(items[k].box);
          t.nodes_[node].refs.push_back(items[k].ref);
        }
        parents.push_back({t.node_box(node), node});
      }
    }
    if (parents.size() == 1) {
      t.root_ = static_cast<std::uint32_t>(parents.front().ref);
      return t;
    }
    items = std::move(parents);
    leaf = false;
  }
}

void RTree::range_search(const Mbr& probe, std::vector<std::uint64_t>& out,
                         AccessStats* stats) const {
  if (!root_) {
    if (stats) {
      ++stats->nodes_visited;
      stats->pages_read += pages_per_node();
    }
    return;
  }
  std::vector<std::uint32_t> stack{*root_};
  std::uint64_t visited = 0;
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    ++visited;
    for (std::size_t i = 0; i < node.boxes.size(); ++i) {
      if (!mbr_intersects(node.boxes[i], probe)) continue;
      if (node.leaf) {
        out.push_back(node.refs[i]);
      } else {
        stack.push_back(static_cast<std::uint32_t>(node.refs[i]));
      }
    }
  }
  if (stats) {
    stats->nodes_visited += visited;
    stats->pages_read += visited * pages_per_node();
  }
}

std::vector<std::uint64_t> RTree::range_search(const Mbr& probe, AccessStats* stats) const {
  std::vector<std::uint64_t> out;
  range_search(probe, out, stats);
  return out;
}

std::size_t RTree::pages_per_node() const {
  const std::size_t bytes = 16 + fanout_ * kRecordBytes;
  return (bytes + kPageBytes - 1) / kPageBytes;
}

std::size_t RTree::height() const {
  if (!root_) return 0;
  std::size_t h = 1;
  std::uint32_t n = *root_;
  while (!nodes_[n].leaf) {
    n = static_cast<std::uint32_t>(nodes_[n].refs.front());
    ++h;
  }
  return h;
}

std::size_t RTree::node_count() const { return nodes_.size() - free_.size(); }

std::optional<Mbr> RTree::find(std::uint64_t id) const {
  auto it = boxes_.find(id);
  if (it == boxes_.end()) return std::nullopt;
  return it->second;
}

void RTree::insert(const RTreeEntry& e) {
  if (!boxes_.emplace(e.id, e.box).second) {
    throw std::invalid_argument("duplicate id " + std::to_string(e.id));
  }
  insert_entry(e);
}

void RTree::insert_entry(const RTreeEntry& e) {
  if (!root_) {
    root_ = new_node(true);
    nodes_[*root_].boxes.push_back(e.box);
    nodes_[*root_].refs.push_back(e.id);
    return;
  }
  const std::size_t leaf_depth = height();
  if (auto sibling = insert_rec(*root_, e, 1, leaf_depth)) {
    const std::uint32_t old_root = *root_;
    const std::uint32_t r = new_node(false);
    nodes_[r].boxes = {node_box(old_root), node_box(*sibling)};
    nodes_[r].refs = {old_root, *sibling};
    root_ = r;
  }
}

std::optional<std::uint32_t> RTree::insert_rec(std::uint32_t n, const RTreeEntry& e,
                                               std::size_t depth, std::size_t leaf_depth) {
  if (depth == leaf_depth) {
    nodes_[n].boxes.push_back(e.box);
    nodes_[n].refs.push_back(e.id);
  } else {
    // Least enlargement, ties by smaller area.
    std::size_t best = 0;
    double best_grow = std::numeric_limits<double>::infinity();
    double best_area = best_grow;
    for (std::size_t i = 0; i < nodes_[n].boxes.size(); ++i) {
      const Mbr& b = nodes_[n].boxes[i];
      const double area = b.area();
      const double grow = b.merged(e.box).area() - area;
      if (grow < best_grow || (grow == best_grow && area < best_area)) {
        best = i;
        best_grow = grow;
        best_area = area;
      }
    }
    const auto child = static_cast<std::uint32_t>(nodes_[n].refs[best]);
    auto sibling = insert_rec(child, e, depth + 1, leaf_depth);
    nodes_[n].boxes[best] = node_box(child);
    if (sibling) {
      nodes_[n].boxes.push_back(node_box(*sibling));
      nodes_[n].refs.push_back(*sibling);
    }
  }
  if (nodes_[n].boxes.size() > fanout_) return split(n);
  return std::nullopt;
}

std::uint32_t RTree::split(std::uint32_t n) {
  std::vector<Mbr> boxes = std::move(nodes_[n].boxes);
  std::vector<std::uint64_t> refs = std::move(nodes_[n].refs);
  const bool leaf = nodes_[n].leaf;
  const std::size_t count = boxes.size();

  // Quadratic seeds: the pair wasting the most area.
  std::size_t s1 = 0, s2 = 1;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double waste = boxes[i].merged(boxes[j]).area() - boxes[i].area() - boxes[j].area();
      if (waste > worst) {
        worst = waste;
        s1 = i;
        s2 = j;
      }
    }
  }

  const std::uint32_t m = new_node(leaf);
  Node& a = nodes_[n];
  a.boxes.clear();
  a.refs.clear();
  a.boxes.push_back(boxes[s1]);
  a.refs.push_back(refs[s1]);
  nodes_[m].boxes.push_back(boxes[s2]);
  nodes_[m].refs.push_back(refs[s2]);
  Mbr box_a = boxes[s1], box_b = boxes[s2];

  std::vector<bool> done(count, false);
  done[s1] = done[s2] = true;
  std::size_t remaining = count - 2;
  while (remaining > 0) {
    Node& na = nodes_[n];
    Node& nb = nodes_[m];
    // Force the rest into a group that would otherwise stay underfull.
    Node* forced = nullptr;
    Mbr* forced_box = nullptr;
    if (na.boxes.size() + remaining == min_fill_) {
      forced = &na;
      forced_box = &box_a;
    } else if (nb.boxes.size() + remaining == min_fill_) {
      forced = &nb;
      forced_box = &box_b;
    }
    if (forced) {
      for (std::size_t i = 0; i < count; ++i) {
        if (done[i]) continue;
        forced->boxes.push_back(boxes[i]);
        forced->refs.push_back(refs[i]);
        *forced_box = forced_box->merged(boxes[i]);
        done[i] = true;
      }
      break;
    }
    // Pick next: largest preference difference.
    std::size_t pick = count;
    double best_diff = -1.0;
    double grow_a = 0.0, grow_b = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (done[i]) continue;
      const double ga = box_a.merged(boxes[i]).area() - box_a.area();
      const double gb = box_b.merged(boxes[i]).area() - box_b.area();
      const double diff = std::abs(ga - gb);
      if (diff > best_diff) {
        best_diff = diff;
        pick = i;
        grow_a = ga;
        grow_b = gb;
      }
    }
    bool to_a;
    if (grow_a != grow_b) {
      to_a = grow_a < grow_b;
    } else if (box_a.area() != box_b.area()) {
      to_a = box_a.area() < box_b.area();
    } else {
      to_a = na.boxes.size() <= nb.boxes.size();
    }
    Node& target = to_a ? na : nb;
    Mbr& tbox = to_a ? box_a : box_b;
    target.boxes.push_back(boxes[pick]);
    target.refs.push_back(refs[pick]);
    tbox = tbox.merged(boxes[pick]);
    done[pick] = true;
    --remaining;
  }
  return m;
}

void RTree::collect(std::uint32_t n, std::vector<RTreeEntry>& out) {
  Node node = std::move(nodes_[n]);
  free_node(n);
  for (std::size_t i = 0; i < node.boxes.size(); ++i) {
    if (node.leaf) {
      out.push_back({node.boxes[i], node.refs[i]});
    } else {
      collect(static_cast<std::uint32_t>(node.refs[i]), out);
    }
  }
}

bool RTree::remove_rec(std::uint32_t n, std::uint64_t id, const Mbr& box,
                       std::vector<RTreeEntry>& orphans) {
  Node& node = nodes_[n];
  if (node.leaf) {
    for (std::size_t i = 0; i < node.refs.size(); ++i) {
      if (node.refs[i] == id) {
        node.boxes.erase(node.boxes.begin() + static_cast<std::ptrdiff_t>(i));
        node.refs.erase(node.refs.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
    }
    return false;
  }
  for (std::size_t i = 0; i < nodes_[n].boxes.size(); ++i) {
    if (!nodes_[n].boxes[i].contains(box)) continue;
    const auto child = static_cast<std::uint32_t>(nodes_[n].refs[i]);
    if (!remove_rec(child, id, box, orphans)) continue;
    if (nodes_[child].boxes.size() < min_fill_) {
      collect(child, orphans);
      nodes_[n].boxes.erase(nodes_[n].boxes.begin() + static_cast<std::ptrdiff_t>(i));
      nodes_[n].refs.erase(nodes_[n].refs.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      nodes_[n].boxes[i] = node_box(child);
    }
    return true;
  }
  return false;
}

void RTree::remove(std::uint64_t id) {
  auto it = boxes_.find(id);
  if (it == boxes_.end()) throw NotFound("id " + std::to_string(id) + " not in index");
  const Mbr box = it->second;
  boxes_.erase(it);

  std::vector<RTreeEntry> orphans;
  if (!remove_rec(*root_, id, box, orphans)) {
    throw std::logic_error("index corrupted: id missing from tree");
  }
  // Shrink the root while it is an inner node with a single child.
  while (root_ && !nodes_[*root_].leaf && nodes_[*root_].refs.size() == 1) {
    const auto child = static_cast<std::uint32_t>(nodes_[*root_].refs.front());
    free_node(*root_);
    root_ = child;
  }
  if (root_ && nodes_[*root_].refs.empty()) {
    free_node(*root_);
    root_.reset();
  }
  for (const RTreeEntry& e : orphans) insert_entry(e);
}

bool RTree::check_rec(std::uint32_t n, std::size_t depth, std::size_t& leaf_depth,
                      std::size_t& records) const {
  const Node& node = nodes_[n];
  if (node.boxes.size() != node.refs.size() || node.boxes.empty()) return false;
  if (node.boxes.size() > fanout_) return false;
  // No minimum-fill check: bulk loading may leave a short last tile.
  if (node.leaf) {
    if (leaf_depth == 0) leaf_depth = depth;
    if (leaf_depth != depth) return false;
    for (std::size_t i = 0; i < node.refs.size(); ++i) {
      auto it = boxes_.find(node.refs[i]);
      if (it == boxes_.end() || !(it->second == node.boxes[i])) return false;
    }
    records += node.refs.size();
    return true;
  }
  for (std::size_t i = 0; i < node.refs.size(); ++i) {
    const auto child = static_cast<std::uint32_t>(node.refs[i]);
    if (!node.boxes[i].contains(node_box(child))) return false;
    if (!check_rec(child, depth + 1, leaf_depth, records)) return false;
  }
  return true;
}

bool RTree::check_invariants() const {
  if (!root_) return boxes_.empty();
  std::size_t leaf_depth = 0, records = 0;
  if (!check_rec(*root_, 1, leaf_depth, records)) return false;
  return records == boxes_.size();
}

}  // namespace csprq
