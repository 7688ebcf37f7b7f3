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

// Constrained-space probabilistic range queries.
//
// Strategies:
//   B    linear scans over objects and areas, basic uncertainty regions
//   S    index probes, basic uncertainty regions, plain intersection
//   SO   index probes, optimized uncertainty regions and intersection
//   PSO  uncertainty regions precomputed and indexed by their own boxes
//
// All four return the same answer for the same workspace, range and seed:
// probabilities agree bit for bit.

#ifndef CSPRQ_ENGINE_HPP_
#define CSPRQ_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csprq/kernels.hpp"
#include "csprq/probability.hpp"
#include "csprq/region.hpp"
#include "csprq/rtree.hpp"
#include "csprq/uncertainty.hpp"

namespace csprq {

enum class Strategy { B, S, SO, PSO };

std::string_view strategy_name(Strategy s);
// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(std::string_view s);

struct QueryRange {
  SimplePolygon rect;
  Mbr mbr;

  // Throws InvalidGeometry for an empty or inverted box.
  static QueryRange from_mbr(const Mbr& box);
  static QueryRange centered(Point c, double side) {
    return from_mbr(Mbr::square(c, side / 2.0));
  }
};

struct AnswerEntry {
  std::uint64_t id = 0;
  Probability p;
  friend bool operator==(const AnswerEntry&, const AnswerEntry&) = default;
};

// Sorted by id; every probability is positive.
struct QueryAnswer {
  std::vector<AnswerEntry> entries;
  friend bool operator==(const QueryAnswer&, const QueryAnswer&) = default;
};

struct QueryCounters {
  std::uint64_t candidate_objects = 0;
  std::uint64_t candidate_areas = 0;
  std::uint64_t mc_samples = 0;
  OpStats ops;

  QueryCounters& operator+=(const QueryCounters& o);
  friend bool operator==(const QueryCounters&, const QueryCounters&) = default;
};

struct QueryResult {
  QueryAnswer answer;
  AccessStats access;
  QueryCounters counters;
};

struct WorkspaceOptions {
  int xi = 32;
  std::uint64_t n1 = 700;
  Pdf pdf = Pdf::uniform();
  std::size_t fanout = kDefaultFanout;
};

enum class PrecomputeState { none, in_progress, complete };

class Workspace {
 public:
  // Builds both indexes. Throws std::invalid_argument on duplicate ids and
  // ConstraintViolation when a location lies strictly inside an area.
  Workspace(std::vector<MovingObject> objects, std::vector<RestrictedArea> areas,
            WorkspaceOptions options = {});

  const std::vector<MovingObject>& objects() const { return objects_; }
  const std::vector<RestrictedArea>& areas() const { return areas_; }
  const WorkspaceOptions& options() const { return options_; }
  void set_pdf(Pdf pdf) { options_.pdf = std::move(pdf); }
  void set_n1(std::uint64_t n1) { options_.n1 = n1; }

  // Throws NotFound.
  const MovingObject& object(std::uint64_t id) const;
  const RestrictedArea& area(std::uint64_t id) const;

  const RTree& index_o() const { return index_o_; }
  const RTree& index_r() const { return index_r_; }
  const RTree& index_u() const { return index_u_; }

  PrecomputeState precompute_state() const { return pso_state_; }
  // Stored uncertainty region, if computed.
  const Region* precomputed(std::uint64_t id) const;

  // Restricted areas whose boxes meet the object's box.
  std::vector<const RestrictedArea*> candidate_areas(const MovingObject& o,
                                                     AccessStats* stats) const;
  std::vector<const RestrictedArea*> candidate_areas_scan(const MovingObject& o,
                                                          AccessStats* stats) const;
  std::vector<std::uint64_t> candidate_objects_scan(const Mbr& probe, AccessStats* stats) const;

  // True when `p` lies strictly inside some restricted area.
  bool violates_constraints(Point p) const;

 private:
  friend class Precomputer;
  friend void report_location(Workspace&, std::uint64_t, Point);

  Region compute_u(const MovingObject& o, OpStats* ops) const;
  void store_u(std::uint64_t id, Region u);

  WorkspaceOptions options_;
  std::vector<MovingObject> objects_;
  std::vector<RestrictedArea> areas_;
  std::unordered_map<std::uint64_t, std::size_t> object_slot_;
  std::unordered_map<std::uint64_t, std::size_t> area_slot_;
  kernels::MbrColumns object_boxes_;
  kernels::MbrColumns area_boxes_;
  RTree index_o_;
  RTree index_r_;
  RTree index_u_;
  std::unordered_map<std::uint64_t, Region> precomputed_;
  PrecomputeState pso_state_ = PrecomputeState::none;
};

QueryResult query_B(const Workspace& w, const QueryRange& r, std::uint64_t seed);
QueryResult query_S(const Workspace& w, const QueryRange& r, std::uint64_t seed);
QueryResult query_SO(const Workspace& w, const QueryRange& r, std::uint64_t seed);
// Throws MissingPrecomputation unless precomputation is complete.
QueryResult query_PSO(const Workspace& w, const QueryRange& r, std::uint64_t seed);
QueryResult run_query(const Workspace& w, Strategy s, const QueryRange& r, std::uint64_t seed);

struct PrecomputeReport {
  std::uint64_t objects = 0;
  double seconds = 0.0;
  OpStats ops;
};

// Incremental precomputation, one object per step in ascending id order.
// Location reports that arrive in between are honoured: objects already
// processed are recomputed at once, pending ones are processed later with
// their new location.
class Precomputer {
 public:
  explicit Precomputer(Workspace& w);

  // Processes the next pending object; false once everything is done.
  bool step();
  bool done() const { return next_ >= order_.size(); }
  const PrecomputeReport& report() const { return report_; }

 private:
  Workspace& w_;
  std::vector<std::uint64_t> order_;
  std::size_t next_ = 0;
  PrecomputeReport report_;
};

PrecomputeReport precompute_all(Workspace& w);

// Moves an object. Throws NotFound for an unknown id and ConstraintViolation
// for a location strictly inside a restricted area. A precomputed region is
// recomputed and reindexed before returning.
void report_location(Workspace& w, std::uint64_t id, Point new_location);

}  // namespace csprq

#endif  // CSPRQ_ENGINE_HPP_
