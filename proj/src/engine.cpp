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

#include "csprq/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "csprq/error.hpp"

namespace csprq {

namespace {

// Uniform answers below this area are treated as zero probability.
constexpr double kMinAnswerArea = 1e-12;

}  // namespace

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::B: return "B";
    case Strategy::S: return "S";
    case Strategy::SO: return "SO";
    case Strategy::PSO: return "PSO";
  }
  return "?";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "B") return Strategy::B;
  if (s == "S") return Strategy::S;
  if (s == "SO") return Strategy::SO;
  if (s == "PSO") return Strategy::PSO;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

QueryRange QueryRange::from_mbr(const Mbr& box) {
  if (!(box.width() > 0.0) || !(box.height() > 0.0)) {
    throw InvalidGeometry("query range must have positive width and height");
  }
  return {SimplePolygon::rectangle(box), box};
}

QueryCounters& QueryCounters::operator+=(const QueryCounters& o) {
  candidate_objects += o.candidate_objects;
  candidate_areas += o.candidate_areas;
  mc_samples += o.mc_samples;
  ops += o.ops;
  return *this;
}

Workspace::Workspace(std::vector<MovingObject> objects, std::vector<RestrictedArea> areas,
                     WorkspaceOptions options)
    : options_(std::move(options)),
      objects_(std::move(objects)),
      areas_(std::move(areas)),
      index_o_(options_.fanout),
      index_r_(options_.fanout),
      index_u_(options_.fanout) {
  if (options_.xi < 3) throw std::invalid_argument("xi must be at least 3");
  if (options_.n1 < 1) throw std::invalid_argument("n1 must be at least 1");
  std::vector<RTreeEntry> area_entries;
  area_entries.reserve(areas_.size());
  for (std::size_t i = 0; i < areas_.size(); ++i) {
    if (!area_slot_.emplace(areas_[i].id, i).second) {
      throw std::invalid_argument("duplicate area id " + std::to_string(areas_[i].id));
    }
    area_boxes_.push_back(areas_[i].shape.mbr());
    area_entries.push_back({areas_[i].shape.mbr(), areas_[i].id});
  }
  index_r_ = RTree::build(std::move(area_entries), options_.fanout);

  std::vector<RTreeEntry> object_entries;
  object_entries.reserve(objects_.size());
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const MovingObject& o = objects_[i];
    if (!object_slot_.emplace(o.id, i).second) {
      throw std::invalid_argument("duplicate object id " + std::to_string(o.id));
    }
    if (!(o.tau > 0.0)) throw InvalidGeometry("object " + std::to_string(o.id) + ": tau must be positive");
    if (violates_constraints(o.location)) {
      throw ConstraintViolation("object " + std::to_string(o.id) + " lies inside a restricted area");
    }
    object_boxes_.push_back(o.mbr());
    object_entries.push_back({o.mbr(), o.id});
  }
  index_o_ = RTree::build(std::move(object_entries), options_.fanout);
}

const MovingObject& Workspace::object(std::uint64_t id) const {
  auto it = object_slot_.find(id);
  if (it == object_slot_.end()) throw NotFound("unknown object " + std::to_string(id));
  return objects_[it->second];
}

const RestrictedArea& Workspace::area(std::uint64_t id) const {
  auto it = area_slot_.find(id);
  if (it == area_slot_.end()) throw NotFound("unknown area " + std::to_string(id));
  return areas_[it->second];
}

const Region* Workspace::precomputed(std::uint64_t id) const {
  auto it = precomputed_.find(id);
  return it == precomputed_.end() ? nullptr : &it->second;
}

bool Workspace::violates_constraints(Point p) const {
  for (std::uint64_t id : index_r_.range_search(Mbr{p, p})) {
    if (point_in_polygon(p, area(id).shape) == Containment::inside) return true;
  }
  return false;
}

std::vector<const RestrictedArea*> Workspace::candidate_areas(const MovingObject& o,
                                                              AccessStats* stats) const {
  std::vector<const RestrictedArea*> out;
  for (std::uint64_t id : index_r_.range_search(o.mbr(), stats)) out.push_back(&area(id));
  return out;
}

std::vector<const RestrictedArea*> Workspace::candidate_areas_scan(const MovingObject& o,
                                                                   AccessStats* stats) const {
  std::vector<std::uint32_t> hits;
  kernels::mbr_overlap_scan(area_boxes_, o.mbr(), hits);
  if (stats) {
    stats->records_scanned += area_boxes_.size();
    stats->pages_read += scan_pages(area_boxes_.size());
  }
  std::vector<const RestrictedArea*> out;
  out.reserve(hits.size());
  for (std::uint32_t i : hits) out.push_back(&areas_[i]);
  return out;
}

std::vector<std::uint64_t> Workspace::candidate_objects_scan(const Mbr& probe,
                                                             AccessStats* stats) const {
  std::vector<std::uint32_t> hits;
  kernels::mbr_overlap_scan(object_boxes_, probe, hits);
  if (stats) {
    stats->records_scanned += object_boxes_.size();
    stats->pages_read += scan_pages(object_boxes_.size());
  }
  std::vector<std::uint64_t> out;
  out.reserve(hits.size());
  for (std::uint32_t i : hits) out.push_back(objects_[i].id);
  return out;
}

Region Workspace::compute_u(const MovingObject& o, OpStats* ops) const {
  const SimplePolygon e = approximate_circle(o.location, o.tau, options_.xi);
  return compute_uncertainty_optimized(e, candidate_areas(o, nullptr), o.location, ops);
}

void Workspace::store_u(std::uint64_t id, Region u) {
  if (index_u_.find(id)) index_u_.remove(id);
  index_u_.insert({u.mbr(), id});
  precomputed_.insert_or_assign(id, std::move(u));
}

namespace {

// Probability of one object given its region and the clipped part; appends
// to the answer when nonzero.
void evaluate(const Workspace& w, const MovingObject& o, const Region& u, const RegionSet& s,
              std::uint64_t seed, QueryResult& out) {
  const Pdf& pdf = w.options().pdf;
  if (pdf.kind() == PdfKind::uniform) {
    const Probability p = probability_uniform(u, s);
    if (regionset_area(s) >= kMinAnswerArea && p.value > 0.0) {
      out.answer.entries.push_back({o.id, p});
    }
    return;
  }
  if (s.empty()) return;
  const MonteCarloResult mc =
      monte_carlo(u, s, pdf.for_object(o), w.options().n1, object_seed(seed, o.id));
  out.counters.mc_samples += w.options().n1;
  if (mc.hits > 0) out.answer.entries.push_back({o.id, mc.p});
}

template <typename Fn>
void per_object(std::uint64_t id, Fn&& fn) {
  try {
    fn();
  } catch (const ObjectError&) {
    throw;
  } catch (const std::logic_error& ex) {
    throw ObjectError(id, ex.what());
  } catch (const std::runtime_error& ex) {
    throw ObjectError(id, ex.what());
  }
}

void finish(QueryResult& out) {
  std::sort(out.answer.entries.begin(), out.answer.entries.end(),
            [](const AnswerEntry& a, const AnswerEntry& b) { return a.id < b.id; });
}

enum class Plan { scan_basic, index_basic, index_optimized };

QueryResult query_common(const Workspace& w, const QueryRange& r, std::uint64_t seed, Plan plan) {
  QueryResult out;
  std::vector<std::uint64_t> ids = plan == Plan::scan_basic
                                       ? w.candidate_objects_scan(r.mbr, &out.access)
                                       : w.index_o().range_search(r.mbr, &out.access);
  std::sort(ids.begin(), ids.end());
  out.counters.candidate_objects = ids.size();
  for (std::uint64_t id : ids) {
    const MovingObject& o = w.object(id);
    per_object(id, [&] {
      const auto cands = plan == Plan::scan_basic ? w.candidate_areas_scan(o, &out.access)
                                                  : w.candidate_areas(o, &out.access);
      out.counters.candidate_areas += cands.size();
      const SimplePolygon e = approximate_circle(o.location, o.tau, w.options().xi);
      if (plan == Plan::index_optimized) {
        const Region u = compute_uncertainty_optimized(e, cands, o.location, &out.counters.ops);
        const RegionSet s = intersect_with_query(u, r.rect, &out.counters.ops);
        evaluate(w, o, u, s, seed, out);
      } else {
        const Region u = compute_uncertainty_basic(e, cands, o.location, &out.counters.ops);
        OverlayCounters oc;
        const RegionSet s = region_intersect_rect(u, r.rect, &oc);
        out.counters.ops.subtractions += oc.subtractions;
        out.counters.ops.intersections += oc.intersections;
        evaluate(w, o, u, s, seed, out);
      }
    });
  }
  finish(out);
  return out;
}

}  // namespace

QueryResult query_B(const Workspace& w, const QueryRange& r, std::uint64_t seed) {
  return query_common(w, r, seed, Plan::scan_basic);
}

QueryResult query_S(const Workspace& w, const QueryRange& r, std::uint64_t seed) {
  return query_common(w, r, seed, Plan::index_basic);
}

QueryResult query_SO(const Workspace& w, const QueryRange& r, std::uint64_t seed) {
  return query_common(w, r, seed, Plan::index_optimized);
}

QueryResult query_PSO(const Workspace& w, const QueryRange& r, std::uint64_t seed) {
  if (w.precompute_state() != PrecomputeState::complete) {
    throw MissingPrecomputation("PSO needs completed precomputation");
  }
  QueryResult out;
  std::vector<std::uint64_t> ids = w.index_u().range_search(r.mbr, &out.access);
  std::sort(ids.begin(), ids.end());
  out.counters.candidate_objects = ids.size();
  for (std::uint64_t id : ids) {
    const MovingObject& o = w.object(id);
    per_object(id, [&] {
      const Region* u = w.precomputed(id);
      if (!u) throw MissingPrecomputation("no stored region");
      const RegionSet s = intersect_with_query(*u, r.rect, &out.counters.ops);
      evaluate(w, o, *u, s, seed, out);
    });
  }
  finish(out);
  return out;
}

QueryResult run_query(const Workspace& w, Strategy s, const QueryRange& r, std::uint64_t seed) {
  switch (s) {
    case Strategy::B: return query_B(w, r, seed);
    case Strategy::S: return query_S(w, r, seed);
    case Strategy::SO: return query_SO(w, r, seed);
    case Strategy::PSO: return query_PSO(w, r, seed);
  }
  throw std::invalid_argument("unknown strategy");
}

Precomputer::Precomputer(Workspace& w) : w_(w) {
  w_.precomputed_.clear();
  w_.index_u_ = RTree(w_.options_.fanout);
  w_.pso_state_ = PrecomputeState::in_progress;
  order_.reserve(w_.objects_.size());
  for (const MovingObject& o : w_.objects_) order_.push_back(o.id);
  std::sort(order_.begin(), order_.end());
  if (order_.empty()) w_.pso_state_ = PrecomputeState::complete;
}

bool Precomputer::step() {
  if (done()) return false;
  const std::uint64_t id = order_[next_];
  const auto t0 = std::chrono::steady_clock::now();
  per_object(id, [&] {
    const MovingObject& o = w_.object(id);
    w_.store_u(id, w_.compute_u(o, &report_.ops));
  });
  report_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ++report_.objects;
  ++next_;
  if (done()) w_.pso_state_ = PrecomputeState::complete;
  return true;
}

PrecomputeReport precompute_all(Workspace& w) {
  Precomputer pc(w);
  while (pc.step()) {
  }
  return pc.report();
}

void report_location(Workspace& w, std::uint64_t id, Point new_location) {
  auto it = w.object_slot_.find(id);
  if (it == w.object_slot_.end()) throw NotFound("unknown object " + std::to_string(id));
  if (w.violates_constraints(new_location)) {
    throw ConstraintViolation("location lies inside a restricted area");
  }
  MovingObject& o = w.objects_[it->second];
  o.location = new_location;
  w.index_o_.remove(id);
  w.index_o_.insert({o.mbr(), id});
  w.object_boxes_.set(it->second, o.mbr());
  // Objects not yet reached by a running precomputation are only recorded.
  if (w.precomputed_.contains(id)) {
    per_object(id, [&] { w.store_u(id, w.compute_u(o, nullptr)); });
  }
}

}  // namespace csprq
