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

#include "csprq/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

#include "csprq/error.hpp"
#include "csprq/probability.hpp"
#include "csprq/rtree.hpp"

namespace csprq {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

bool skip_line(const std::vector<std::string>& f) { return f.empty() || f.front()[0] == '#'; }

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) {
    throw ParseError(line, "not a number: '" + s + "'");
  }
  return v;
}

std::uint64_t to_id(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError(line, "not an id: '" + s + "'");
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

// Coarse uniform grid over box ids, for disjointness and containment
// checks during generation.
class BoxGrid {
 public:
  BoxGrid(double space, double cell) : cell_(cell), dim_(static_cast<int>(std::ceil(space / cell)) + 1) {}

  void add(std::size_t idx, const Mbr& b) {
    for_cells(b, [&](std::int64_t key) { cells_[key].push_back(idx); });
  }
  template <typename Fn>
  bool any(const Mbr& b, Fn&& pred) const {
    bool hit = false;
    for_cells(b, [&](std::int64_t key) {
      if (hit) return;
      auto it = cells_.find(key);
      if (it == cells_.end()) return;
      for (std::size_t idx : it->second) {
        if (pred(idx)) {
          hit = true;
          return;
        }
      }
    });
    return hit;
  }

 private:
  int clamp_cell(double v) const {
    const int c = static_cast<int>(std::floor(v / cell_));
    return std::clamp(c, 0, dim_ - 1);
  }
  template <typename Fn>
  void for_cells(const Mbr& b, Fn&& fn) const {
    for (int cx = clamp_cell(b.lo.x); cx <= clamp_cell(b.hi.x); ++cx) {
      for (int cy = clamp_cell(b.lo.y); cy <= clamp_cell(b.hi.y); ++cy) {
        fn(static_cast<std::int64_t>(cx) * dim_ + cy);
      }
    }
  }

  double cell_;
  int dim_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

std::vector<MovingObject> read_points(std::istream& in) {
  std::vector<MovingObject> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto f = split_fields(line);
    if (skip_line(f)) continue;
    if (f.size() != 4) throw ParseError(n, "expected 'id x y tau'");
    MovingObject o{to_id(f[0], n), {to_double(f[1], n), to_double(f[2], n)}, to_double(f[3], n)};
    if (!(o.tau > 0.0)) throw ParseError(n, "tau must be positive");
    out.push_back(o);
  }
  return out;
}

std::vector<RestrictedArea> read_areas(std::istream& in) {
  std::vector<RestrictedArea> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto f = split_fields(line);
    if (skip_line(f)) continue;
    const std::uint64_t id = to_id(f[0], n);
    try {
      if (f.size() >= 2 && f[1] == "RECT") {
        if (f.size() != 6) throw ParseError(n, "expected 'id RECT xlo ylo xhi yhi'");
        const Mbr b{{to_double(f[2], n), to_double(f[3], n)}, {to_double(f[4], n), to_double(f[5], n)}};
        if (!(b.width() > 0.0) || !(b.height() > 0.0)) throw ParseError(n, "empty rectangle");
        out.push_back({id, SimplePolygon::rectangle(b)});
        continue;
      }
      if (f.size() < 7 || f.size() % 2 == 0) throw ParseError(n, "expected 'id x1 y1 ... xk yk' with k >= 3");
      std::vector<Point> pts;
      for (std::size_t i = 1; i < f.size(); i += 2) pts.push_back({to_double(f[i], n), to_double(f[i + 1], n)});
      out.push_back({id, SimplePolygon(std::move(pts))});
    } catch (const InvalidGeometry& ex) {
      throw ParseError(n, ex.what());
    }
  }
  return out;
}

void write_points(std::ostream& out, const std::vector<MovingObject>& objects) {
  out << "# id x y tau\n";
  for (const MovingObject& o : objects) {
    out << o.id << ' ' << fmt(o.location.x) << ' ' << fmt(o.location.y) << ' ' << fmt(o.tau) << '\n';
  }
}

void write_areas(std::ostream& out, const std::vector<RestrictedArea>& areas) {
  out << "# id x1 y1 ... xk yk | id RECT xlo ylo xhi yhi\n";
  for (const RestrictedArea& a : areas) {
    out << a.id;
    if (is_axis_rectangle(a.shape)) {
      const Mbr& b = a.shape.mbr();
      out << " RECT " << fmt(b.lo.x) << ' ' << fmt(b.lo.y) << ' ' << fmt(b.hi.x) << ' ' << fmt(b.hi.y);
    } else {
      for (const Point& p : a.shape.vertices()) out << ' ' << fmt(p.x) << ' ' << fmt(p.y);
    }
    out << '\n';
  }
}

Dataset read_dataset(const std::filesystem::path& points, const std::filesystem::path& areas) {
  auto pin = open_in(points);
  auto ain = open_in(areas);
  return {read_points(pin), read_areas(ain)};
}

void write_dataset(const Dataset& d, const std::filesystem::path& points,
                   const std::filesystem::path& areas) {
  auto pout = open_out(points);
  write_points(pout, d.objects);
  auto aout = open_out(areas);
  write_areas(aout, d.areas);
}

Dataset generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.space <= 0.0 || cfg.tau_min <= 0 || cfg.tau_max < cfg.tau_min) {
    throw std::invalid_argument("bad synthetic configuration");
  }
  const bool rects = cfg.zeta == 4 && !cfg.regular_areas;
  if (!rects && cfg.zeta < 3) throw std::invalid_argument("zeta must be at least 3");
  const double half_w = rects ? cfg.area_w / 2.0 : cfg.radius;
  const double half_h = rects ? cfg.area_h / 2.0 : cfg.radius;
  if (2 * half_w >= cfg.space || 2 * half_h >= cfg.space) {
    throw std::invalid_argument("areas do not fit in the space");
  }

  std::mt19937_64 rng(cfg.seed);
  Dataset d;
  d.areas.reserve(cfg.areas);
  BoxGrid grid(cfg.space, std::max(64.0, 2.0 * std::max(half_w, half_h)));

  for (std::size_t i = 0; i < cfg.areas; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_retries && !placed; ++attempt) {
      const Point c{half_w + (cfg.space - 2 * half_w) * unit_double(rng),
                    half_h + (cfg.space - 2 * half_h) * unit_double(rng)};
      SimplePolygon shape = rects ? SimplePolygon::rectangle(Mbr{{c.x - half_w, c.y - half_h},
                                                                 {c.x + half_w, c.y + half_h}})
                                  : regular_polygon(c, cfg.radius, cfg.zeta);
      const Mbr box = shape.mbr();
      if (grid.any(box, [&](std::size_t j) { return mbr_intersects(box, d.areas[j].shape.mbr()); })) {
        continue;
      }
      grid.add(d.areas.size(), box);
      d.areas.push_back({i + 1, std::move(shape)});
      placed = true;
    }
    if (!placed) throw PlacementFailure("could not place area " + std::to_string(i + 1));
  }

  d.objects.reserve(cfg.objects);
  const auto tau_span = static_cast<std::uint64_t>(cfg.tau_max - cfg.tau_min + 1);
  for (std::size_t i = 0; i < cfg.objects; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_retries && !placed; ++attempt) {
      const Point p{cfg.space * unit_double(rng), cfg.space * unit_double(rng)};
      const Mbr probe{p, p};
      if (grid.any(probe, [&](std::size_t j) {
            return d.areas[j].shape.mbr().contains(p) &&
                   point_in_polygon(p, d.areas[j].shape) != Containment::outside;
          })) {
        continue;
      }
      const double tau = static_cast<double>(cfg.tau_min) + static_cast<double>(rng() % tau_span);
      d.objects.push_back({i + 1, p, tau});
      placed = true;
    }
    if (!placed) throw PlacementFailure("could not place object " + std::to_string(i + 1));
  }
  return d;
}

namespace {

struct RawRect {
  std::size_t line;
  Mbr box;
};

// Min-max map of [lo, hi] onto [0, space]; a flat axis maps to the middle.
struct AxisMap {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double operator()(double v, double space) const {
    if (!(hi > lo)) return space / 2.0;
    return (v - lo) / (hi - lo) * space;
  }
};

}  // namespace

Dataset load_real(std::istream& points, std::istream& rects, std::uint64_t seed,
                  LoadReport* report) {
  LoadReport rep;
  std::mt19937_64 rng(seed);

  struct RawPoint {
    std::uint64_t id;
    Point p;
    double tau;
  };
  std::vector<RawPoint> raw_points;
  std::string line;
  std::size_t n = 0;
  while (std::getline(points, line)) {
    ++n;
    const auto f = split_fields(line);
    if (skip_line(f)) continue;
    RawPoint rp{};
    if (f.size() == 2) {
      rp = {raw_points.size() + 1, {to_double(f[0], n), to_double(f[1], n)}, 0.0};
    } else if (f.size() == 3 || f.size() == 4) {
      rp = {to_id(f[0], n), {to_double(f[1], n), to_double(f[2], n)}, f.size() == 4 ? to_double(f[3], n) : 0.0};
    } else {
      throw ParseError(n, "expected 'x y' or 'id x y [tau]'");
    }
    if (rp.tau <= 0.0) rp.tau = static_cast<double>(20 + rng() % 31);
    raw_points.push_back(rp);
  }
  rep.points_read = raw_points.size();

  std::vector<RawRect> raw_rects;
  n = 0;
  while (std::getline(rects, line)) {
    ++n;
    const auto f = split_fields(line);
    if (skip_line(f)) continue;
    std::size_t at;
    if (f.size() == 4) {
      at = 0;
    } else if (f.size() == 5) {
      to_id(f[0], n);
      at = 1;
    } else if (f.size() == 6 && f[1] == "RECT") {
      to_id(f[0], n);
      at = 2;
    } else {
      throw ParseError(n, "expected 'xlo ylo xhi yhi'");
    }
    const double x0 = to_double(f[at], n), y0 = to_double(f[at + 1], n);
    const double x1 = to_double(f[at + 2], n), y1 = to_double(f[at + 3], n);
    raw_rects.push_back({n, {{std::min(x0, x1), std::min(y0, y1)}, {std::max(x0, x1), std::max(y0, y1)}}});
  }
  rep.rects_read = raw_rects.size();

  AxisMap px, py, rx, ry;
  for (const RawPoint& rp : raw_points) {
    px.include(rp.p.x);
    py.include(rp.p.y);
  }
  for (const RawRect& r : raw_rects) {
    rx.include(r.box.lo.x);
    rx.include(r.box.hi.x);
    ry.include(r.box.lo.y);
    ry.include(r.box.hi.y);
  }

  Dataset d;
  RTree kept;
  for (const RawRect& r : raw_rects) {
    if (!(r.box.width() > 0.0) || !(r.box.height() > 0.0)) {
      ++rep.rects_degenerate;
      continue;
    }
    const Mbr box{{rx(r.box.lo.x, kSpaceSize), ry(r.box.lo.y, kSpaceSize)},
                  {rx(r.box.hi.x, kSpaceSize), ry(r.box.hi.y, kSpaceSize)}};
    if (!(box.width() > 0.0) || !(box.height() > 0.0)) {
      ++rep.rects_degenerate;
      continue;
    }
    if (!kept.range_search(box).empty()) {
      ++rep.rects_overlapping;
      continue;
    }
    const std::uint64_t id = d.areas.size() + 1;
    kept.insert({box, id});
    d.areas.push_back({id, SimplePolygon::rectangle(box)});
  }
  rep.rects_kept = d.areas.size();

  for (const RawPoint& rp : raw_points) {
    const Point p{px(rp.p.x, kSpaceSize), py(rp.p.y, kSpaceSize)};
    bool inside = false;
    for (std::uint64_t id : kept.range_search(Mbr{p, p})) {
      const Mbr& b = d.areas[id - 1].shape.mbr();
      if (p.x > b.lo.x && p.x < b.hi.x && p.y > b.lo.y && p.y < b.hi.y) {
        inside = true;
        break;
      }
    }
    if (inside) {
      ++rep.points_inside_areas;
      continue;
    }
    d.objects.push_back({rp.id, p, rp.tau});
  }
  rep.points_kept = d.objects.size();
  if (report) *report = rep;
  return d;
}

Dataset load_real(const std::filesystem::path& points, const std::filesystem::path& rects,
                  std::uint64_t seed, LoadReport* report) {
  auto pin = open_in(points);
  auto rin = open_in(rects);
  return load_real(pin, rin, seed, report);
}

}  // namespace csprq
