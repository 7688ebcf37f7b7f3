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

// Datasets: text formats, the synthetic generator and real-data loading.
//
// Points file, one record per line:   id x y tau
// Areas file, one record per line:    id x1 y1 x2 y2 ... xk yk
//                                  or id RECT xlo ylo xhi yhi
// Blank lines and lines starting with '#' are ignored.

#ifndef CSPRQ_DATASET_HPP_
#define CSPRQ_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "csprq/uncertainty.hpp"

namespace csprq {

inline constexpr double kSpaceSize = 10000.0;

struct Dataset {
  std::vector<MovingObject> objects;
  std::vector<RestrictedArea> areas;
};

// Throws ParseError with the 1-based line number.
std::vector<MovingObject> read_points(std::istream& in);
std::vector<RestrictedArea> read_areas(std::istream& in);
void write_points(std::ostream& out, const std::vector<MovingObject>& objects);
void write_areas(std::ostream& out, const std::vector<RestrictedArea>& areas);

// Throws std::runtime_error when a file cannot be opened.
Dataset read_dataset(const std::filesystem::path& points, const std::filesystem::path& areas);
void write_dataset(const Dataset& d, const std::filesystem::path& points,
                   const std::filesystem::path& areas);

struct SyntheticConfig {
  std::size_t objects = 50000;
  std::size_t areas = 50000;
  // 4 without `regular_areas` gives area_w x area_h rectangles; anything
  // else gives regular zeta-gons with the given circumradius.
  int zeta = 4;
  bool regular_areas = false;
  double area_w = 40.0;
  double area_h = 10.0;
  double radius = 20.0;
  double space = kSpaceSize;
  int tau_min = 20;
  int tau_max = 50;
  std::uint64_t seed = 1;
  int max_retries = 1000;
};

// Pairwise disjoint areas (closed boxes never meet) and locations outside
// every area. Throws PlacementFailure when retries run out.
Dataset generate_synthetic(const SyntheticConfig& cfg);

struct LoadReport {
  std::size_t points_read = 0;
  std::size_t points_inside_areas = 0;
  std::size_t points_kept = 0;
  std::size_t rects_read = 0;
  std::size_t rects_degenerate = 0;
  std::size_t rects_overlapping = 0;
  std::size_t rects_kept = 0;
};

// Raw inputs: points as "x y" or "id x y [tau]", rectangles as
// "xlo ylo xhi yhi", "id xlo ylo xhi yhi" or "id RECT xlo ylo xhi yhi".
// Each file is min-max normalized per axis into the space. Rectangles with
// zero width or height are dropped, as is every rectangle meeting an
// earlier kept one; then points strictly inside a kept rectangle are
// dropped. Points without tau get an integer tau in [20, 50] from `seed`.
Dataset load_real(std::istream& points, std::istream& rects, std::uint64_t seed,
                  LoadReport* report = nullptr);
Dataset load_real(const std::filesystem::path& points, const std::filesystem::path& rects,
                  std::uint64_t seed, LoadReport* report = nullptr);

}  // namespace csprq

#endif  // CSPRQ_DATASET_HPP_
