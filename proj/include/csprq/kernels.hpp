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

// Data-parallel inner loops with a scalar reference and SIMD variants chosen
// at runtime. Every variant must produce bit-identical output to the scalar
// reference; the test suite checks this on random inputs.

#ifndef CSPRQ_KERNELS_HPP_
#define CSPRQ_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "csprq/geometry.hpp"

namespace csprq::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best ISA supported by both this build and the running CPU. The
// CSPRQ_ISA environment variable ("scalar", "avx2") can lower it.
Isa detected_isa();

// ISA currently used by the dispatching entry points below.
Isa active_isa();

// Overrides dispatch (tests). Requesting an unsupported ISA falls back to
// scalar and returns false.
bool set_active_isa(Isa isa);

// Structure-of-arrays box table for linear scans.
struct MbrColumns {
  std::vector<double> lo_x, lo_y, hi_x, hi_y;

  std::size_t size() const { return lo_x.size(); }
  void push_back(const Mbr& b) {
    lo_x.push_back(b.lo.x);
    lo_y.push_back(b.lo.y);
    hi_x.push_back(b.hi.x);
    hi_y.push_back(b.hi.y);
  }
  void set(std::size_t i, const Mbr& b) {
    lo_x[i] = b.lo.x;
    lo_y[i] = b.lo.y;
    hi_x[i] = b.hi.x;
    hi_y[i] = b.hi.y;
  }
};

// Flips parity[k] for every edge of `ring` crossed by the rightward ray from
// (xs[k], ys[k]). XOR-ing several rings gives even-odd membership of a
// region with holes.
void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity);

// Appends the indices of boxes that intersect `probe` (closed intervals),
// in ascending order.
void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out);

// Direct entry points per ISA, for equivalence tests and benchmarks.
namespace scalar {
void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity);
void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out);
}  // namespace scalar

namespace avx2 {
bool available();
void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity);
void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out);
}  // namespace avx2

}  // namespace csprq::kernels

#endif  // CSPRQ_KERNELS_HPP_
