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

#include "csprq/kernels.hpp"

namespace csprq::kernels::scalar {

void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity) {
  const std::size_t n = ring.size();
  const std::size_t count = xs.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[j];
    const Point b = ring[i];
    if (a.y == b.y) continue;  // horizontal edges never straddle
    for (std::size_t k = 0; k < count; ++k) {
      if (ray_crosses({xs[k], ys[k]}, a, b)) parity[k] ^= 1;
    }
  }
}

void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out) {
  const std::size_t n = boxes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (boxes.lo_x[i] <= probe.hi.x && probe.lo.x <= boxes.hi_x[i] &&
        boxes.lo_y[i] <= probe.hi.y && probe.lo.y <= boxes.hi_y[i]) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

}  // namespace csprq::kernels::scalar
