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

// AVX2 variants, four doubles per lane group. Compiled with -mavx2 only;
// callers go through the dispatcher, which checks CPU support first.

#include <immintrin.h>

#include "csprq/kernels.hpp"

namespace csprq::kernels::avx2 {

bool available() { return __builtin_cpu_supports("avx2"); }

void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity) {
  const std::size_t n = ring.size();
  const std::size_t count = xs.size();
  const std::size_t body = count & ~std::size_t{3};
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[j];
    const Point b = ring[i];
    if (a.y == b.y) continue;
    const double slope = (b.x - a.x) / (b.y - a.y);
    const __m256d ay = _mm256_set1_pd(a.y);
    const __m256d by = _mm256_set1_pd(b.y);
    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d vslope = _mm256_set1_pd(slope);
    std::size_t k = 0;
    for (; k < body; k += 4) {
      const __m256d px = _mm256_loadu_pd(xs.data() + k);
      const __m256d py = _mm256_loadu_pd(ys.data() + k);
      const __m256d straddle = _mm256_xor_pd(_mm256_cmp_pd(ay, py, _CMP_GT_OQ),
                                             _mm256_cmp_pd(by, py, _CMP_GT_OQ));
      const __m256d xint = _mm256_add_pd(ax, _mm256_mul_pd(_mm256_sub_pd(py, ay), vslope));
      const __m256d hit = _mm256_and_pd(straddle, _mm256_cmp_pd(px, xint, _CMP_LT_OQ));
      const int bits = _mm256_movemask_pd(hit);
      if (bits == 0) continue;
      parity[k] ^= static_cast<std::uint8_t>(bits & 1);
      parity[k + 1] ^= static_cast<std::uint8_t>((bits >> 1) & 1);
      parity[k + 2] ^= static_cast<std::uint8_t>((bits >> 2) & 1);
      parity[k + 3] ^= static_cast<std::uint8_t>((bits >> 3) & 1);
    }
    for (; k < count; ++k) {
      if (ray_crosses({xs[k], ys[k]}, a, b)) parity[k] ^= 1;
    }
  }
}

void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out) {
  const std::size_t n = boxes.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d plx = _mm256_set1_pd(probe.lo.x);
  const __m256d ply = _mm256_set1_pd(probe.lo.y);
  const __m256d phx = _mm256_set1_pd(probe.hi.x);
  const __m256d phy = _mm256_set1_pd(probe.hi.y);
  std::size_t i = 0;
  for (; i < body; i += 4) {
    const __m256d c0 = _mm256_cmp_pd(_mm256_loadu_pd(&boxes.lo_x[i]), phx, _CMP_LE_OQ);
    const __m256d c1 = _mm256_cmp_pd(plx, _mm256_loadu_pd(&boxes.hi_x[i]), _CMP_LE_OQ);
    const __m256d c2 = _mm256_cmp_pd(_mm256_loadu_pd(&boxes.lo_y[i]), phy, _CMP_LE_OQ);
    const __m256d c3 = _mm256_cmp_pd(ply, _mm256_loadu_pd(&boxes.hi_y[i]), _CMP_LE_OQ);
    int bits = _mm256_movemask_pd(
        _mm256_and_pd(_mm256_and_pd(c0, c1), _mm256_and_pd(c2, c3)));
    while (bits != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(bits));
      out.push_back(static_cast<std::uint32_t>(i + static_cast<std::size_t>(lane)));
      bits &= bits - 1;
    }
  }
  for (; i < n; ++i) {
    if (boxes.lo_x[i] <= probe.hi.x && probe.lo.x <= boxes.hi_x[i] &&
        boxes.lo_y[i] <= probe.hi.y && probe.lo.y <= boxes.hi_y[i]) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

}  // namespace csprq::kernels::avx2
