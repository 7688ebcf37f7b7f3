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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "csprq/kernels.hpp"

namespace csprq::kernels {

#ifndef CSPRQ_HAVE_AVX2
namespace avx2 {
bool available() { return false; }
void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity) {
  scalar::toggle_ring_parity(xs, ys, ring, parity);
}
void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out) {
  scalar::mbr_overlap_scan(boxes, probe, out);
}
}  // namespace avx2
#endif

namespace {

Isa detect() {
  Isa best = avx2::available() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("CSPRQ_ISA")) {
    if (std::string_view(env) == "scalar") best = Isa::scalar;
  }
  return best;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

Isa detected_isa() {
  static const Isa isa = detect();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2::available()) {
    active().store(Isa::scalar);
    return false;
  }
  active().store(isa);
  return true;
}

void toggle_ring_parity(std::span<const double> xs, std::span<const double> ys,
                        std::span<const Point> ring, std::span<std::uint8_t> parity) {
  if (active_isa() == Isa::avx2) {
    avx2::toggle_ring_parity(xs, ys, ring, parity);
  } else {
    scalar::toggle_ring_parity(xs, ys, ring, parity);
  }
}

void mbr_overlap_scan(const MbrColumns& boxes, const Mbr& probe,
                      std::vector<std::uint32_t>& out) {
  if (active_isa() == Isa::avx2) {
    avx2::mbr_overlap_scan(boxes, probe, out);
  } else {
    scalar::mbr_overlap_scan(boxes, probe, out);
  }
}

}  // namespace csprq::kernels
