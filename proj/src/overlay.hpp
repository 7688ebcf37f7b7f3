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

#ifndef CSPRQ_SRC_OVERLAY_HPP_
#define CSPRQ_SRC_OVERLAY_HPP_

#include "csprq/region.hpp"

namespace csprq::detail {

enum class OverlayOp { difference, intersection };

// Boolean overlay of a region (all of its rings) with one simple polygon.
//
// Edges of both operands are split at every crossing and touch point, each
// sub-edge is classified against the other operand (inside / outside /
// coincident same or opposite direction), the surviving edges are stitched
// into rings taking the most-left turn at every vertex, and counterclockwise
// rings become outers while clockwise rings are attached as holes to the
// smallest outer containing them.
RegionSet overlay(const Region& subject, const SimplePolygon& clip, OverlayOp op);

}  // namespace csprq::detail

#endif  // CSPRQ_SRC_OVERLAY_HPP_
