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

#include "csprq/probability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "csprq/error.hpp"
#include "csprq/kernels.hpp"
#include "csprq/uncertainty.hpp"

namespace csprq {

std::string_view pdf_kind_name(PdfKind k) {
  switch (k) {
    case PdfKind::uniform: return "UD";
    case PdfKind::distorted_gaussian: return "DG";
    case PdfKind::custom: return "custom";
  }
  return "?";
}

PdfKind parse_pdf_kind(std::string_view s) {
  if (s == "UD" || s == "uniform") return PdfKind::uniform;
  if (s == "DG" || s == "distorted_gaussian") return PdfKind::distorted_gaussian;
  throw std::invalid_argument("unknown pdf '" + std::string(s) + "'");
}

Pdf Pdf::distorted_gaussian(Point mean, double sigma) {
  Pdf p(PdfKind::distorted_gaussian);
  p.mean_ = mean;
  p.sigma_ = sigma;
  return p;
}

Pdf Pdf::custom(Evaluator f) {
  if (!f) throw std::invalid_argument("custom pdf needs an evaluator");
  Pdf p(PdfKind::custom);
  p.eval_ = std::move(f);
  return p;
}

Pdf Pdf::for_object(const MovingObject& o) const {
  if (kind_ != PdfKind::distorted_gaussian) return *this;
  return distorted_gaussian(o.location, sigma_ > 0.0 ? sigma_ : o.tau / 5.0);
}

double Pdf::operator()(Point p) const {
  switch (kind_) {
    case PdfKind::uniform: return 1.0;
    case PdfKind::distorted_gaussian: {
      if (!(sigma_ > 0.0)) throw std::invalid_argument("gaussian pdf needs sigma > 0");
      const double dx = p.x - mean_.x;
      const double dy = p.y - mean_.y;
      return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_ * sigma_));
    }
    case PdfKind::custom: {
      const double v = eval_(p);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("custom pdf returned a negative or non-finite value");
      }
      return v;
    }
  }
  return 0.0;
}

Probability probability_uniform(const Region& u, const RegionSet& s) {
  const double au = region_area(u);
  if (!(au > 0.0)) throw ZeroAreaRegion("uncertainty region has zero area");
  return {std::clamp(regionset_area(s) / au, 0.0, 1.0)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t object_seed(std::uint64_t query_seed, std::uint64_t object_id) {
  return splitmix64(query_seed ^ splitmix64(object_id));
}

namespace {

// Even-odd membership of a region with holes, batched over the kernels.
void region_parity(const Region& r, std::span<const double> xs, std::span<const double> ys,
                   std::span<std::uint8_t> parity) {
  std::fill(parity.begin(), parity.end(), std::uint8_t{0});
  kernels::toggle_ring_parity(xs, ys, r.outer().vertices(), parity);
  for (const SimplePolygon& h : r.holes()) kernels::toggle_ring_parity(xs, ys, h.vertices(), parity);
}

}  // namespace

MonteCarloResult monte_carlo(const Region& u, const RegionSet& s, const Pdf& pdf,
                             std::uint64_t n1, std::uint64_t seed) {
  if (n1 < 1) throw std::invalid_argument("n1 must be at least 1");
  std::mt19937_64 rng(seed);
  const Mbr box = u.mbr();
  const double w = box.width();
  const double h = box.height();

  std::vector<double> xs(n1), ys(n1);
  for (std::uint64_t i = 0; i < n1; ++i) {
    xs[i] = box.lo.x + w * unit_double(rng);
    ys[i] = box.lo.y + h * unit_double(rng);
  }

  std::vector<std::uint8_t> in_u(n1);
  region_parity(u, xs, ys, in_u);
  std::size_t k = 0;
  for (std::uint64_t i = 0; i < n1; ++i) {
    if (in_u[i]) {
      xs[k] = xs[i];
      ys[k] = ys[i];
      ++k;
    }
  }
  if (k == 0) throw SampleStarvation("no sample landed in the uncertainty region");
  xs.resize(k);
  ys.resize(k);

  std::vector<std::uint8_t> in_s(k, 0), tmp(k);
  for (const Region& piece : s) {
    if (!mbr_intersects(piece.mbr(), box)) continue;
    region_parity(piece, xs, ys, tmp);
    for (std::size_t i = 0; i < k; ++i) in_s[i] |= tmp[i];
  }

  MonteCarloResult out;
  out.accepted = k;
  if (pdf.kind() == PdfKind::uniform) {
    for (std::size_t i = 0; i < k; ++i) out.hits += in_s[i];
    out.p.value = static_cast<double>(out.hits) / static_cast<double>(k);
    return out;
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double f = pdf({xs[i], ys[i]});
    den += f;
    if (in_s[i]) {
      num += f;
      ++out.hits;
    }
  }
  out.p.value = den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
  return out;
}

Probability probability_monte_carlo(const Region& u, const RegionSet& s, const Pdf& pdf,
                                    std::uint64_t n1, std::uint64_t seed) {
  return monte_carlo(u, s, pdf, n1, seed).p;
}

}  // namespace csprq
