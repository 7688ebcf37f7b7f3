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

// Appearance probability of an object inside a query range.
//
// Uniform density: area ratio. Any other density: Monte Carlo with points
// drawn uniformly over the bounding box of u and rejected outside u; the
// ratio of density sums cancels any normalizing constant, so densities are
// evaluated unnormalized.

#ifndef CSPRQ_PROBABILITY_HPP_
#define CSPRQ_PROBABILITY_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

#include "csprq/geometry.hpp"
#include "csprq/region.hpp"

namespace csprq {

struct MovingObject;

enum class PdfKind { uniform, distorted_gaussian, custom };

std::string_view pdf_kind_name(PdfKind k);
// Accepts "UD"/"uniform" and "DG"/"distorted_gaussian". Throws
// std::invalid_argument otherwise.
PdfKind parse_pdf_kind(std::string_view s);

class Pdf {
 public:
  using Evaluator = std::function<double(Point)>;

  static Pdf uniform() { return Pdf(PdfKind::uniform); }
  // sigma <= 0 means "tau / 5 of the object" once bound with for_object().
  static Pdf distorted_gaussian(Point mean = {}, double sigma = 0.0);
  static Pdf custom(Evaluator f);

  PdfKind kind() const { return kind_; }
  Point mean() const { return mean_; }
  double sigma() const { return sigma_; }

  // Binds a Gaussian template to the object: mean = recorded location and,
  // unless fixed, sigma = tau / 5. Other kinds are returned unchanged.
  Pdf for_object(const MovingObject& o) const;

  // Unnormalized density. Uniform evaluates to 1.
  double operator()(Point p) const;

 private:
  explicit Pdf(PdfKind k) : kind_(k) {}

  PdfKind kind_ = PdfKind::uniform;
  Point mean_;
  double sigma_ = 0.0;
  Evaluator eval_;
};

struct Probability {
  double value = 0.0;
  friend bool operator==(const Probability&, const Probability&) = default;
};

// area(s) / area(u) clamped to [0, 1]. Throws ZeroAreaRegion if u has no
// area.
Probability probability_uniform(const Region& u, const RegionSet& s);

struct MonteCarloResult {
  Probability p;
  std::uint64_t accepted = 0;  // samples inside u (N1 after rejection)
  std::uint64_t hits = 0;      // accepted samples inside s (N2)
};

// n1 samples over u's box. Throws SampleStarvation when none lands in u and
// std::invalid_argument for n1 < 1.
MonteCarloResult monte_carlo(const Region& u, const RegionSet& s, const Pdf& pdf,
                             std::uint64_t n1, std::uint64_t seed);
Probability probability_monte_carlo(const Region& u, const RegionSet& s, const Pdf& pdf,
                                    std::uint64_t n1, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-object stream seed; independent of the order objects are processed.
std::uint64_t object_seed(std::uint64_t query_seed, std::uint64_t object_id);

}  // namespace csprq

#endif  // CSPRQ_PROBABILITY_HPP_
