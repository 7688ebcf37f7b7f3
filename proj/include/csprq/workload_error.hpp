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

// Accuracy of estimated probabilities against a high-fidelity reference.
//
// A single object sits at the centre of an empty space. Square query
// ranges of side tau are placed at random offsets so that each one meets
// the uncertainty region with a different overlap. Estimates come from
// either fewer Monte Carlo samples or a coarser circle approximation.

#ifndef CSPRQ_WORKLOAD_ERROR_HPP_
#define CSPRQ_WORKLOAD_ERROR_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "csprq/engine.hpp"

namespace csprq {

struct WorkloadErrorReport {
  std::string setting;  // e.g. "n_prime=700" or "xi=32"
  double awe = 0.0;     // mean |estimate - reference|
  double rwe = 0.0;     // mean |estimate - reference| / reference, reference > 0
  std::size_t rwe_queries = 0;
  std::vector<double> deltas;  // estimate - reference, per query
};

// Throws std::invalid_argument on size mismatch or empty input. Queries
// with a zero reference count towards AWE only.
WorkloadErrorReport workload_error(std::span<const double> estimates,
                                   std::span<const double> references);

struct ErrorStudyConfig {
  double tau = 20.0;
  std::size_t queries = 100;
  PdfKind pdf = PdfKind::uniform;
  int xi = 32;                            // circle approximation for the sample study
  std::uint64_t reference_n = 1000000;    // samples for the reference answer
  int reference_xi = 1024;                // approximation for the xi study reference
  std::uint64_t seed = 1;
};

// Query ranges of side tau whose centres lie within tau + tau/2 of the
// object on each axis, kept only when they meet `u`.
std::vector<QueryRange> error_queries(const Region& u, Point center, double tau,
                                      std::size_t count, std::uint64_t seed);

// Monte Carlo with n samples per estimate, for each n in `n_primes`.
std::vector<WorkloadErrorReport> sample_error_study(const ErrorStudyConfig& c,
                                                    std::span<const std::uint64_t> n_primes);

// Exact probabilities (uniform pdf) or reference-size Monte Carlo (other
// pdfs) on xi-gon regions, for each xi in `xis`, against reference_xi.
std::vector<WorkloadErrorReport> approximation_error_study(const ErrorStudyConfig& c,
                                                           std::span<const int> xis);

void write_error_reports(std::ostream& out, const std::vector<WorkloadErrorReport>& reports);

}  // namespace csprq

#endif  // CSPRQ_WORKLOAD_ERROR_HPP_
