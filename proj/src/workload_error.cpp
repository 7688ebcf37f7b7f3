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

#include "csprq/workload_error.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "csprq/dataset.hpp"
#include "csprq/error.hpp"

namespace csprq {

WorkloadErrorReport workload_error(std::span<const double> estimates,
                                   std::span<const double> references) {
  if (estimates.size() != references.size()) {
    throw std::invalid_argument("estimate and reference counts differ");
  }
  if (estimates.empty()) throw std::invalid_argument("no queries");
  WorkloadErrorReport r;
  double abs_sum = 0.0, rel_sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = estimates[i] - references[i];
    r.deltas.push_back(d);
    abs_sum += std::abs(d);
    if (references[i] > 0.0) {
      rel_sum += std::abs(d) / references[i];
      ++r.rwe_queries;
    }
  }
  r.awe = abs_sum / static_cast<double>(estimates.size());
  r.rwe = r.rwe_queries ? rel_sum / static_cast<double>(r.rwe_queries) : 0.0;
  return r;
}

std::vector<QueryRange> error_queries(const Region& u, Point center, double tau,
                                      std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double side = tau;
  const double reach = tau + side / 2.0;
  std::vector<QueryRange> out;
  const std::size_t budget = 1000 * count + 1000;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt == budget) throw PlacementFailure("could not place error-study queries");
    const Point c{center.x - reach + 2.0 * reach * unit_double(rng),
                  center.y - reach + 2.0 * reach * unit_double(rng)};
    QueryRange r = QueryRange::centered(c, side);
    if (regionset_area(intersect_with_query(u, r.rect)) > 0.0) out.push_back(std::move(r));
  }
  return out;
}

namespace {

constexpr Point kCenter{kSpaceSize / 2.0, kSpaceSize / 2.0};

Pdf study_pdf(const ErrorStudyConfig& c) {
  return c.pdf == PdfKind::distorted_gaussian ? Pdf::distorted_gaussian(kCenter, c.tau / 5.0)
                                              : Pdf::uniform();
}

std::uint64_t stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b);
}

}  // namespace

std::vector<WorkloadErrorReport> sample_error_study(const ErrorStudyConfig& c,
                                                    std::span<const std::uint64_t> n_primes) {
  if (n_primes.empty()) throw std::invalid_argument("empty sample-size list");
  const Region u(approximate_circle(kCenter, c.tau, c.xi));
  const Pdf pdf = study_pdf(c);
  const auto queries = error_queries(u, kCenter, c.tau, c.queries, c.seed);

  std::vector<RegionSet> parts;
  std::vector<double> reference;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    parts.push_back(intersect_with_query(u, queries[q].rect));
    reference.push_back(
        probability_monte_carlo(u, parts.back(), pdf, c.reference_n, stream(c.seed, q, 0)).value);
  }
  std::vector<WorkloadErrorReport> out;
  for (std::uint64_t n : n_primes) {
    std::vector<double> est;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      est.push_back(probability_monte_carlo(u, parts[q], pdf, n, stream(c.seed, q, n)).value);
    }
    WorkloadErrorReport r = workload_error(est, reference);
    r.setting = "n_prime=" + std::to_string(n);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<WorkloadErrorReport> approximation_error_study(const ErrorStudyConfig& c,
                                                           std::span<const int> xis) {
  if (xis.empty()) throw std::invalid_argument("empty xi list");
  const Pdf pdf = study_pdf(c);
  const Region ref_u(approximate_circle(kCenter, c.tau, c.reference_xi));
  const auto queries = error_queries(ref_u, kCenter, c.tau, c.queries, c.seed);

  auto probability = [&](const Region& u, std::size_t q) {
    const RegionSet s = intersect_with_query(u, queries[q].rect);
    if (pdf.kind() == PdfKind::uniform) return probability_uniform(u, s).value;
    if (s.empty()) return 0.0;
    return probability_monte_carlo(u, s, pdf, c.reference_n, stream(c.seed, q, 0)).value;
  };

  std::vector<double> reference;
  for (std::size_t q = 0; q < queries.size(); ++q) reference.push_back(probability(ref_u, q));

  std::vector<WorkloadErrorReport> out;
  for (int xi : xis) {
    const Region u(approximate_circle(kCenter, c.tau, xi));
    std::vector<double> est;
    for (std::size_t q = 0; q < queries.size(); ++q) est.push_back(probability(u, q));
    WorkloadErrorReport r = workload_error(est, reference);
    r.setting = "xi=" + std::to_string(xi);
    out.push_back(std::move(r));
  }
  return out;
}

void write_error_reports(std::ostream& out, const std::vector<WorkloadErrorReport>& reports) {
  out << "setting\tawe\trwe\tqueries\trwe_queries\n";
  for (const WorkloadErrorReport& r : reports) {
    out << r.setting << '\t' << r.awe << '\t' << r.rwe << '\t' << r.deltas.size() << '\t'
        << r.rwe_queries << '\n';
  }
}

}  // namespace csprq
