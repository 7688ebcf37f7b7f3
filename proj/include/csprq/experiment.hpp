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

// Timing experiments: random query ranges run against every requested
// strategy with identical seeds, reported as tab-separated tables.

#ifndef CSPRQ_EXPERIMENT_HPP_
#define CSPRQ_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "csprq/dataset.hpp"
#include "csprq/engine.hpp"

namespace csprq {

struct ExperimentConfig {
  int xi = 32;
  std::size_t n = 50000;  // objects
  std::size_t m = 50000;  // restricted areas
  double theta = 500.0;   // query side
  int zeta = 4;
  bool regular_areas = false;
  std::uint64_t n_prime = 700;
  PdfKind pdf = PdfKind::uniform;
  int tau_min = 20;
  int tau_max = 50;
  std::vector<Strategy> strategies = {Strategy::B, Strategy::S, Strategy::SO, Strategy::PSO};
  std::size_t queries = 50;
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument on non-positive fields.
void validate(const ExperimentConfig& c);

SyntheticConfig synthetic_config(const ExperimentConfig& c);
WorkspaceOptions workspace_options(const ExperimentConfig& c);

// Query ranges of side theta with centres uniform over the space, clipped
// to the space bounds.
std::vector<QueryRange> random_queries(std::size_t count, double theta, double space,
                                       std::uint64_t seed);
std::uint64_t query_seed(std::uint64_t seed, std::size_t query_index);

// Order-sensitive digest of an answer (ids and probability bits).
std::uint64_t answer_digest(const QueryAnswer& a);

struct QueryRecord {
  std::size_t query = 0;
  Mbr range;
  std::size_t answers = 0;
  std::uint64_t digest = 0;
  AccessStats access;
  QueryCounters counters;
};

struct StrategyReport {
  Strategy strategy = Strategy::S;
  std::vector<QueryRecord> queries;         // deterministic part
  std::vector<std::vector<double>> millis;  // [repetition][query]
  double mean_ms = 0.0;
  double median_ms = 0.0;  // median over repetitions of the per-repetition mean
  double mean_pages = 0.0;
  double precompute_seconds = 0.0;  // PSO only
};

struct ExperimentReport {
  std::vector<StrategyReport> strategies;
  // True when every strategy produced the same digest for every query.
  bool answers_agree = true;
};

// Runs every strategy in config order on the same workspace and queries.
// PSO precomputes first and reports the preprocessing time separately.
ExperimentReport run_experiment(const ExperimentConfig& c, Workspace& w);
ExperimentReport run_experiment(const ExperimentConfig& c);

// Correctness-only sweep: queries run concurrently on `threads` workers
// and only digests are compared; no timing.
ExperimentReport run_parallel_check(const ExperimentConfig& c, Workspace& w, unsigned threads);

// One table per strategy: `<stem>_<strategy>.tsv` holds the deterministic
// per-query columns, `<stem>_<strategy>_timing.tsv` the wall times.
void write_reports(const ExperimentReport& r, const std::filesystem::path& dir,
                   const std::string& stem);
void write_summary(std::ostream& out, const ExperimentReport& r);

}  // namespace csprq

#endif  // CSPRQ_EXPERIMENT_HPP_
