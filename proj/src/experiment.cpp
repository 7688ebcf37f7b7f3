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

#include "csprq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace csprq {

void validate(const ExperimentConfig& c) {
  if (c.xi < 3) throw std::invalid_argument("xi must be at least 3");
  if (c.theta <= 0.0) throw std::invalid_argument("theta must be positive");
  if (c.zeta < 3) throw std::invalid_argument("zeta must be at least 3");
  if (c.n_prime < 1) throw std::invalid_argument("n_prime must be positive");
  if (c.tau_min <= 0 || c.tau_max < c.tau_min) throw std::invalid_argument("bad tau range");
  if (c.queries < 1 || c.repetitions < 1) throw std::invalid_argument("queries and repetitions must be positive");
  if (c.strategies.empty()) throw std::invalid_argument("no strategy selected");
}

SyntheticConfig synthetic_config(const ExperimentConfig& c) {
  SyntheticConfig s;
  s.objects = c.n;
  s.areas = c.m;
  s.zeta = c.zeta;
  s.regular_areas = c.regular_areas;
  s.tau_min = c.tau_min;
  s.tau_max = c.tau_max;
  s.seed = c.seed;
  return s;
}

WorkspaceOptions workspace_options(const ExperimentConfig& c) {
  WorkspaceOptions o;
  o.xi = c.xi;
  o.n1 = c.n_prime;
  o.pdf = c.pdf == PdfKind::distorted_gaussian ? Pdf::distorted_gaussian() : Pdf::uniform();
  return o;
}

std::vector<QueryRange> random_queries(std::size_t count, double theta, double space,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x71e5ULL));
  std::vector<QueryRange> out;
  out.reserve(count);
  const double half = theta / 2.0;
  for (std::size_t i = 0; i < count; ++i) {
    const Point c{space * unit_double(rng), space * unit_double(rng)};
    const Mbr box{{std::max(0.0, c.x - half), std::max(0.0, c.y - half)},
                  {std::min(space, c.x + half), std::min(space, c.y + half)}};
    out.push_back(QueryRange::from_mbr(box));
  }
  return out;
}

std::uint64_t query_seed(std::uint64_t seed, std::size_t query_index) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (query_index + 1));
}

std::uint64_t answer_digest(const QueryAnswer& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const AnswerEntry& e : a.entries) {
    mix(e.id);
    mix(std::bit_cast<std::uint64_t>(e.p.value));
  }
  return h;
}

namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

QueryRecord record_of(std::size_t q, const QueryRange& r, const QueryResult& res) {
  return {q, r.mbr, res.answer.entries.size(), answer_digest(res.answer), res.access, res.counters};
}

void check_agreement(ExperimentReport& rep) {
  rep.answers_agree = true;
  if (rep.strategies.empty()) return;
  const auto& first = rep.strategies.front().queries;
  for (const StrategyReport& s : rep.strategies) {
    for (std::size_t q = 0; q < first.size(); ++q) {
      if (s.queries[q].digest != first[q].digest) rep.answers_agree = false;
    }
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& c, Workspace& w) {
  validate(c);
  const auto queries = random_queries(c.queries, c.theta, kSpaceSize, c.seed);
  ExperimentReport rep;
  for (Strategy strategy : c.strategies) {
    StrategyReport sr;
    sr.strategy = strategy;
    if (strategy == Strategy::PSO && w.precompute_state() != PrecomputeState::complete) {
      sr.precompute_seconds = precompute_all(w).seconds;
    }
    std::vector<double> rep_means;
    for (std::size_t r = 0; r < c.repetitions; ++r) {
      std::vector<double> ms(queries.size());
      for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto t0 = std::chrono::steady_clock::now();
        QueryResult res = run_query(w, strategy, queries[q], query_seed(c.seed, q));
        ms[q] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (r == 0) sr.queries.push_back(record_of(q, queries[q], res));
      }
      rep_means.push_back(mean(ms));
      sr.millis.push_back(std::move(ms));
    }
    std::vector<double> all;
    for (const auto& ms : sr.millis) all.insert(all.end(), ms.begin(), ms.end());
    sr.mean_ms = mean(all);
    sr.median_ms = median(rep_means);
    double pages = 0.0;
    for (const QueryRecord& qr : sr.queries) pages += static_cast<double>(qr.access.pages_read);
    sr.mean_pages = pages / static_cast<double>(sr.queries.size());
    rep.strategies.push_back(std::move(sr));
  }
  check_agreement(rep);
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
  validate(c);
  Dataset d = generate_synthetic(synthetic_config(c));
  Workspace w(std::move(d.objects), std::move(d.areas), workspace_options(c));
  return run_experiment(c, w);
}

ExperimentReport run_parallel_check(const ExperimentConfig& c, Workspace& w, unsigned threads) {
  validate(c);
  threads = std::max(1u, threads);
  const auto queries = random_queries(c.queries, c.theta, kSpaceSize, c.seed);
  if (std::find(c.strategies.begin(), c.strategies.end(), Strategy::PSO) != c.strategies.end() &&
      w.precompute_state() != PrecomputeState::complete) {
    precompute_all(w);
  }
  ExperimentReport rep;
  for (Strategy strategy : c.strategies) {
    StrategyReport sr;
    sr.strategy = strategy;
    sr.queries.resize(queries.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t q = next++; q < queries.size(); q = next++) {
          try {
            const QueryResult res = run_query(w, strategy, queries[q], query_seed(c.seed, q));
            sr.queries[q] = record_of(q, queries[q], res);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    rep.strategies.push_back(std::move(sr));
  }
  check_agreement(rep);
  return rep;
}

void write_reports(const ExperimentReport& r, const std::filesystem::path& dir,
                   const std::string& stem) {
  std::filesystem::create_directories(dir);
  for (const StrategyReport& s : r.strategies) {
    const std::string name = stem + "_" + std::string(strategy_name(s.strategy));
    std::ofstream out(dir / (name + ".tsv"));
    if (!out) throw std::runtime_error("cannot write report in " + dir.string());
    out << "query\txlo\tylo\txhi\tyhi\tanswers\tdigest\tnodes_visited\tpages_read\t"
           "records_scanned\tcandidate_objects\tcandidate_areas\tmc_samples\tsubtractions\t"
           "intersections\tpruned_by_mbr\tpruned_disjoint\tpostponed\tsplits\tlazy_updates\n";
    char buf[64];
    for (const QueryRecord& q : s.queries) {
      out << q.query;
      for (double v : {q.range.lo.x, q.range.lo.y, q.range.hi.x, q.range.hi.y}) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << '\t' << buf;
      }
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(q.digest));
      const OpStats& o = q.counters.ops;
      out << '\t' << q.answers << '\t' << buf << '\t' << q.access.nodes_visited << '\t'
          << q.access.pages_read << '\t' << q.access.records_scanned << '\t'
          << q.counters.candidate_objects << '\t' << q.counters.candidate_areas << '\t'
          << q.counters.mc_samples << '\t' << o.subtractions << '\t' << o.intersections << '\t'
          << o.pruned_by_mbr << '\t' << o.pruned_disjoint << '\t' << o.postponed << '\t'
          << o.splits << '\t' << o.lazy_updates << '\n';
    }
    if (s.millis.empty()) continue;
    std::ofstream timing(dir / (name + "_timing.tsv"));
    if (!timing) throw std::runtime_error("cannot write report in " + dir.string());
    timing << "repetition\tquery\tmillis\n";
    for (std::size_t rep = 0; rep < s.millis.size(); ++rep) {
      for (std::size_t q = 0; q < s.millis[rep].size(); ++q) {
        timing << rep << '\t' << q << '\t' << s.millis[rep][q] << '\n';
      }
    }
  }
}

void write_summary(std::ostream& out, const ExperimentReport& r) {
  out << "strategy\tmean_ms\tmedian_ms\tmean_pages\tprecompute_s\tanswers\n";
  for (const StrategyReport& s : r.strategies) {
    std::size_t answers = 0;
    for (const QueryRecord& q : s.queries) answers += q.answers;
    out << strategy_name(s.strategy) << '\t' << s.mean_ms << '\t' << s.median_ms << '\t'
        << s.mean_pages << '\t' << s.precompute_seconds << '\t' << answers << '\n';
  }
  out << "answers_agree\t" << (r.answers_agree ? "yes" : "no") << '\n';
}

}  // namespace csprq
