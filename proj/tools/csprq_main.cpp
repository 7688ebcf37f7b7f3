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

// csprq: dataset generation and loading, single queries, timing runs and
// accuracy studies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "csprq/dataset.hpp"
#include "csprq/engine.hpp"
#include "csprq/error.hpp"
#include "csprq/experiment.hpp"
#include "csprq/kernels.hpp"
#include "csprq/workload_error.hpp"

namespace {

using namespace csprq;

struct DatasetArgs {
  std::string points;
  std::string areas;
};

void add_dataset_args(CLI::App* cmd, DatasetArgs& d, bool required) {
  auto* p = cmd->add_option("--points", d.points, "points file (id x y tau)");
  auto* a = cmd->add_option("--areas", d.areas, "areas file");
  if (required) {
    p->required();
    a->required();
  } else {
    p->needs(a);
    a->needs(p);
  }
}

Workspace make_workspace(const DatasetArgs& d, const WorkspaceOptions& opt) {
  Dataset ds = read_dataset(d.points, d.areas);
  return Workspace(std::move(ds.objects), std::move(ds.areas), opt);
}

PdfKind pdf_from(const std::string& s) { return parse_pdf_kind(s); }

int run(int argc, char** argv) {
  CLI::App app{"Constrained-space probabilistic range queries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "csprq 1.0.0");

  // gen
  SyntheticConfig gen_cfg;
  std::string gen_points = "points.txt", gen_areas = "areas.txt";
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("-N,--objects", gen_cfg.objects, "object count")->capture_default_str();
  gen->add_option("-M,--areas-count", gen_cfg.areas, "restricted area count")->capture_default_str();
  gen->add_option("--zeta", gen_cfg.zeta, "area edge count")->capture_default_str();
  gen->add_flag("--regular", gen_cfg.regular_areas, "regular zeta-gons even for zeta = 4");
  gen->add_option("--tau-min", gen_cfg.tau_min)->capture_default_str();
  gen->add_option("--tau-max", gen_cfg.tau_max)->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed)->capture_default_str();
  gen->add_option("--out-points", gen_points)->capture_default_str();
  gen->add_option("--out-areas", gen_areas)->capture_default_str();

  // load
  std::string load_points, load_rects, load_out_points, load_out_areas;
  std::uint64_t load_seed = 1;
  auto* load = app.add_subcommand("load", "normalize and filter a real point/rectangle dataset");
  load->add_option("--points", load_points, "raw points file")->required();
  load->add_option("--rects", load_rects, "raw rectangles file")->required();
  load->add_option("--seed", load_seed, "seed for tau of points without one")->capture_default_str();
  load->add_option("--out-points", load_out_points);
  load->add_option("--out-areas", load_out_areas);

  // query
  DatasetArgs q_data;
  WorkspaceOptions q_opt;
  std::string q_strategy = "SO", q_pdf = "UD";
  std::vector<double> q_rect;
  std::uint64_t q_seed = 1;
  auto* query = app.add_subcommand("query", "run one query and print the answer");
  add_dataset_args(query, q_data, true);
  query->add_option("--rect", q_rect, "xlo ylo xhi yhi")->expected(4)->required();
  query->add_option("--strategy", q_strategy)->check(CLI::IsMember({"B", "S", "SO", "PSO"}))->capture_default_str();
  query->add_option("--xi", q_opt.xi)->capture_default_str();
  query->add_option("--n-prime", q_opt.n1)->capture_default_str();
  query->add_option("--pdf", q_pdf)->check(CLI::IsMember({"UD", "DG"}))->capture_default_str();
  query->add_option("--seed", q_seed)->capture_default_str();

  // bench
  ExperimentConfig b_cfg;
  DatasetArgs b_data;
  std::vector<std::string> b_strategies;
  std::string b_pdf = "UD", b_out = "reports", b_name = "bench";
  unsigned b_parallel = 0;
  auto* bench = app.add_subcommand("bench", "timing experiment over random query ranges");
  add_dataset_args(bench, b_data, false);
  bench->add_option("--xi", b_cfg.xi)->capture_default_str();
  bench->add_option("-N,--objects", b_cfg.n)->capture_default_str();
  bench->add_option("-M,--areas-count", b_cfg.m)->capture_default_str();
  bench->add_option("--theta", b_cfg.theta)->capture_default_str();
  bench->add_option("--zeta", b_cfg.zeta)->capture_default_str();
  bench->add_flag("--regular", b_cfg.regular_areas);
  bench->add_option("--n-prime", b_cfg.n_prime)->capture_default_str();
  bench->add_option("--pdf", b_pdf)->check(CLI::IsMember({"UD", "DG"}))->capture_default_str();
  bench->add_option("--tau-min", b_cfg.tau_min)->capture_default_str();
  bench->add_option("--tau-max", b_cfg.tau_max)->capture_default_str();
  bench->add_option("--strategy", b_strategies, "subset of B S SO PSO (default all)")
      ->check(CLI::IsMember({"B", "S", "SO", "PSO"}));
  bench->add_option("--queries", b_cfg.queries)->capture_default_str();
  bench->add_option("--repetitions", b_cfg.repetitions)->capture_default_str();
  bench->add_option("--seed", b_cfg.seed)->required();
  bench->add_option("--out", b_out, "report directory")->capture_default_str();
  bench->add_option("--name", b_name, "report file stem")->capture_default_str();
  bench->add_option("--parallel", b_parallel, "correctness-only sweep on this many threads");

  // error
  ErrorStudyConfig e_cfg;
  std::vector<std::uint64_t> e_nprimes;
  std::vector<int> e_xis;
  std::string e_pdf = "UD", e_out;
  auto* err = app.add_subcommand("error", "workload-error study");
  err->add_option("--tau", e_cfg.tau)->capture_default_str();
  err->add_option("--n-prime", e_nprimes, "sample sizes to evaluate");
  err->add_option("--xi", e_xis, "approximation sizes to evaluate");
  err->add_option("--pdf", e_pdf)->check(CLI::IsMember({"UD", "DG"}))->capture_default_str();
  err->add_option("--queries", e_cfg.queries)->capture_default_str();
  err->add_option("--sample-xi", e_cfg.xi, "approximation used by the sample study")->capture_default_str();
  err->add_option("--reference-n", e_cfg.reference_n)->capture_default_str();
  err->add_option("--reference-xi", e_cfg.reference_xi)->capture_default_str();
  err->add_option("--seed", e_cfg.seed)->required();
  err->add_option("--out", e_out, "report file (default stdout)");

  // precompute
  DatasetArgs p_data;
  int p_xi = 32;
  auto* pre = app.add_subcommand("precompute", "build stored uncertainty regions and report the time");
  add_dataset_args(pre, p_data, true);
  pre->add_option("--xi", p_xi)->capture_default_str();

  auto* isa = app.add_option("--isa", "kernel ISA override (scalar, avx2)");

  CLI11_PARSE(app, argc, argv);

  if (*isa) {
    const std::string v = isa->as<std::string>();
    if (v == "scalar") kernels::set_active_isa(kernels::Isa::scalar);
    else if (v == "avx2" && !kernels::set_active_isa(kernels::Isa::avx2)) std::cerr << "avx2 unavailable, using scalar\n";
  }

  if (*gen) {
    const Dataset d = generate_synthetic(gen_cfg);
    write_dataset(d, gen_points, gen_areas);
    std::cout << "objects\t" << d.objects.size() << "\nareas\t" << d.areas.size() << '\n';
    return 0;
  }
  if (*load) {
    LoadReport rep;
    const Dataset d = load_real(load_points, load_rects, load_seed, &rep);
    std::cout << "points_read\t" << rep.points_read << "\npoints_inside_areas\t" << rep.points_inside_areas
              << "\npoints_kept\t" << rep.points_kept << "\nrects_read\t" << rep.rects_read
              << "\nrects_degenerate\t" << rep.rects_degenerate << "\nrects_overlapping\t"
              << rep.rects_overlapping << "\nrects_kept\t" << rep.rects_kept << '\n';
    if (!load_out_points.empty() && !load_out_areas.empty()) write_dataset(d, load_out_points, load_out_areas);
    return 0;
  }
  if (*query) {
    q_opt.pdf = pdf_from(q_pdf) == PdfKind::uniform ? Pdf::uniform() : Pdf::distorted_gaussian();
    Workspace w = make_workspace(q_data, q_opt);
    const Strategy s = parse_strategy(q_strategy);
    if (s == Strategy::PSO) precompute_all(w);
    const QueryRange r = QueryRange::from_mbr({{q_rect[0], q_rect[1]}, {q_rect[2], q_rect[3]}});
    const QueryResult res = run_query(w, s, r, q_seed);
    std::cout << "# id\tprobability\n";
    for (const AnswerEntry& e : res.answer.entries) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.p.value);
      std::cout << e.id << '\t' << buf << '\n';
    }
    std::cerr << "pages_read=" << res.access.pages_read << " candidates=" << res.counters.candidate_objects
              << " subtractions=" << res.counters.ops.subtractions << '\n';
    return 0;
  }
  if (*bench) {
    b_cfg.pdf = pdf_from(b_pdf);
    if (!b_strategies.empty()) {
      b_cfg.strategies.clear();
      for (const auto& s : b_strategies) b_cfg.strategies.push_back(parse_strategy(s));
    }
    validate(b_cfg);
    std::optional<Workspace> w;
    if (!b_data.points.empty()) {
      w.emplace(make_workspace(b_data, workspace_options(b_cfg)));
    } else {
      Dataset d = generate_synthetic(synthetic_config(b_cfg));
      w.emplace(std::move(d.objects), std::move(d.areas), workspace_options(b_cfg));
    }
    if (b_parallel > 0) {
      const ExperimentReport rep = run_parallel_check(b_cfg, *w, b_parallel);
      write_reports(rep, b_out, b_name);
      std::cout << "answers_agree\t" << (rep.answers_agree ? "yes" : "no") << '\n';
      return rep.answers_agree ? 0 : 1;
    }
    const ExperimentReport rep = run_experiment(b_cfg, *w);
    write_reports(rep, b_out, b_name);
    write_summary(std::cout, rep);
    return rep.answers_agree ? 0 : 1;
  }
  if (*err) {
    e_cfg.pdf = pdf_from(e_pdf);
    if (e_nprimes.empty() && e_xis.empty()) {
      std::cerr << "error: give --n-prime and/or --xi values\n";
      return 2;
    }
    std::vector<WorkloadErrorReport> reports;
    if (!e_nprimes.empty()) {
      auto r = sample_error_study(e_cfg, e_nprimes);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    if (!e_xis.empty()) {
      auto r = approximation_error_study(e_cfg, e_xis);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    if (e_out.empty()) {
      write_error_reports(std::cout, reports);
    } else {
      std::ofstream out(e_out);
      if (!out) throw std::runtime_error("cannot write " + e_out);
      write_error_reports(out, reports);
    }
    return 0;
  }
  if (*pre) {
    WorkspaceOptions opt;
    opt.xi = p_xi;
    Workspace w = make_workspace(p_data, opt);
    const PrecomputeReport rep = precompute_all(w);
    std::cout << "objects\t" << rep.objects << "\nseconds\t" << rep.seconds << "\nsubtractions\t"
              << rep.ops.subtractions << "\npostponed\t" << rep.ops.postponed << '\n';
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const csprq::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << '\n';
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
  }
  return 1;
}
