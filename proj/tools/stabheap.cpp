// Copyright 2026 The stabheap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stabheap: experiment harness for the self-stabilizing heap.
//
//   stabheap differential --capacity 1023 --ops 100000 --trials 1
//   stabheap check scan --capacity 15 --trials 10000
//   stabheap history stabilization --strawman reset
//   stabheap snapshot dump --capacity 15 --mode arbitrary > s.json
//   stabheap snapshot load s.json --fault-spec f.json --run 20
//   stabheap pilot
//
// Exit status: 0 when the run found no violations or mismatches, 1 when it
// did, 2 on bad usage or input.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stabheap/analysis_io.hpp"
#include "stabheap/experiments.hpp"
#include "stabheap/fault_lab.hpp"
#include "stabheap/history.hpp"

namespace {

using stabheap::ExperimentConfig;
using stabheap::Report;
using stabheap::ReportFormat;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Flags given on the command line override the --config document.
struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> capacity, trials, ops;
  std::optional<double> op_mix;
  std::optional<std::string> format, out, strawman;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config document");
  cmd->add_option("--seed", f.seed, "Root random seed");
  cmd->add_option("--capacity", f.capacity, "Tree capacity K")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--trials", f.trials, "Number of trials");
  cmd->add_option("--ops", f.ops, "Operations per trial or history");
  cmd->add_option("--op-mix", f.op_mix, "Probability that an op is insert")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"csv", "text"}));
  cmd->add_option("--out", f.out, "Report path (default stdout)");
}

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig c;
  if (!f.config_path.empty()) c = stabheap::parse_config(read_file(f.config_path));
  if (f.seed) c.seed = *f.seed;
  if (f.capacity) c.capacity = *f.capacity;
  if (f.trials) c.trials = *f.trials;
  if (f.ops) c.ops = *f.ops;
  if (f.op_mix) c.insert_probability = *f.op_mix;
  if (f.format) c.format = *f.format == "csv" ? ReportFormat::kCsv
                                              : ReportFormat::kText;
  if (f.out) c.out_path = *f.out;
  if (f.strawman) {
    c.strawman = *f.strawman == "always-fail" ? stabheap::Strawman::kAlwaysFail
                 : *f.strawman == "reset"     ? stabheap::Strawman::kReset
                                              : stabheap::Strawman::kNone;
  }
  return c;
}

int finish(const ExperimentConfig& c, const Report& r) {
  emit(r.render(c.format), c.out_path);
  return r.passed ? 0 : 1;
}

// Measures visits per operation across capacities and proposes (C0, C1):
// C1 is the rounded-up least-squares slope of the worst case per level
// count, C0 the largest excess over C1 * levels. Also reports the worst
// operations-to-legitimacy per unit of m.
int run_pilot(const ExperimentConfig& base) {
  const std::size_t caps[] = {15, 255, 4095, 65535};
  Report report;
  report.experiment = "pilot";
  report.columns = {"capacity", "levels", "max_steps"};
  std::vector<std::pair<double, double>> points;
  for (std::size_t k : caps) {
    ExperimentConfig c = base;
    c.capacity = k;
    c.bound = {0, 0};
    const auto r = stabheap::run_step_bounds(c);
    for (std::size_t l = 0; l < r.max_steps_by_levels.size(); ++l) {
      if (r.max_steps_by_levels[l] == 0) continue;
      points.emplace_back(l, r.max_steps_by_levels[l]);
      report.rows.push_back({std::to_string(k), std::to_string(l),
                             std::to_string(r.max_steps_by_levels[l])});
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const auto c1 = static_cast<std::int64_t>(std::ceil(std::max(slope, 1.0)));
  std::int64_t c0 = 0;
  for (const auto& [x, y] : points) {
    c0 = std::max(c0, static_cast<std::int64_t>(y) -
                          c1 * static_cast<std::int64_t>(x));
  }
  double ratio = 0;
  for (std::size_t k : {63, 255, 1023}) {
    ExperimentConfig c = base;
    c.capacity = k;
    ratio = std::max(ratio, stabheap::run_convergence(c).max_ratio);
  }
  report.summary = {{"proposed_c0", std::to_string(c0)},
                    {"proposed_c1", std::to_string(c1)},
                    {"frozen_c0", std::to_string(stabheap::kStepBound.c0)},
                    {"frozen_c1", std::to_string(stabheap::kStepBound.c1)},
                    {"max_ops_per_m", std::to_string(ratio)},
                    {"frozen_convergence_factor",
                     std::to_string(stabheap::kConvergenceFactor)}};
  return finish(base, report);
}

int run_snapshot_dump(const ExperimentConfig& c, const std::string& mode,
                      std::size_t items, std::size_t faults) {
  stabheap::GenMode gm = stabheap::ArbitraryMode{};
  if (mode == "legitimate") gm = stabheap::LegitimateMode{items};
  if (mode == "corrupt") gm = stabheap::CorruptLegitimateMode{items, faults};
  const auto state = stabheap::generate({c.seed, c.capacity, gm});
  emit(stabheap::snapshot(state) + "\n", c.out_path);
  return 0;
}

// Prints the analysis of a snapshot, optionally after injecting faults and
// running operations on it. Exits 1 if the final state is not legitimate.
int run_snapshot_load(const ExperimentConfig& c, const std::string& path,
                      const std::string& faults_path, std::size_t ops) {
  auto state = stabheap::restore(read_file(path));
  if (!faults_path.empty()) {
    stabheap::inject(state, stabheap::parse_fault_spec(read_file(faults_path)));
  }
  stabheap::StabilizingHeap heap(std::move(state));
  auto rng = stabheap::make_rng(c.seed, 0);
  const auto script = stabheap::random_script(rng, ops, c.insert_probability,
                                              heap.capacity());
  for (const auto& inv : script) {
    if (inv.kind == stabheap::OpKind::kInsert) {
      heap.insert(inv.arg);
    } else {
      heap.delete_min();
    }
  }
  const auto report = stabheap::check_legitimacy(heap.state(), c.params);
  emit(stabheap::to_json(report) + "\n", c.out_path);
  return report.legitimate ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-stabilizing heap experiment harness"};
  app.require_subcommand(1);
  Flags flags;

  auto* differential = app.add_subcommand("differential",
                                          "Compare against a multiset oracle");
  add_flags(differential, flags);

  std::string which;
  auto* check = app.add_subcommand("check", "Run a convergence experiment");
  check->add_option("experiment", which,
                    "contract, scan, closure or convergence")
      ->required()
      ->check(CLI::IsMember({"contract", "scan", "closure", "convergence"}));
  add_flags(check, flags);

  std::string predicate;
  auto* history = app.add_subcommand("history", "Check recorded histories");
  history->add_option("predicate", predicate, "availability or stabilization")
      ->required()
      ->check(CLI::IsMember({"availability", "stabilization"}));
  add_flags(history, flags);
  history
      ->add_option("--strawman", flags.strawman, "Implementation under test")
      ->check(CLI::IsMember({"none", "always-fail", "reset"}));

  auto* steps = app.add_subcommand("step-bounds",
                                   "Check visits per operation");
  add_flags(steps, flags);

  auto* pilot = app.add_subcommand("pilot", "Propose step constants");
  add_flags(pilot, flags);

  std::string action, path, faults_path, mode = "arbitrary";
  std::size_t items = 0, faults = 1, load_ops = 0;
  auto* snap = app.add_subcommand("snapshot", "Dump or load a heap state");
  snap->add_option("action", action, "dump or load")
      ->required()
      ->check(CLI::IsMember({"dump", "load"}));
  snap->add_option("path", path, "Snapshot to load");
  snap->add_option("--mode", mode, "Generated state kind")
      ->check(CLI::IsMember({"arbitrary", "legitimate", "corrupt"}));
  snap->add_option("--items", items, "Items in a legitimate state");
  snap->add_option("--faults", faults, "Faults in a corrupt state");
  snap->add_option("--fault-spec", faults_path, "Fault edits to inject");
  snap->add_option("--run", load_ops, "Operations to run before analysis");
  add_flags(snap, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // --help exits 0
  }

  try {
    ExperimentConfig c = resolve(flags);
    if (differential->parsed()) {
      Report r;
      stabheap::run_differential(c, &r);
      return finish(c, r);
    }
    if (check->parsed()) {
      Report r;
      if (which == "contract") {
        stabheap::run_contract(c, &r);
      } else if (which == "scan") {
        stabheap::run_scan(c, &r);
      } else if (which == "closure") {
        stabheap::run_closure(c, &r);
      } else {
        stabheap::run_convergence(c, &r);
      }
      return finish(c, r);
    }
    if (history->parsed()) {
      Report r;
      stabheap::run_history(c,
                            predicate == "availability"
                                ? stabheap::HistoryPredicate::kAvailability
                                : stabheap::HistoryPredicate::kStabilization,
                            &r);
      return finish(c, r);
    }
    if (steps->parsed()) {
      Report r;
      stabheap::run_step_bounds(c, &r);
      return finish(c, r);
    }
    if (pilot->parsed()) return run_pilot(c);
    if (action == "dump") return run_snapshot_dump(c, mode, items, faults);
    if (path.empty()) throw std::runtime_error("snapshot load needs a path");
    return run_snapshot_load(c, path, faults_path, load_ops);
  } catch (const std::exception& e) {
    std::cerr << "stabheap: " << e.what() << '\n';
    return 2;
  }
}
