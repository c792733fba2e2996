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

// Experiment drivers behind the `stabheap` CLI and the acceptance suite. Every
// driver is a pure function of its config: trials draw from independent
// random streams keyed by (seed, trial index), and rows come back sorted by
// trial index whatever order they ran in.

#ifndef STABHEAP_EXPERIMENTS_HPP_
#define STABHEAP_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabheap/analyzer.hpp"
#include "stabheap/fault_lab.hpp"
#include "stabheap/step_bounds.hpp"

namespace stabheap {

enum class ReportFormat : std::uint8_t { kCsv, kText };

enum class Strawman : std::uint8_t { kNone, kAlwaysFail, kReset };

struct ExperimentConfig {
  std::uint64_t seed = 42;
  std::size_t capacity = 63;
  std::size_t trials = 1000;
  std::size_t ops = 200;
  double insert_probability = 0.5;
  ReportFormat format = ReportFormat::kText;
  std::string out_path;  // empty: stdout
  Strawman strawman = Strawman::kNone;
  BalanceParams params;
  StepBound bound = kStepBound;
  // Initial states for the convergence experiments. Arbitrary states have
  // small active trees; the mix alternates them with corrupted legitimate
  // states of every size so the fits see the whole range of m.
  bool mixed_states = true;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// JSON object with any of: seed, capacity, trials, ops, op_mix, format
// ("csv"|"text"), out, strawman ("none"|"always-fail"|"reset"), a, b_num,
// b_den, c0, c1, mixed_states. Missing keys keep `base`'s values. Throws
// FormatError.
ExperimentConfig parse_config(std::string_view document,
                              ExperimentConfig base = {});

struct Report {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  bool passed = true;

  std::string render(ReportFormat format) const;
};

// Initial state of trial `trial`: arbitrary, or when `mixed` and the trial is
// odd, a legitimate state of uniform size with 1..8 random field faults.
HeapState trial_state(std::uint64_t seed, std::size_t capacity,
                      std::size_t trial, bool mixed);

// --- Drivers ---------------------------------------------------------------

// From an empty heap, `ops` operations per trial checked against a
// sorted-multiset reference. Fails on any response mismatch.
struct DifferentialResult {
  std::size_t ops = 0;
  std::size_t mismatches = 0;
  std::size_t heap_full = 0;
  std::size_t heap_empty = 0;
  std::uint64_t max_steps = 0;
};
DifferentialResult run_differential(const ExperimentConfig& config,
                                    Report* report = nullptr);

// One operation from each of `trials` arbitrary states: exact bag deltas on
// the active tree and the capacity step bound.
struct ContractResult {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::uint64_t max_steps = 0;
};
ContractResult run_contract(const ExperimentConfig& config,
                        Report* report = nullptr);

// floor((m + 1) / 2) verify(root) calls from arbitrary states, then
// truncation tree == active tree and (i), (iii), (iv).
struct ScanResult {
  std::size_t trials = 0;
  std::size_t passed = 0;
};
ScanResult run_scan(const ExperimentConfig& config,
                        Report* report = nullptr);

// m + 1 operations, then (i), (iii), (iv) at each of the next 1000 states.
struct ClosureResult {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t max_m = 0;
};
ClosureResult run_closure(const ExperimentConfig& config,
                        Report* report = nullptr);

// Operations until the state is legitimate for good, its linear fit in m,
// and gap behaviour once (i), (iii), (iv) hold.
struct LinearFit {
  double intercept = 0;
  double slope = 0;
  // RMS gap between the least-squares quadratic and linear fits, relative to
  // the mean of the fitted quantity.
  double superlinear_residual = 0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceTrial {
  std::size_t m = 0;
  std::optional<std::size_t> ops_to_legitimacy;  // nullopt: not reached
  std::size_t gap_increases = 0;
  std::size_t gap_stalls = 0;  // ops with gap > 0 that did not decrease it
  std::int64_t initial_gap = 0;
};
struct ConvergenceResult {
  std::vector<ConvergenceTrial> trials;
  LinearFit fit;
  double max_ratio = 0;  // max over trials with m > 0 of ops / m
  std::size_t unconverged = 0;
  std::size_t gap_increases = 0;
  std::size_t gap_stalls = 0;
};
ConvergenceResult run_convergence(const ExperimentConfig& config,
                        Report* report = nullptr);

// Node visits per operation against the capacity bound (trial states, mixed
// as configured) and the active-height bound (legitimate states).
struct StepBoundResult {
  std::size_t capacity = 0;
  std::uint64_t max_steps_arbitrary = 0;
  std::uint64_t max_steps_legitimate = 0;
  std::size_t capacity_violations = 0;
  std::size_t height_violations = 0;
  // Largest steps - c1 * levels seen, for fitting c0 at a given c1.
  std::int64_t max_excess_capacity = 0;
  std::int64_t max_excess_height = 0;
  // Worst visits seen per level count, index = levels; both regimes.
  std::vector<std::uint64_t> max_steps_by_levels;
};
StepBoundResult run_step_bounds(const ExperimentConfig& config,
                                Report* report = nullptr);

// Records histories and runs the availability or stabilization checker.
enum class HistoryPredicate : std::uint8_t { kAvailability, kStabilization };
struct HistoryResult {
  std::size_t histories = 0;
  std::size_t clean = 0;
  std::size_t violations = 0;
  std::size_t unconverged = 0;
  // Convergence period per history (stabilization only) and initial m.
  std::vector<std::size_t> periods;
  std::vector<std::size_t> initial_m;
  bool content_always_empty = true;
};
HistoryResult run_history(const ExperimentConfig& config,
                          HistoryPredicate predicate,
                          Report* report = nullptr);

}  // namespace stabheap

#endif  // STABHEAP_EXPERIMENTS_HPP_
