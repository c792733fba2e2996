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

#include "stabheap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <thread>

#include "stabheap/heap.hpp"
#include "stabheap/history.hpp"

namespace stabheap {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of an independent stream for (seed, trial, purpose).
std::uint64_t stream_seed(std::uint64_t seed, std::size_t trial,
                          std::uint64_t purpose) {
  return splitmix(splitmix(seed ^ purpose) + trial);
}

constexpr std::uint64_t kStateStream = 1;
constexpr std::uint64_t kScriptStream = 2;

// Runs fn(i) for i in [0, n), spread over the available cores. Callers write
// results into slot i, so output order never depends on scheduling.
void for_each_trial(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::size_t active_size(const HeapState& state) {
  const auto s = active_tree(state);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

std::int64_t random_item(std::mt19937_64& rng, std::size_t capacity) {
  for (;;) {
    if (auto v = random_val(rng, capacity); v.has_item()) return v.item();
  }
}

Response apply(StabilizingHeap& heap, const Invocation& inv) {
  return inv.kind == OpKind::kInsert ? heap.insert(inv.arg)
                                     : heap.delete_min();
}

const char* op_name(const Invocation& inv) {
  return inv.kind == OpKind::kInsert ? "insert" : "deleteMin";
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kAck: return "ack";
    case Outcome::kHeapFull: return "heap-full";
    case Outcome::kItem: return "item";
    case Outcome::kHeapEmpty: return "heap-empty";
  }
  return "?";
}

template <typename T>
std::string str(const T& v) {
  return std::to_string(v);
}

std::string str(bool v) { return v ? "1" : "0"; }

std::string str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

HeapState trial_state(std::uint64_t seed, std::size_t capacity,
                      std::size_t trial, bool mixed) {
  const std::uint64_t s = stream_seed(seed, trial, kStateStream);
  if (!mixed || trial % 2 == 0) {
    return generate({s, capacity, ArbitraryMode{}});
  }
  auto rng = make_rng(s, 0);
  const auto items = std::uniform_int_distribution<std::size_t>(
      0, capacity)(rng);
  const auto faults = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  return generate({s, capacity, CorruptLegitimateMode{items, faults}});
}

// --- Differential ----------------------------------------------------------

DifferentialResult run_differential(const ExperimentConfig& config,
                                    Report* report) {
  std::vector<DifferentialResult> per(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const auto script = random_script(rng, config.ops,
                                      config.insert_probability,
                                      config.capacity);
    StabilizingHeap heap(config.capacity);
    std::multiset<std::int64_t> reference;
    auto& r = per[trial];
    for (const auto& inv : script) {
      const Response got = apply(heap, inv);
      Response want;
      if (inv.kind == OpKind::kInsert) {
        want.kind = reference.size() < config.capacity ? Outcome::kAck
                                                       : Outcome::kHeapFull;
        if (want.kind == Outcome::kAck) reference.insert(inv.arg);
      } else if (reference.empty()) {
        want.kind = Outcome::kHeapEmpty;
      } else {
        want.kind = Outcome::kItem;
        want.item = *reference.begin();
        reference.erase(reference.begin());
      }
      ++r.ops;
      if (got.kind != want.kind || got.item != want.item) ++r.mismatches;
      if (got.kind == Outcome::kHeapFull) ++r.heap_full;
      if (got.kind == Outcome::kHeapEmpty) ++r.heap_empty;
      r.max_steps = std::max(r.max_steps, got.steps);
    }
  });
  DifferentialResult total;
  if (report) {
    report->experiment = "differential";
    report->columns = {"trial", "ops", "mismatches", "heap_full",
                       "heap_empty", "max_steps"};
  }
  for (std::size_t i = 0; i < per.size(); ++i) {
    const auto& r = per[i];
    total.ops += r.ops;
    total.mismatches += r.mismatches;
    total.heap_full += r.heap_full;
    total.heap_empty += r.heap_empty;
    total.max_steps = std::max(total.max_steps, r.max_steps);
    if (report) {
      report->rows.push_back({str(i), str(r.ops), str(r.mismatches),
                              str(r.heap_full), str(r.heap_empty),
                              str(r.max_steps)});
    }
  }
  if (report) {
    report->summary = {{"capacity", str(config.capacity)},
                       {"op_mix", str(config.insert_probability)},
                       {"ops", str(total.ops)},
                       {"mismatches", str(total.mismatches)},
                       {"heap_full", str(total.heap_full)},
                       {"heap_empty", str(total.heap_empty)},
                       {"max_steps", str(total.max_steps)}};
    report->passed = total.mismatches == 0;
  }
  return total;
}

// --- Bag contract ----------------------------------------------------------

ContractResult run_contract(const ExperimentConfig& config, Report* report) {
  struct Row {
    std::size_t m = 0;
    Invocation inv;
    Response resp;
    bool ok = false;
  };
  std::vector<Row> rows(config.trials);
  const std::uint64_t budget = config.bound.for_capacity(config.capacity);
  for_each_trial(config.trials, [&](std::size_t trial) {
    StabilizingHeap heap(trial_state(config.seed, config.capacity, trial,
                                     /*mixed=*/false));
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const bool ins =
        std::bernoulli_distribution(config.insert_probability)(rng);
    Row& row = rows[trial];
    row.inv = ins ? Invocation::insert(random_item(rng, config.capacity))
                  : Invocation::delete_min();
    const auto before = active_bag(heap.state());
    row.m = before.size();
    row.resp = apply(heap, row.inv);
    const auto after = active_bag(heap.state());
    bool ok = row.resp.steps <= budget;
    switch (row.resp.kind) {
      case Outcome::kAck: {
        auto want = before;
        want.insert(std::upper_bound(want.begin(), want.end(), row.inv.arg),
                    row.inv.arg);
        ok = ok && ins && after == want;
        break;
      }
      case Outcome::kHeapFull:
        ok = ok && ins && after == before;
        break;
      case Outcome::kHeapEmpty:
        ok = ok && !ins && before.empty() && after.empty();
        break;
      case Outcome::kItem: {
        ok = ok && !ins && !before.empty() && row.resp.item == before.front();
        auto want = before;
        if (!want.empty()) want.erase(want.begin());
        ok = ok && after == want;
        break;
      }
    }
    row.ok = ok;
  });
  ContractResult result;
  result.trials = rows.size();
  if (report) {
    report->experiment = "contract";
    report->columns = {"trial", "m", "op", "response", "steps", "pass"};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    result.passed += r.ok;
    result.max_steps = std::max(result.max_steps, r.resp.steps);
    if (report) {
      report->rows.push_back({str(i), str(r.m), op_name(r.inv),
                              outcome_name(r.resp.kind), str(r.resp.steps),
                              str(r.ok)});
    }
  }
  if (report) {
    report->summary = {{"capacity", str(config.capacity)},
                       {"trials", str(result.trials)},
                       {"passed", str(result.passed)},
                       {"max_steps", str(result.max_steps)},
                       {"step_budget", str(budget)}};
    report->passed = result.passed == result.trials;
  }
  return result;
}

// --- Verify scan -----------------------------------------------------------

ScanResult run_scan(const ExperimentConfig& config, Report* report) {
  struct Row {
    std::size_t m = 0;
    std::size_t calls = 0;
    bool ok = false;
  };
  std::vector<Row> rows(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    StabilizingHeap heap(trial_state(config.seed, config.capacity, trial,
                                     /*mixed=*/false));
    Row& row = rows[trial];
    row.m = active_size(heap.state());
    row.calls = (row.m + 1) / 2;
    for (std::size_t i = 0; i < row.calls; ++i) heap.verify(kRoot);
    const auto r = check_legitimacy(heap.state(), config.params);
    row.ok = r.t_members == r.s_members && r.core_legitimate();
  });
  ScanResult result;
  result.trials = rows.size();
  if (report) {
    report->experiment = "scan";
    report->columns = {"trial", "m", "verify_calls", "pass"};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    result.passed += rows[i].ok;
    if (report) {
      report->rows.push_back(
          {str(i), str(rows[i].m), str(rows[i].calls), str(rows[i].ok)});
    }
  }
  if (report) {
    report->summary = {{"capacity", str(config.capacity)},
                       {"trials", str(result.trials)},
                       {"passed", str(result.passed)}};
    report->passed = result.passed == result.trials;
  }
  return result;
}

// --- Closure ---------------------------------------------------------------

namespace {
constexpr std::size_t kFollowUpStates = 1000;
}  // namespace

ClosureResult run_closure(const ExperimentConfig& config, Report* report) {
  struct Row {
    std::size_t m = 0;
    std::optional<std::size_t> first_failure;  // ops after the m + 1 prefix
  };
  std::vector<Row> rows(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    StabilizingHeap heap(trial_state(config.seed, config.capacity, trial,
                                     config.mixed_states));
    Row& row = rows[trial];
    row.m = active_size(heap.state());
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const auto script =
        random_script(rng, row.m + 1 + kFollowUpStates,
                      config.insert_probability, config.capacity);
    for (std::size_t i = 0; i < script.size(); ++i) {
      if (i > row.m) {
        const auto r = check_legitimacy(heap.state(), config.params);
        if (!r.core_legitimate()) {
          row.first_failure = i - row.m - 1;
          return;
        }
      }
      apply(heap, script[i]);
    }
    if (!check_legitimacy(heap.state(), config.params).core_legitimate()) {
      row.first_failure = kFollowUpStates;
    }
  });
  ClosureResult result;
  result.trials = rows.size();
  if (report) {
    report->experiment = "closure";
    report->columns = {"trial", "m", "first_failure", "pass"};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    result.passed += !r.first_failure;
    result.max_m = std::max(result.max_m, r.m);
    if (report) {
      report->rows.push_back(
          {str(i), str(r.m),
           r.first_failure ? str(*r.first_failure) : std::string("-"),
           str(!r.first_failure)});
    }
  }
  if (report) {
    report->summary = {{"capacity", str(config.capacity)},
                       {"trials", str(result.trials)},
                       {"passed", str(result.passed)},
                       {"max_m", str(result.max_m)},
                       {"follow_up_states", str(kFollowUpStates + 1)}};
    report->passed = result.passed == result.trials;
  }
  return result;
}

// --- Convergence -----------------------------------------------------------

LinearFit fit_linear(const std::vector<double>& x,
                     const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = x.size();
  if (n == 0) return fit;
  // Normal equations for the quadratic; the linear fit is its 2x2 corner.
  double s[5] = {0, 0, 0, 0, 0};
  double t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * y[i];
      p *= x[i];
    }
  }
  const double mean_y = t[0] / s[0];
  const double det2 = s[0] * s[2] - s[1] * s[1];
  if (std::abs(det2) < 1e-12) {
    fit.intercept = mean_y;
    return fit;
  }
  fit.slope = (s[0] * t[1] - s[1] * t[0]) / det2;
  fit.intercept = (t[0] - fit.slope * s[1]) / s[0];

  // Solve [s0 s1 s2; s1 s2 s3; s2 s3 s4] q = t by Cramer's rule.
  auto det3 = [](double a, double b, double c, double d, double e, double f,
                 double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  const double d = det3(s[0], s[1], s[2], s[1], s[2], s[3], s[2], s[3], s[4]);
  if (std::abs(d) < 1e-9 * std::max(1.0, s[4] * s[2] * s[0]) ||
      mean_y == 0) {
    return fit;
  }
  const double q0 =
      det3(t[0], s[1], s[2], t[1], s[2], s[3], t[2], s[3], s[4]) / d;
  const double q1 =
      det3(s[0], t[0], s[2], s[1], t[1], s[3], s[2], t[2], s[4]) / d;
  const double q2 =
      det3(s[0], s[1], t[0], s[1], s[2], t[1], s[2], s[3], t[2]) / d;
  double sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double quad = q0 + q1 * x[i] + q2 * x[i] * x[i];
    const double lin = fit.intercept + fit.slope * x[i];
    sq += (quad - lin) * (quad - lin);
  }
  fit.superlinear_residual = std::sqrt(sq / n) / std::abs(mean_y);
  return fit;
}

namespace {
// Consecutive legitimate states that count as "legitimate for good".
constexpr std::size_t kSettleStates = 200;
}  // namespace

ConvergenceResult run_convergence(const ExperimentConfig& config, Report* report) {
  std::vector<ConvergenceTrial> trials(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    StabilizingHeap heap(trial_state(config.seed, config.capacity, trial,
                                     config.mixed_states));
    ConvergenceTrial& row = trials[trial];
    auto report_now = check_legitimacy(heap.state(), config.params);
    row.m = report_now.m;
    row.initial_gap = report_now.gap;
    const std::size_t budget = 8 * std::max<std::size_t>(row.m, 1) +
                               kSettleStates;
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const auto script = random_script(rng, budget, config.insert_probability,
                                      config.capacity);
    // streak_start: first state of the current run of legitimate states.
    std::optional<std::size_t> streak_start;
    if (report_now.legitimate) streak_start = 0;
    for (std::size_t i = 0; i < script.size(); ++i) {
      if (streak_start && i - *streak_start >= kSettleStates) break;
      const bool core = report_now.core_legitimate();
      const std::int64_t gap_before = report_now.gap;
      apply(heap, script[i]);
      report_now = check_legitimacy(heap.state(), config.params);
      if (core) {
        if (report_now.gap > gap_before) ++row.gap_increases;
        if (gap_before > 0 && report_now.gap > gap_before - 1) {
          ++row.gap_stalls;
        }
      }
      if (!report_now.legitimate) {
        streak_start.reset();
      } else if (!streak_start) {
        streak_start = i + 1;
      }
    }
    row.ops_to_legitimacy = streak_start;
  });

  ConvergenceResult result;
  result.trials = trials;
  std::vector<double> xs, ys;
  for (const auto& t : trials) {
    result.gap_increases += t.gap_increases;
    result.gap_stalls += t.gap_stalls;
    if (!t.ops_to_legitimacy) {
      ++result.unconverged;
      continue;
    }
    xs.push_back(static_cast<double>(t.m));
    ys.push_back(static_cast<double>(*t.ops_to_legitimacy));
    if (t.m > 0) {
      result.max_ratio = std::max(
          result.max_ratio,
          static_cast<double>(*t.ops_to_legitimacy) / static_cast<double>(t.m));
    }
  }
  result.fit = fit_linear(xs, ys);
  if (report) {
    report->experiment = "convergence";
    report->columns = {"trial", "m", "initial_gap", "ops_to_legitimacy",
                       "gap_increases", "gap_stalls"};
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto& t = trials[i];
      report->rows.push_back(
          {str(i), str(t.m), str(t.initial_gap),
           t.ops_to_legitimacy ? str(*t.ops_to_legitimacy) : std::string("-"),
           str(t.gap_increases), str(t.gap_stalls)});
    }
    report->summary = {
        {"capacity", str(config.capacity)},
        {"op_mix", str(config.insert_probability)},
        {"trials", str(trials.size())},
        {"unconverged", str(result.unconverged)},
        {"fit_intercept", str(result.fit.intercept)},
        {"fit_slope", str(result.fit.slope)},
        {"superlinear_residual", str(result.fit.superlinear_residual)},
        {"max_ops_per_m", str(result.max_ratio)},
        {"gap_increases", str(result.gap_increases)},
        {"gap_stalls", str(result.gap_stalls)}};
    report->passed = result.unconverged == 0 && result.gap_increases == 0 &&
                     result.gap_stalls == 0;
  }
  return result;
}

// --- Step bounds -----------------------------------------------------------

StepBoundResult run_step_bounds(const ExperimentConfig& config,
                                Report* report) {
  struct Row {
    std::uint64_t max_arbitrary = 0;
    std::uint64_t max_legit = 0;
    std::size_t cap_viol = 0;
    std::size_t height_viol = 0;
    std::int64_t excess_cap = INT64_MIN;
    std::int64_t excess_height = INT64_MIN;
    std::vector<std::uint64_t> by_levels;
  };
  const std::size_t k = config.capacity;
  const auto c1 = static_cast<std::int64_t>(config.bound.c1);
  const auto levels_k = static_cast<std::int64_t>(std::bit_width(k));
  std::vector<Row> rows(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    Row& row = rows[trial];
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const auto script =
        random_script(rng, config.ops, config.insert_probability, k);

    auto note = [&row](std::size_t levels, std::uint64_t steps) {
      if (row.by_levels.size() <= levels) row.by_levels.resize(levels + 1);
      row.by_levels[levels] = std::max(row.by_levels[levels], steps);
    };
    StabilizingHeap arbitrary(
        trial_state(config.seed, k, trial, config.mixed_states));
    for (const auto& inv : script) {
      const auto steps = apply(arbitrary, inv).steps;
      note(static_cast<std::size_t>(levels_k), steps);
      row.max_arbitrary = std::max(row.max_arbitrary, steps);
      row.excess_cap = std::max(row.excess_cap,
                                static_cast<std::int64_t>(steps) - c1 * levels_k);
      if (steps > config.bound.for_capacity(k)) ++row.cap_viol;
    }

    const auto items = std::uniform_int_distribution<std::size_t>(0, k)(rng);
    StabilizingHeap legit(generate(
        {stream_seed(config.seed, trial, kStateStream), k,
         LegitimateMode{items}}));
    for (const auto& inv : script) {
      const auto pre = check_legitimacy(legit.state(), config.params);
      const auto levels = std::max<std::int64_t>(1, pre.s_height + 1);
      const auto steps = apply(legit, inv).steps;
      note(static_cast<std::size_t>(levels), steps);
      row.max_legit = std::max(row.max_legit, steps);
      row.excess_height = std::max(
          row.excess_height, static_cast<std::int64_t>(steps) - c1 * levels);
      if (!pre.legitimate ||
          steps > config.bound.for_levels(static_cast<std::uint64_t>(levels))) {
        ++row.height_viol;
      }
    }
  });
  StepBoundResult result;
  result.capacity = k;
  result.max_excess_capacity = INT64_MIN;
  result.max_excess_height = INT64_MIN;
  if (report) {
    report->experiment = "step-bounds";
    report->columns = {"trial", "max_steps_arbitrary", "max_steps_legitimate",
                       "capacity_violations", "height_violations"};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    result.max_steps_arbitrary =
        std::max(result.max_steps_arbitrary, r.max_arbitrary);
    result.max_steps_legitimate =
        std::max(result.max_steps_legitimate, r.max_legit);
    result.capacity_violations += r.cap_viol;
    result.height_violations += r.height_viol;
    result.max_excess_capacity =
        std::max(result.max_excess_capacity, r.excess_cap);
    result.max_excess_height =
        std::max(result.max_excess_height, r.excess_height);
    if (result.max_steps_by_levels.size() < r.by_levels.size()) {
      result.max_steps_by_levels.resize(r.by_levels.size());
    }
    for (std::size_t l = 0; l < r.by_levels.size(); ++l) {
      result.max_steps_by_levels[l] =
          std::max(result.max_steps_by_levels[l], r.by_levels[l]);
    }
    if (report) {
      report->rows.push_back({str(i), str(r.max_arbitrary), str(r.max_legit),
                              str(r.cap_viol), str(r.height_viol)});
    }
  }
  if (report) {
    report->summary = {
        {"capacity", str(k)},
        {"c0", str(config.bound.c0)},
        {"c1", str(config.bound.c1)},
        {"capacity_budget", str(config.bound.for_capacity(k))},
        {"max_steps_arbitrary", str(result.max_steps_arbitrary)},
        {"max_steps_legitimate", str(result.max_steps_legitimate)},
        {"max_excess_capacity", str(result.max_excess_capacity)},
        {"max_excess_height", str(result.max_excess_height)},
        {"capacity_violations", str(result.capacity_violations)},
        {"height_violations", str(result.height_violations)}};
    report->passed =
        result.capacity_violations == 0 && result.height_violations == 0;
  }
  return result;
}

// --- Histories -------------------------------------------------------------

HistoryResult run_history(const ExperimentConfig& config,
                          HistoryPredicate predicate, Report* report) {
  struct Row {
    std::size_t m = 0;
    std::size_t length = 0;
    std::size_t violations = 0;
    std::optional<std::size_t> period;
    bool content_empty = true;
  };
  const bool stabilization = predicate == HistoryPredicate::kStabilization;
  std::vector<Row> rows(config.trials);
  for_each_trial(config.trials, [&](std::size_t trial) {
    HeapState initial =
        trial_state(config.seed, config.capacity, trial, config.mixed_states);
    Row& row = rows[trial];
    row.m = active_size(initial);
    std::unique_ptr<HeapUnderTest> heap;
    switch (config.strawman) {
      case Strawman::kNone:
        heap = std::make_unique<StabilizingHeapUnderTest>(initial);
        break;
      case Strawman::kAlwaysFail:
        heap = std::make_unique<AlwaysFailHeap>(initial);
        break;
      case Strawman::kReset:
        heap = std::make_unique<ResettingHeap>(initial);
        break;
    }
    row.length = stabilization ? std::max(config.ops, 4 * row.m + 100)
                               : config.ops;
    auto rng = make_rng(stream_seed(config.seed, trial, kScriptStream), 0);
    const auto script = random_script(rng, row.length,
                                      config.insert_probability,
                                      config.capacity);
    const auto rec = record_history(*heap, script, stabilization);
    // Witness prefix: the initial active tree, or nothing for a heap that
    // never succeeds.
    std::vector<std::int64_t> prefix;
    if (config.strawman != Strawman::kAlwaysFail) prefix = active_bag(initial);
    for (const auto& c : content_trace(rec.events, prefix)) {
      if (!c.empty()) row.content_empty = false;
    }
    if (stabilization) {
      const auto points = snapshot_points(rec);
      const auto v = check_stabilization(rec.events, points, config.params,
                                         config.bound);
      row.violations = v.verdict.violations.size();
      row.period = v.convergence_period;
    } else {
      const auto v = check_availability(rec.events, prefix, config.capacity,
                                        config.bound);
      row.violations = v.violations.size();
    }
  });
  HistoryResult result;
  result.histories = rows.size();
  if (report) {
    report->experiment =
        stabilization ? "history-stabilization" : "history-availability";
    report->columns = {"trial", "m", "length", "violations",
                       "convergence_period"};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    result.violations += r.violations;
    result.clean += r.violations == 0;
    result.initial_m.push_back(r.m);
    result.content_always_empty = result.content_always_empty && r.content_empty;
    if (stabilization) {
      if (r.period) {
        result.periods.push_back(*r.period);
      } else {
        ++result.unconverged;
      }
    }
    if (report) {
      report->rows.push_back(
          {str(i), str(r.m), str(r.length), str(r.violations),
           r.period ? str(*r.period) : std::string("-")});
    }
  }
  if (report) {
    const char* who = config.strawman == Strawman::kNone ? "stabilizing"
                      : config.strawman == Strawman::kAlwaysFail
                          ? "always-fail"
                          : "reset-on-inconsistency";
    report->summary = {{"implementation", who},
                       {"capacity", str(config.capacity)},
                       {"histories", str(result.histories)},
                       {"clean", str(result.clean)},
                       {"violations", str(result.violations)},
                       {"content_always_empty",
                        str(result.content_always_empty)}};
    if (stabilization) {
      auto periods = result.periods;
      std::sort(periods.begin(), periods.end());
      report->summary.push_back({"unconverged", str(result.unconverged)});
      if (!periods.empty()) {
        report->summary.push_back({"period_min", str(periods.front())});
        report->summary.push_back(
            {"period_median", str(periods[periods.size() / 2])});
        report->summary.push_back({"period_max", str(periods.back())});
      }
    }
    report->passed = result.violations == 0;
  }
  return result;
}

}  // namespace stabheap
