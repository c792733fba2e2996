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

// Implementation-independent checks over recorded operation histories.
//
// A history is a finite sequence of events; point t is the gap before event t
// (point events.size() follows the last one). The heap content C_t is the bag
// of successfully inserted items minus the items returned by deleteMin, on
// top of an initial content. A history is legitimate for capacity K when,
// after every point t:
//
//   (a) deleteMin fails iff C_t is empty, and otherwise returns min(C_t);
//   (b) insert fails iff |C_t| == K, and otherwise acks;
//   (c) the operation takes at most C0 + C1 * max(1, ceil(lg(|C_t| + 1)))
//       node visits.
//
// Availability relaxes this: (b) only demands failure when |C_t| == K, and
// (c) is measured against the capacity instead of |C_t|. Stabilization demands
// the strict form on some suffix. Both existentials are discharged with the
// same witnesses the heap's correctness argument uses: the active tree's bag
// at the start of the checked window.

#ifndef STABHEAP_HISTORY_HPP_
#define STABHEAP_HISTORY_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabheap/analyzer.hpp"
#include "stabheap/heap.hpp"
#include "stabheap/heap_state.hpp"
#include "stabheap/step_bounds.hpp"

namespace stabheap {

enum class OpKind : std::uint8_t { kInsert, kDeleteMin };

struct Invocation {
  OpKind kind = OpKind::kDeleteMin;
  std::int64_t arg = 0;  // insert only

  static Invocation insert(std::int64_t p) { return {OpKind::kInsert, p}; }
  static Invocation delete_min() { return {OpKind::kDeleteMin, 0}; }

  friend bool operator==(const Invocation&, const Invocation&) = default;
};

struct HistoryEvent {
  Invocation invocation;
  Response response;
  std::optional<HeapState> pre_snapshot;

  std::uint64_t steps() const { return response.steps; }
};

using History = std::vector<HistoryEvent>;

// Anything with the heap interface whose state can be snapshotted.
class HeapUnderTest {
 public:
  virtual ~HeapUnderTest() = default;
  virtual Response insert(std::int64_t p) = 0;
  virtual Response delete_min() = 0;
  virtual const HeapState& state() const = 0;
  virtual std::string name() const = 0;
};

class StabilizingHeapUnderTest final : public HeapUnderTest {
 public:
  explicit StabilizingHeapUnderTest(HeapState initial)
      : heap_(std::move(initial)) {}
  Response insert(std::int64_t p) override { return heap_.insert(p); }
  Response delete_min() override { return heap_.delete_min(); }
  const HeapState& state() const override { return heap_.state(); }
  std::string name() const override { return "stabilizing"; }

  StabilizingHeap& heap() { return heap_; }

 private:
  StabilizingHeap heap_;
};

// Fails every operation and never touches its state.
class AlwaysFailHeap final : public HeapUnderTest {
 public:
  explicit AlwaysFailHeap(HeapState initial) : state_(std::move(initial)) {}
  Response insert(std::int64_t) override {
    return {Outcome::kHeapFull, std::nullopt, 1};
  }
  Response delete_min() override {
    return {Outcome::kHeapEmpty, std::nullopt, 1};
  }
  const HeapState& state() const override { return state_; }
  std::string name() const override { return "always-fail"; }

 private:
  HeapState state_;
};

// A conventional array heap that checks each node on its operation path
// (children not below it, height and nextslot matching the children) and
// empties the heap the moment a check fails, then carries on.
class ResettingHeap final : public HeapUnderTest {
 public:
  explicit ResettingHeap(HeapState initial) : state_(std::move(initial)) {}
  Response insert(std::int64_t p) override;
  Response delete_min() override;
  const HeapState& state() const override { return state_; }
  std::string name() const override { return "reset-on-inconsistency"; }

  std::size_t resets() const { return resets_; }

 private:
  bool consistent(NodeId x);
  void reset();
  void refresh_to_root(NodeId x);

  HeapState state_;
  std::uint64_t steps_ = 0;
  std::size_t resets_ = 0;
};

struct Recording {
  History events;  // pre_snapshot set on every event iff snapshots were kept
  HeapState final_state{1};
};

Recording record_history(HeapUnderTest& heap,
                         std::span<const Invocation> script,
                         bool keep_snapshots);

// The state at every point: each event's pre-snapshot, then the final state.
// Throws std::invalid_argument if the recording has no snapshots.
std::vector<HeapState> snapshot_points(const Recording& recording);

// insert_probability of inserts, values from the adversarial pool.
std::vector<Invocation> random_script(std::mt19937_64& rng, std::size_t length,
                                      double insert_probability,
                                      std::size_t capacity);

// Heap content after every point of the history, starting from `initial`.
std::vector<std::vector<std::int64_t>> content_trace(
    const History& history, std::vector<std::int64_t> initial);

struct Violation {
  std::size_t point = 0;
  std::string constraint;  // "a", "a-min", "b", "b-full", "c"
  std::string detail;
};

struct Verdict {
  std::vector<Violation> violations;
  std::size_t window = 0;  // events checked

  bool clean() const { return violations.empty(); }
};

Verdict check_legitimate_history(const History& history,
                                 std::vector<std::int64_t> initial_content,
                                 std::size_t capacity,
                                 const StepBound& bound = kStepBound);

// Uses the initial active tree's bag as the prefix witness.
Verdict check_availability(const History& history,
                           const HeapState& initial_snapshot,
                           const StepBound& bound = kStepBound);
// Same check with an explicit prefix witness (at most K items).
Verdict check_availability(const History& history,
                           std::vector<std::int64_t> prefix,
                           std::size_t capacity,
                           const StepBound& bound = kStepBound);

struct StabilizationVerdict {
  Verdict verdict;
  // Events before the first legitimate point; nullopt when no recorded point
  // is legitimate.
  std::optional<std::size_t> convergence_period;

  bool clean() const { return convergence_period && verdict.clean(); }
};

StabilizationVerdict check_stabilization(const History& history,
                                         std::span<const HeapState> points,
                                         const BalanceParams& params = {},
                                         const StepBound& bound = kStepBound);

// One JSON record per line: {"op": "insert", "arg": 5, "response": "ack",
// "item": null, "steps": 40, "snapshot": {...} | null}.
std::string history_to_jsonl(const History& history);
History history_from_jsonl(std::string_view text);

std::string to_json(const Verdict& verdict);
std::string to_json(const StabilizationVerdict& verdict);

}  // namespace stabheap

#endif  // STABHEAP_HISTORY_HPP_
