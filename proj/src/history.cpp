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

#include "stabheap/history.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json_io.hpp"
#include "stabheap/fault_lab.hpp"

namespace stabheap {

using json = nlohmann::json;

// --- ResettingHeap ---------------------------------------------------------

bool ResettingHeap::consistent(NodeId x) {
  const auto& rec = state_[x];
  for (Side side : {Side::kLeft, Side::kRight}) {
    if (auto c = child_of(state_, x, side)) {
      ++steps_;
      if (state_[*c].val < rec.val) return false;
    }
  }
  if (rec.height != recomputed_height(state_, x)) return false;
  const std::int64_t k = state_.capacity_i64();
  const std::int64_t slot = recomputed_nextslot(state_, x);
  return slot >= k ? rec.nextslot >= k : rec.nextslot == slot;
}

void ResettingHeap::reset() {
  state_[kRoot].val = Value::absent();
  ++resets_;
}

void ResettingHeap::refresh_to_root(NodeId x) {
  for (std::optional<NodeId> n = x; n; n = parent_of(state_, *n)) {
    ++steps_;
    recompute_fields(state_, *n);
  }
}

Response ResettingHeap::insert(std::int64_t p) {
  steps_ = 0;
  std::optional<NodeId> slot;
  NodeId x = kRoot;
  while (state_[kRoot].val.has_item()) {
    ++steps_;
    if (!consistent(x)) {
      reset();
      break;
    }
    auto l = child_of(state_, x, Side::kLeft);
    auto r = child_of(state_, x, Side::kRight);
    if (!l) return {Outcome::kHeapFull, std::nullopt, steps_};
    if (state_[*l].val.is_absent()) {
      slot = l;
    } else if (r && state_[*r].val.is_absent()) {
      slot = r;
    } else if (!r || state_[*l].nextslot <= state_[*r].nextslot) {
      x = *l;
      continue;
    } else {
      x = *r;
      continue;
    }
    break;
  }
  if (!slot) slot = kRoot;
  auto& rec = state_[*slot];
  rec.val = p;
  for (Side side : {Side::kLeft, Side::kRight}) {
    if (auto c = child_of(state_, *slot, side)) state_[*c].val = Value::absent();
  }
  for (NodeId y = *slot; y != kRoot;) {
    ++steps_;
    const NodeId up = *parent_of(state_, y);
    if (state_[y].val < state_[up].val) std::swap(state_[y].val, state_[up].val);
    y = up;
  }
  refresh_to_root(*slot);
  return {Outcome::kAck, std::nullopt, steps_};
}

Response ResettingHeap::delete_min() {
  steps_ = 0;
  if (state_[kRoot].val.is_absent()) {
    return {Outcome::kHeapEmpty, std::nullopt, ++steps_};
  }
  NodeId x = kRoot;
  for (;;) {
    ++steps_;
    if (!consistent(x)) {
      reset();
      return {Outcome::kHeapEmpty, std::nullopt, steps_};
    }
    auto l = child_of(state_, x, Side::kLeft);
    auto r = child_of(state_, x, Side::kRight);
    const bool has_l = l && state_[*l].val.has_item();
    const bool has_r = r && state_[*r].val.has_item();
    if (!has_l && !has_r) break;
    if (has_l && (!has_r || state_[*l].height >= state_[*r].height)) {
      x = *l;
    } else {
      x = *r;
    }
  }
  const std::int64_t q = state_[kRoot].val.item();
  state_[kRoot].val = state_[x].val;
  state_[x].val = Value::absent();
  refresh_to_root(x);
  for (NodeId y = kRoot;;) {
    ++steps_;
    std::optional<NodeId> best;
    for (Side side : {Side::kLeft, Side::kRight}) {
      auto c = child_of(state_, y, side);
      if (c && state_[*c].val.has_item() &&
          (!best || state_[*c].val < state_[*best].val)) {
        best = c;
      }
    }
    if (!best || !(state_[*best].val < state_[y].val)) break;
    std::swap(state_[y].val, state_[*best].val);
    y = *best;
  }
  return {Outcome::kItem, q, steps_};
}

// --- Recording -------------------------------------------------------------

Recording record_history(HeapUnderTest& heap,
                         std::span<const Invocation> script,
                         bool keep_snapshots) {
  Recording rec;
  rec.events.reserve(script.size());
  for (const auto& inv : script) {
    HistoryEvent ev;
    ev.invocation = inv;
    if (keep_snapshots) ev.pre_snapshot = heap.state();
    ev.response = inv.kind == OpKind::kInsert ? heap.insert(inv.arg)
                                              : heap.delete_min();
    rec.events.push_back(std::move(ev));
  }
  rec.final_state = heap.state();
  return rec;
}

std::vector<HeapState> snapshot_points(const Recording& recording) {
  std::vector<HeapState> points;
  points.reserve(recording.events.size() + 1);
  for (const auto& ev : recording.events) {
    if (!ev.pre_snapshot) {
      throw std::invalid_argument("recording was made without snapshots");
    }
    points.push_back(*ev.pre_snapshot);
  }
  points.push_back(recording.final_state);
  return points;
}

std::vector<Invocation> random_script(std::mt19937_64& rng, std::size_t length,
                                      double insert_probability,
                                      std::size_t capacity) {
  std::bernoulli_distribution coin(insert_probability);
  std::vector<Invocation> script;
  script.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (coin(rng)) {
      Value v;
      do {
        v = random_val(rng, capacity);
      } while (v.is_absent());
      script.push_back(Invocation::insert(v.item()));
    } else {
      script.push_back(Invocation::delete_min());
    }
  }
  return script;
}

// --- Content tracking ------------------------------------------------------

namespace {

// C = I \ D as a bag difference: an item's multiplicity is
// max(0, inserted - deleted), so deleting an item that was never inserted
// leaves a debt that a later insert of the same item cancels.
class Content {
 public:
  explicit Content(const std::vector<std::int64_t>& initial) {
    for (auto v : initial) add(v);
  }

  void add(std::int64_t v) {
    auto& [ins, del] = counts_[v];
    if (ins >= del) ++size_;
    ++ins;
  }
  void remove(std::int64_t v) {
    auto& [ins, del] = counts_[v];
    if (ins > del) --size_;
    ++del;
  }
  std::size_t size() const { return size_; }
  std::optional<std::int64_t> min() const {
    for (const auto& [v, c] : counts_) {
      if (c.first > c.second) return v;
    }
    return std::nullopt;
  }
  std::vector<std::int64_t> items() const {
    std::vector<std::int64_t> out;
    for (const auto& [v, c] : counts_) {
      for (std::int64_t i = c.second; i < c.first; ++i) out.push_back(v);
    }
    return out;
  }

 private:
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> counts_;
  std::size_t size_ = 0;
};

enum class InsertRule { kStrict, kRelaxed };

struct Rules {
  InsertRule insert = InsertRule::kStrict;
  // Step budget given the content size before the operation.
  std::function<std::uint64_t(std::size_t)> budget;
};

Verdict check(const History& history, std::size_t offset,
              const std::vector<std::int64_t>& initial, std::size_t capacity,
              const Rules& rules) {
  Verdict v;
  v.window = history.size() - offset;
  Content c(initial);
  auto flag = [&](std::size_t t, const char* constraint, std::string detail) {
    v.violations.push_back({t, constraint, std::move(detail)});
  };
  for (std::size_t t = offset; t < history.size(); ++t) {
    const auto& ev = history[t];
    const std::size_t n = c.size();
    const Response& r = ev.response;
    if (ev.invocation.kind == OpKind::kInsert) {
      if (r.kind != Outcome::kAck && r.kind != Outcome::kHeapFull) {
        flag(t, "b", "insert answered with a deleteMin response");
      } else if (n == capacity && r.succeeded()) {
        flag(t, "b-full", "insert acked with |C_t| = K");
      } else if (n != capacity && !r.succeeded() &&
                 rules.insert == InsertRule::kStrict) {
        flag(t, "b", "insert failed with |C_t| = " + std::to_string(n));
      }
      if (r.kind == Outcome::kAck) c.add(ev.invocation.arg);
    } else {
      const auto lo = c.min();
      if (r.kind != Outcome::kItem && r.kind != Outcome::kHeapEmpty) {
        flag(t, "a", "deleteMin answered with an insert response");
      } else if (!lo && r.succeeded()) {
        flag(t, "a", "deleteMin returned an item from empty content");
      } else if (lo && !r.succeeded()) {
        flag(t, "a", "deleteMin failed with |C_t| = " + std::to_string(n));
      } else if (lo && r.item != lo) {
        flag(t, "a-min", "deleteMin returned " + std::to_string(*r.item) +
                             ", min(C_t) = " + std::to_string(*lo));
      }
      if (r.kind == Outcome::kItem && r.item) c.remove(*r.item);
    }
    if (const auto budget = rules.budget(n); ev.steps() > budget) {
      flag(t, "c", std::to_string(ev.steps()) + " steps exceed " +
                       std::to_string(budget));
    }
  }
  return v;
}

}  // namespace

std::vector<std::vector<std::int64_t>> content_trace(
    const History& history, std::vector<std::int64_t> initial) {
  Content c(initial);
  std::vector<std::vector<std::int64_t>> trace{c.items()};
  for (const auto& ev : history) {
    const auto& r = ev.response;
    if (ev.invocation.kind == OpKind::kInsert && r.kind == Outcome::kAck) {
      c.add(ev.invocation.arg);
    } else if (r.kind == Outcome::kItem && r.item) {
      c.remove(*r.item);
    }
    trace.push_back(c.items());
  }
  return trace;
}

Verdict check_legitimate_history(const History& history,
                                 std::vector<std::int64_t> initial_content,
                                 std::size_t capacity,
                                 const StepBound& bound) {
  return check(history, 0, initial_content, capacity,
               {InsertRule::kStrict,
                [&](std::size_t n) { return bound.for_content(n); }});
}

Verdict check_availability(const History& history,
                           const HeapState& initial_snapshot,
                           const StepBound& bound) {
  return check_availability(history, active_bag(initial_snapshot),
                            initial_snapshot.capacity(), bound);
}

Verdict check_availability(const History& history,
                           std::vector<std::int64_t> prefix,
                           std::size_t capacity, const StepBound& bound) {
  if (prefix.size() > capacity) {
    throw std::invalid_argument("prefix holds more than K items");
  }
  return check(history, 0, prefix, capacity,
               {InsertRule::kRelaxed,
                [&](std::size_t) { return bound.for_capacity(capacity); }});
}

StabilizationVerdict check_stabilization(const History& history,
                                         std::span<const HeapState> points,
                                         const BalanceParams& params,
                                         const StepBound& bound) {
  if (points.size() != history.size() + 1) {
    throw std::invalid_argument("need one snapshot per history point");
  }
  StabilizationVerdict out;
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (check_legitimacy(points[t], params).legitimate) {
      out.convergence_period = t;
      break;
    }
  }
  if (!out.convergence_period) {
    out.verdict.window = history.size();
    out.verdict.violations.push_back(
        {history.size(), "no-legitimate-point",
         "no recorded point is legitimate"});
    return out;
  }
  const std::size_t t = *out.convergence_period;
  out.verdict = check(history, t, active_bag(points[t]), points[t].capacity(),
                      {InsertRule::kStrict,
                       [&](std::size_t n) { return bound.for_content(n); }});
  return out;
}

// --- Serialization ---------------------------------------------------------

namespace {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kAck: return "ack";
    case Outcome::kHeapFull: return "heap-full";
    case Outcome::kItem: return "item";
    case Outcome::kHeapEmpty: return "heap-empty";
  }
  return "?";
}

Outcome outcome_from(const json& j) {
  for (Outcome o : {Outcome::kAck, Outcome::kHeapFull, Outcome::kItem,
                    Outcome::kHeapEmpty}) {
    if (j == outcome_name(o)) return o;
  }
  throw FormatError("unknown response kind");
}

json violations_json(const Verdict& v) {
  json out = json::array();
  for (const auto& x : v.violations) {
    out.push_back({{"point", x.point},
                   {"constraint", x.constraint},
                   {"detail", x.detail}});
  }
  return out;
}

}  // namespace

std::string history_to_jsonl(const History& history) {
  std::string out;
  for (const auto& ev : history) {
    const bool ins = ev.invocation.kind == OpKind::kInsert;
    json line = {
        {"op", ins ? "insert" : "deleteMin"},
        {"arg", ins ? json(ev.invocation.arg) : json(nullptr)},
        {"response", outcome_name(ev.response.kind)},
        {"item", ev.response.item ? json(*ev.response.item) : json(nullptr)},
        {"steps", ev.response.steps},
        {"snapshot",
         ev.pre_snapshot ? state_to_json(*ev.pre_snapshot) : json(nullptr)},
    };
    out += line.dump();
    out += '\n';
  }
  return out;
}

History history_from_jsonl(std::string_view text) {
  History history;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = parse_document(line);
    HistoryEvent ev;
    const json& op = json_field(j, "op");
    if (op == "insert") {
      ev.invocation = Invocation::insert(json_int(json_field(j, "arg"), "arg"));
    } else if (op == "deleteMin") {
      ev.invocation = Invocation::delete_min();
    } else {
      throw FormatError("unknown op");
    }
    ev.response.kind = outcome_from(json_field(j, "response"));
    if (const json& item = json_field(j, "item"); !item.is_null()) {
      ev.response.item = json_int(item, "item");
    }
    const std::int64_t steps = json_int(json_field(j, "steps"), "steps");
    if (steps < 0) throw FormatError("steps must be non-negative");
    ev.response.steps = static_cast<std::uint64_t>(steps);
    if (auto it = j.find("snapshot"); it != j.end() && !it->is_null()) {
      ev.pre_snapshot = state_from_json(*it);
    }
    history.push_back(std::move(ev));
  }
  return history;
}

std::string to_json(const Verdict& verdict) {
  return json({{"window", verdict.window},
               {"clean", verdict.clean()},
               {"violations", violations_json(verdict)}})
      .dump();
}

std::string to_json(const StabilizationVerdict& verdict) {
  return json({{"window", verdict.verdict.window},
               {"clean", verdict.clean()},
               {"convergence_period",
                verdict.convergence_period ? json(*verdict.convergence_period)
                                           : json(nullptr)},
               {"violations", violations_json(verdict.verdict)}})
      .dump();
}

}  // namespace stabheap
