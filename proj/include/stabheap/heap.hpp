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

// A binary min-heap that stays usable from any state of its tree and repairs
// itself as operations run.
//
// The active tree is the largest root fragment that is heap ordered: a child
// belongs to it iff its parent does, it holds an item, and that item is not
// below the parent's. Every traversal (except the two heapify walks) clears
// children that fall outside the active tree the moment it encounters their
// parent, so after such a check "child holds an item" and "child is active"
// mean the same thing.
//
// Each public operation starts with verify(root), which repairs one
// root-to-leaf path of the active tree and steers the next call to the
// following leaf, and balance(), which moves one item from a deep leaf to a
// shallow free slot. Responses are always consistent with the operation's
// effect on the active tree, even while the rest of the state is corrupt.

#ifndef STABHEAP_HEAP_HPP_
#define STABHEAP_HEAP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>

#include "stabheap/heap_state.hpp"

namespace stabheap {

enum class Outcome : std::uint8_t { kAck, kHeapFull, kItem, kHeapEmpty };

template <std::totally_ordered T>
struct OpResponse {
  Outcome kind = Outcome::kAck;
  std::optional<T> item;  // set iff kind == kItem
  std::uint64_t steps = 0;

  bool succeeded() const {
    return kind == Outcome::kAck || kind == Outcome::kItem;
  }

  friend bool operator==(const OpResponse&, const OpResponse&) = default;
};

enum class TieBreak : std::uint8_t { kPreferLeft, kRandom };

template <std::totally_ordered T>
class BasicStabilizingHeap {
 public:
  using State = BasicHeapState<T>;
  using Response = OpResponse<T>;
  using VisitObserver = std::function<void(NodeId)>;

  explicit BasicStabilizingHeap(std::size_t capacity) : state_(capacity) {}
  explicit BasicStabilizingHeap(State state) : state_(std::move(state)) {}

  Response insert(T p) {
    steps_ = 0;
    verify(kRoot);
    balance();
    auto slot = find_slot(kRoot);
    if (!slot) return {Outcome::kHeapFull, std::nullopt, steps_};
    place(*slot, std::move(p));
    return {Outcome::kAck, std::nullopt, steps_};
  }

  Response delete_min() {
    steps_ = 0;
    verify(kRoot);
    balance();
    auto leaf = deep_leaf(kRoot);
    if (!leaf) return {Outcome::kHeapEmpty, std::nullopt, steps_};
    T q = state_[kRoot].val.item();
    if (*leaf == kRoot) {
      state_[kRoot].val = ItemValue<T>::absent();
      refresh(kRoot);
    } else {
      state_[kRoot].val = state_[*leaf].val;
      state_[*leaf].val = ItemValue<T>::absent();
      refresh_to_root(*parent_of(state_, *leaf));
      down_heapify(kRoot);
    }
    return {Outcome::kItem, std::move(q), steps_};
  }

  const State& state() const { return state_; }
  // Direct access for fault injection between operations.
  State& state() { return state_; }
  std::size_t capacity() const { return state_.capacity(); }

  // Node visits since the start of the current (or last) public operation.
  std::uint64_t steps() const { return steps_; }
  void reset_steps() { steps_ = 0; }

  void set_visit_observer(VisitObserver observer) {
    observer_ = std::move(observer);
  }

  void set_tie_break(TieBreak mode, std::uint64_t seed = 0) {
    tie_break_ = mode;
    rng_.seed(seed);
  }

  // The active-tree leaf reached by the most recent verify(root).
  std::optional<NodeId> last_verify_leaf() const { return last_verify_leaf_; }

  // --- Internal routines, public so tests and experiments can drive them. ---

  // Follows stored heights down the active tree and returns one of its
  // leaves, or nullopt when the active tree is empty.
  std::optional<NodeId> deep_leaf(NodeId x) {
    if (state_[x].val.is_absent()) return std::nullopt;
    for (;;) {
      visit(x);
      check(x);
      auto l = active_child(x, Side::kLeft);
      auto r = active_child(x, Side::kRight);
      if (!l && !r) return x;
      if (!r) {
        x = *l;
      } else if (!l) {
        x = *r;
      } else {
        const auto hl = state_[*l].height;
        const auto hr = state_[*r].height;
        x = hl > hr ? *l : hr > hl ? *r : (prefer_left() ? *l : *r);
      }
    }
  }

  // Returns a free position whose parent is in the active tree, steering by
  // stored nextslot values. May return nullopt while free positions exist
  // elsewhere if those fields are corrupt.
  std::optional<NodeId> find_slot(NodeId x) {
    if (state_[x].val.is_absent()) {
      visit(x);
      return x;
    }
    for (;;) {
      visit(x);
      check(x);
      auto l = child_of(state_, x, Side::kLeft);
      auto r = child_of(state_, x, Side::kRight);
      if (!l) return std::nullopt;
      const bool l_free = state_[*l].val.is_absent();
      const bool r_free = r && state_[*r].val.is_absent();
      if (l_free && r_free) return prefer_left() ? *l : *r;
      if (l_free) return *l;
      if (r_free) return *r;
      if (!r) {
        x = *l;
        continue;
      }
      const auto nl = state_[*l].nextslot;
      const auto nr = state_[*r].nextslot;
      x = nl < nr ? *l : nr < nl ? *r : (prefer_left() ? *l : *r);
    }
  }

  // Sifts y's item toward the root and recomputes height and nextslot on
  // every node of the path, whether or not a swap happened there.
  void up_heapify(NodeId y) {
    visit(y);
    refresh(y);
    for (auto p = parent_of(state_, y); p; p = parent_of(state_, y)) {
      visit(*p);
      if (state_[y].val < state_[*p].val) {
        std::swap(state_[y].val, state_[*p].val);
      }
      refresh(*p);
      y = *p;
    }
  }

  // Sifts x's item down by value swaps only. Below the starting node, a child
  // is a candidate only if it is not smaller than the value now held by its
  // grandparent position, i.e. it was in the active tree before the sift.
  void down_heapify(NodeId x) {
    std::optional<ItemValue<T>> floor;
    for (;;) {
      visit(x);
      std::optional<NodeId> best;
      for (Side side : {Side::kLeft, Side::kRight}) {
        auto c = child_of(state_, x, side);
        if (!c) continue;
        ++steps_;
        const auto& cv = state_[*c].val;
        if (cv.is_absent() || (floor && cv < *floor)) continue;
        if (!best || cv < state_[*best].val) best = c;
      }
      if (!best || !(state_[*best].val < state_[x].val)) return;
      std::swap(state_[x].val, state_[*best].val);
      floor = state_[x].val;
      x = *best;
    }
  }

  // Repairs the path selected by the toggle bits and sets up the next path.
  // A no-op on an empty active tree.
  void verify(NodeId x) {
    if (state_[x].val.is_absent()) return;
    visit(x);
    check(x);
    auto l = active_child(x, Side::kLeft);
    auto r = active_child(x, Side::kRight);
    // A missing child is judged against the active tree; with no children at
    // all the second assignment wins and the toggle ends at left.
    if (!l) state_[x].toggle = Toggle::kRight;
    if (!r) state_[x].toggle = Toggle::kLeft;
    if (l || r) {
      verify(state_[x].toggle == Toggle::kRight ? *r : *l);
    } else {
      last_verify_leaf_ = x;
      next_path(x);
    }
    refresh(x);
  }

  void next_path(NodeId x) {
    visit(x);
    if (auto w = sw_ancestor(x)) {
      state_[*w].toggle = Toggle::kRight;
      left_fringe(child_of(state_, *w, Side::kRight));
      return;
    }
    left_fringe(kRoot);
  }

  // Points toggles down the leftmost active path below x.
  void left_fringe(std::optional<NodeId> x) {
    while (x && state_[*x].val.has_item()) {
      visit(*x);
      check(*x);
      auto l = active_child(*x, Side::kLeft);
      auto r = active_child(*x, Side::kRight);
      if (!l && !r) return;
      if (!l) {
        state_[*x].toggle = Toggle::kRight;
        x = r;
      } else {
        state_[*x].toggle = Toggle::kLeft;
        x = l;
      }
    }
  }

  // Nearest proper ancestor w of x with w.toggle == left and two active
  // children.
  std::optional<NodeId> sw_ancestor(NodeId x) {
    for (auto w = parent_of(state_, x); w; w = parent_of(state_, *w)) {
      visit(*w);
      check(*w);
      if (state_[*w].toggle == Toggle::kLeft &&
          active_child(*w, Side::kLeft) && active_child(*w, Side::kRight)) {
        return w;
      }
    }
    return std::nullopt;
  }

  // Moves one leaf item to the slot find_slot picks, undoing the removal if
  // no slot is found. Leaves the active tree's bag unchanged.
  void balance() {
    auto leaf = deep_leaf(kRoot);
    if (!leaf) return;
    T q = state_[*leaf].val.item();
    visit(*leaf);
    state_[*leaf].val = ItemValue<T>::absent();
    if (auto p = parent_of(state_, *leaf)) refresh_to_root(*p);
    auto slot = find_slot(kRoot);
    if (!slot) {
      state_[*leaf].val = std::move(q);
      refresh_to_root(*leaf);
      return;
    }
    place(*slot, std::move(q));
  }

 private:
  void visit(NodeId x) {
    ++steps_;
    if (observer_) observer_(x);
  }

  // Truncation on encounter; reading each child counts as a visit.
  void check(NodeId x) {
    steps_ += arity(x);
    encounter_check(state_, x);
  }

  void refresh(NodeId x) {
    steps_ += arity(x);
    recompute_fields(state_, x);
  }

  std::uint64_t arity(NodeId x) const {
    return static_cast<std::uint64_t>(
        child_of(state_, x, Side::kLeft).has_value() +
        child_of(state_, x, Side::kRight).has_value());
  }

  void refresh_to_root(NodeId x) {
    for (std::optional<NodeId> n = x; n; n = parent_of(state_, *n)) {
      visit(*n);
      refresh(*n);
    }
  }

  // Only meaningful after check(x).
  std::optional<NodeId> active_child(NodeId x, Side side) const {
    auto c = child_of(state_, x, side);
    if (c && state_[*c].val.has_item()) return c;
    return std::nullopt;
  }

  bool prefer_left() {
    if (tie_break_ == TieBreak::kPreferLeft) return true;
    return (rng_() & 1) == 0;
  }

  // Puts p at a free slot whose parent is active: the slot becomes a leaf,
  // its children are cleared, and p is sifted up.
  void place(NodeId y, T p) {
    visit(y);
    state_[y].val = std::move(p);
    state_[y].height = 0;
    state_[y].nextslot = has_children(state_, y) ? 0 : state_.capacity_i64();
    for (Side side : {Side::kLeft, Side::kRight}) {
      if (auto z = child_of(state_, y, side)) {
        visit(*z);
        state_[*z].val = ItemValue<T>::absent();
      }
    }
    up_heapify(y);
  }

  State state_;
  std::uint64_t steps_ = 0;
  VisitObserver observer_;
  TieBreak tie_break_ = TieBreak::kPreferLeft;
  std::mt19937_64 rng_;
  std::optional<NodeId> last_verify_leaf_;
};

using StabilizingHeap = BasicStabilizingHeap<std::int64_t>;
using Response = OpResponse<std::int64_t>;

}  // namespace stabheap

#endif  // STABHEAP_HEAP_HPP_
