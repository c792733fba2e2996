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

// Read-only views of a heap state:
//
//   truncation tree  nodes reachable from the root through slots that hold
//                    items;
//   active tree      the heap-ordered part of the truncation tree, whose bag of
//                    items is the heap's logical content.
//
// A state is legitimate when, over the truncation tree,
//   (i)   every parent is <= its children,
//   (ii)  the height is within the balance bound for its size,
//   (iii) every stored height is the true subtree height,
//   (iv)  every stored nextslot is the true distance to the nearest node with a
//         free child position (any value >= capacity when there is none).

#ifndef STABHEAP_ANALYZER_HPP_
#define STABHEAP_ANALYZER_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stabheap/heap_state.hpp"

namespace stabheap {

// Loose-balance bound h(t) = a + b * lg t on the height of a t-node tree.
// The default a = 0, b = 1 gives floor(lg t), the minimum height for the
// implicit array layout.
struct BalanceParams {
  std::int64_t a = 0;
  std::int64_t b_num = 1;
  std::int64_t b_den = 1;

  std::int64_t bound(std::size_t t) const {
    if (t == 0) return a;
    if (b_num == b_den) {
      return a + static_cast<std::int64_t>(std::bit_width(t)) - 1;
    }
    const long double lg = std::log2(static_cast<long double>(t));
    return a + static_cast<std::int64_t>(std::floor(
                   lg * b_num / b_den + 1e-12L));
  }

  friend bool operator==(const BalanceParams&, const BalanceParams&) = default;
};

template <std::totally_ordered T>
struct AnalysisReport {
  std::vector<bool> t_members;
  std::vector<bool> s_members;
  std::vector<T> bag;  // sorted items of the active tree
  std::size_t t_size = 0;
  std::size_t m = 0;  // active tree size
  std::int64_t t_height = -1;  // -1 for an empty tree
  std::int64_t s_height = -1;
  bool legit_i = false;
  bool legit_ii = false;
  bool legit_iii = false;
  bool legit_iv = false;
  bool legitimate = false;
  std::int64_t gap = 0;

  // Conditions (i), (iii) and (iv): the part verify() alone establishes.
  bool core_legitimate() const { return legit_i && legit_iii && legit_iv; }
};

namespace detail {

// Membership by a root-down scan. Parents precede children in index order.
template <std::totally_ordered T, typename Admit>
std::vector<bool> reachable(const BasicHeapState<T>& state, Admit admit) {
  std::vector<bool> in(state.capacity(), false);
  if (state[kRoot].val.is_absent()) return in;
  in[0] = true;
  std::vector<NodeId> stack{kRoot};
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (Side side : {Side::kLeft, Side::kRight}) {
      auto y = child_of(state, x, side);
      if (y && state[*y].val.has_item() && admit(x, *y)) {
        in[y->index] = true;
        stack.push_back(*y);
      }
    }
  }
  return in;
}

template <std::totally_ordered T>
std::int64_t members_height(const BasicHeapState<T>&,
                            const std::vector<bool>& members) {
  std::int64_t h = -1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i]) h = std::max(h, depth_of(NodeId{i}));
  }
  return h;
}

}  // namespace detail

template <std::totally_ordered T>
std::vector<bool> truncation_tree(const BasicHeapState<T>& state) {
  return detail::reachable(state, [](NodeId, NodeId) { return true; });
}

template <std::totally_ordered T>
std::vector<bool> active_tree(const BasicHeapState<T>& state) {
  return detail::reachable(state, [&state](NodeId x, NodeId y) {
    return !(state[y].val < state[x].val);
  });
}

template <std::totally_ordered T>
std::vector<T> active_bag(const BasicHeapState<T>& state) {
  const auto s = active_tree(state);
  std::vector<T> bag;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) bag.push_back(state[NodeId{i}].val.item());
  }
  std::sort(bag.begin(), bag.end());
  return bag;
}

// Number of active nodes deeper than the balance bound for the active tree's
// size. Zero gap together with (i), (iii), (iv) implies (ii).
template <std::totally_ordered T>
std::int64_t gap_value(const BasicHeapState<T>& state,
                       const BalanceParams& params = {}) {
  const auto s = active_tree(state);
  const auto m = static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
  if (m == 0) return 0;
  const std::int64_t h = params.bound(m);
  std::int64_t gap = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] && depth_of(NodeId{i}) > h) ++gap;
  }
  return gap;
}

template <std::totally_ordered T>
AnalysisReport<T> check_legitimacy(const BasicHeapState<T>& state,
                                   const BalanceParams& params = {}) {
  AnalysisReport<T> r;
  r.t_members = truncation_tree(state);
  r.s_members = active_tree(state);
  const std::size_t k = state.capacity();
  for (std::size_t i = 0; i < k; ++i) {
    if (r.t_members[i]) ++r.t_size;
    if (r.s_members[i]) {
      ++r.m;
      r.bag.push_back(state[NodeId{i}].val.item());
    }
  }
  std::sort(r.bag.begin(), r.bag.end());
  r.t_height = detail::members_height(state, r.t_members);
  r.s_height = detail::members_height(state, r.s_members);

  // Bottom-up over the truncation tree: children have larger indices.
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> height(k, 0);
  std::vector<std::int64_t> slot_dist(k, kNone);
  r.legit_i = r.legit_iii = r.legit_iv = true;
  for (std::size_t i = k; i-- > 0;) {
    if (!r.t_members[i]) continue;
    const NodeId x{i};
    std::int64_t h = 0;
    std::int64_t dist = kNone;
    bool free_position = false;
    for (Side side : {Side::kLeft, Side::kRight}) {
      auto y = child_of(state, x, side);
      if (!y) continue;
      if (!r.t_members[y->index]) {
        free_position = true;
        continue;
      }
      if (state[*y].val < state[x].val) r.legit_i = false;
      h = std::max(h, height[y->index] + 1);
      if (slot_dist[y->index] != kNone &&
          (dist == kNone || slot_dist[y->index] + 1 < dist)) {
        dist = slot_dist[y->index] + 1;
      }
    }
    if (free_position) dist = 0;
    height[i] = h;
    slot_dist[i] = dist;
    if (state[x].height != h) r.legit_iii = false;
    const std::int64_t stored = state[x].nextslot;
    if (dist == kNone ? stored < static_cast<std::int64_t>(k) : stored != dist) {
      r.legit_iv = false;
    }
  }
  r.legit_ii = r.t_size <= 1 || r.t_height <= params.bound(r.t_size);
  r.legitimate = r.legit_i && r.legit_ii && r.legit_iii && r.legit_iv;
  r.gap = 0;
  if (r.m > 0) {
    const std::int64_t hb = params.bound(r.m);
    for (std::size_t i = 0; i < k; ++i) {
      if (r.s_members[i] && depth_of(NodeId{i}) > hb) ++r.gap;
    }
  }
  return r;
}

}  // namespace stabheap

#endif  // STABHEAP_ANALYZER_HPP_
