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

// Storage for the fixed-capacity implicit binary tree. Every field of a
// NodeRecord may hold an arbitrary value after a transient fault; only the
// index arithmetic in child_of/parent_of is trusted.

#ifndef STABHEAP_HEAP_STATE_HPP_
#define STABHEAP_HEAP_STATE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stabheap/item_value.hpp"

namespace stabheap {

template <std::totally_ordered T>
struct NodeRecord {
  ItemValue<T> val;
  // Height of the subtree rooted here; a leaf has height 0.
  std::int64_t height = 0;
  // Distance to the nearest descendant with a free child position. Any value
  // >= capacity means the subtree has none.
  std::int64_t nextslot = 0;
  Toggle toggle = Toggle::kLeft;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

template <std::totally_ordered T>
class BasicHeapState {
 public:
  using item_type = T;
  using record_type = NodeRecord<T>;

  // An empty heap: every slot Absent, fields at their legitimate values.
  explicit BasicHeapState(std::size_t capacity) : nodes_(capacity) {
    if (capacity == 0) {
      throw std::invalid_argument("heap capacity must be positive");
    }
    for (std::size_t i = 0; i < capacity; ++i) {
      nodes_[i].nextslot =
          2 * i + 1 < capacity ? 0 : static_cast<std::int64_t>(capacity);
    }
  }

  std::size_t capacity() const { return nodes_.size(); }
  std::int64_t capacity_i64() const {
    return static_cast<std::int64_t>(nodes_.size());
  }

  bool contains(NodeId x) const { return x.index < nodes_.size(); }

  record_type& operator[](NodeId x) { return nodes_[x.index]; }
  const record_type& operator[](NodeId x) const { return nodes_[x.index]; }

  record_type& at(NodeId x) {
    if (!contains(x)) throw std::out_of_range("node id out of range");
    return nodes_[x.index];
  }
  const record_type& at(NodeId x) const {
    if (!contains(x)) throw std::out_of_range("node id out of range");
    return nodes_[x.index];
  }

  std::span<record_type> nodes() { return nodes_; }
  std::span<const record_type> nodes() const { return nodes_; }

  friend bool operator==(const BasicHeapState&,
                         const BasicHeapState&) = default;

 private:
  std::vector<record_type> nodes_;
};

template <std::totally_ordered T>
std::optional<NodeId> child_of(const BasicHeapState<T>& state, NodeId x,
                               Side side) {
  const std::size_t c = 2 * x.index + (side == Side::kLeft ? 1 : 2);
  if (c >= state.capacity()) return std::nullopt;
  return NodeId{c};
}

template <std::totally_ordered T>
std::optional<NodeId> parent_of(const BasicHeapState<T>&, NodeId x) {
  if (x.index == 0) return std::nullopt;
  return NodeId{(x.index - 1) / 2};
}

template <std::totally_ordered T>
bool has_children(const BasicHeapState<T>& state, NodeId x) {
  return child_of(state, x, Side::kLeft).has_value();
}

// Depth of x in the tree, root at depth 0.
inline std::int64_t depth_of(NodeId x) {
  std::int64_t d = 0;
  for (std::size_t i = x.index; i > 0; i = (i - 1) / 2) ++d;
  return d;
}

// Truncation on encounter: any child whose value is below x's value is not in
// the active tree, so it is overwritten with Absent. Requires x to hold an
// item; returns the number of children cleared.
template <std::totally_ordered T>
int encounter_check(BasicHeapState<T>& state, NodeId x) {
  if (state[x].val.is_absent()) return 0;
  int truncated = 0;
  for (Side side : {Side::kLeft, Side::kRight}) {
    if (auto y = child_of(state, x, side)) {
      auto& child = state[*y];
      if (child.val < state[x].val) {
        child.val = ItemValue<T>::absent();
        ++truncated;
      }
    }
  }
  return truncated;
}

namespace detail {

inline std::int64_t saturating_inc(std::int64_t v) {
  return v == std::numeric_limits<std::int64_t>::max() ? v : v + 1;
}

}  // namespace detail

// Height from the children's stored fields: 0 when no child holds an item,
// otherwise one more than the tallest occupied child.
template <std::totally_ordered T>
std::int64_t recomputed_height(const BasicHeapState<T>& state, NodeId x) {
  std::optional<std::int64_t> tallest;
  for (Side side : {Side::kLeft, Side::kRight}) {
    if (auto y = child_of(state, x, side); y && state[*y].val.has_item()) {
      tallest = tallest ? std::max(*tallest, state[*y].height)
                        : state[*y].height;
    }
  }
  return tallest ? detail::saturating_inc(*tallest) : 0;
}

// Nextslot from the children's stored fields: 0 when some child position is
// free, capacity when x has no children at all, otherwise one more than the
// nearest child's value, clamped to capacity.
template <std::totally_ordered T>
std::int64_t recomputed_nextslot(const BasicHeapState<T>& state, NodeId x) {
  const std::int64_t k = state.capacity_i64();
  if (!has_children(state, x)) return k;
  std::optional<std::int64_t> nearest;
  for (Side side : {Side::kLeft, Side::kRight}) {
    if (auto y = child_of(state, x, side)) {
      if (state[*y].val.is_absent()) return 0;
      nearest = nearest ? std::min(*nearest, state[*y].nextslot)
                        : state[*y].nextslot;
    }
  }
  return std::min(k, detail::saturating_inc(*nearest));
}

template <std::totally_ordered T>
void recompute_fields(BasicHeapState<T>& state, NodeId x) {
  state[x].height = recomputed_height(state, x);
  state[x].nextslot = recomputed_nextslot(state, x);
}

using HeapState = BasicHeapState<std::int64_t>;
using Value = ItemValue<std::int64_t>;
using Record = NodeRecord<std::int64_t>;

}  // namespace stabheap

#endif  // STABHEAP_HEAP_STATE_HPP_
