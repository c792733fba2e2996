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

// Test-only reference implementations. Deliberately naive: every question
// about a node is answered by walking its root path, with no shared
// traversal state, so they share no code paths with the analyzer.

#ifndef STABHEAP_TESTS_ORACLE_HPP_
#define STABHEAP_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "stabheap/heap_state.hpp"

namespace stabheap::testing {

// Root-to-x path as indices, root first.
inline std::vector<std::size_t> root_path(std::size_t x) {
  std::vector<std::size_t> path{x};
  while (x != 0) {
    x = (x - 1) / 2;
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline bool is_ancestor_or_self(std::size_t a, std::size_t x) {
  for (std::size_t n : root_path(x)) {
    if (n == a) return true;
  }
  return false;
}

inline std::int64_t depth(std::size_t x) {
  return static_cast<std::int64_t>(root_path(x).size()) - 1;
}

inline std::int64_t floor_lg(std::size_t t) {
  std::int64_t h = 0;
  std::size_t p = 2;
  while (p <= t) {
    ++h;
    p *= 2;
  }
  return h;
}

struct OracleView {
  std::vector<bool> t, s;
  bool legit_i = true, legit_ii = true, legit_iii = true, legit_iv = true;
  std::int64_t gap = 0;

  bool legitimate() const { return legit_i && legit_ii && legit_iii && legit_iv; }
};

inline OracleView brute_force(const HeapState& st) {
  const std::size_t k = st.capacity();
  OracleView v;
  v.t.assign(k, false);
  v.s.assign(k, false);
  for (std::size_t x = 0; x < k; ++x) {
    const auto path = root_path(x);
    bool in_t = true, in_s = true;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto& val = st[NodeId{path[i]}].val;
      if (val.is_absent()) in_t = in_s = false;
      if (i > 0 && in_s &&
          val.item() < st[NodeId{path[i - 1]}].val.item()) {
        in_s = false;
      }
    }
    v.t[x] = in_t;
    v.s[x] = in_s;
  }

  std::size_t t_size = 0, m = 0;
  std::int64_t t_height = -1;
  for (std::size_t x = 0; x < k; ++x) {
    if (v.t[x]) {
      ++t_size;
      t_height = std::max(t_height, depth(x));
    }
    if (v.s[x]) ++m;
  }

  for (std::size_t x = 0; x < k; ++x) {
    if (!v.t[x]) continue;
    const auto& rec = st[NodeId{x}];
    // (i) against every child in T_A.
    for (std::size_t c : {2 * x + 1, 2 * x + 2}) {
      if (c < k && v.t[c] && st[NodeId{c}].val.item() < rec.val.item()) {
        v.legit_i = false;
      }
    }
    // (iii) deepest T_A descendant, and (iv) nearest descendant with a free
    // child position.
    std::int64_t h = 0;
    std::optional<std::int64_t> slot;
    for (std::size_t y = x; y < k; ++y) {
      if (!v.t[y] || !is_ancestor_or_self(x, y)) continue;
      h = std::max(h, depth(y) - depth(x));
      int positions = 0, filled = 0;
      for (std::size_t c : {2 * y + 1, 2 * y + 2}) {
        if (c < k) {
          ++positions;
          filled += v.t[c] ? 1 : 0;
        }
      }
      if (filled < positions) {
        const std::int64_t d = depth(y) - depth(x);
        if (!slot || d < *slot) slot = d;
      }
    }
    if (rec.height != h) v.legit_iii = false;
    if (slot ? rec.nextslot != *slot
             : rec.nextslot < static_cast<std::int64_t>(k)) {
      v.legit_iv = false;
    }
  }
  v.legit_ii = t_size == 0 || t_height <= floor_lg(t_size);
  if (m > 0) {
    for (std::size_t x = 0; x < k; ++x) {
      if (v.s[x] && depth(x) > floor_lg(m)) ++v.gap;
    }
  }
  return v;
}

// State with the given values (nullopt = Absent) and default fields.
inline HeapState make_state(
    std::size_t capacity,
    std::initializer_list<std::optional<std::int64_t>> vals) {
  HeapState st(capacity);
  std::size_t i = 0;
  for (const auto& v : vals) {
    st[NodeId{i++}].val = v ? Value(*v) : Value::absent();
  }
  return st;
}

// Sets every height and nextslot to its correct value, leaves first.
inline void fix_fields(HeapState& st) {
  for (std::size_t i = st.capacity(); i-- > 0;) {
    recompute_fields(st, NodeId{i});
  }
}

// The canonical corrupted example: T_A = {0,1,2,5,6}, S_A = {0,2,5}.
inline HeapState worked_state_x() {
  return make_state(7, {5, 3, 8, std::nullopt, std::nullopt, 9, 2});
}

}  // namespace stabheap::testing

#endif  // STABHEAP_TESTS_ORACLE_HPP_
