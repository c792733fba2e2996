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

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "stabheap/analyzer.hpp"
#include "stabheap/fault_lab.hpp"
#include "stabheap/heap_state.hpp"
#include "stabheap/item_value.hpp"

namespace stabheap {
namespace {

using testing::make_state;
using testing::worked_state_x;

TEST(ItemValueTest, AbsentOrdersAboveEveryItem) {
  const Value absent = Value::absent();
  EXPECT_LT(Value(std::numeric_limits<std::int64_t>::max()), absent);
  EXPECT_LT(Value(std::numeric_limits<std::int64_t>::min()), absent);
  EXPECT_EQ(absent, Value::absent());
  EXPECT_FALSE(absent < absent);
  EXPECT_LT(Value(-3), Value(2));
  EXPECT_EQ(Value(4), Value(4));
}

TEST(ItemValueTest, StreamsItemsAndAbsent) {
  std::ostringstream os;
  os << Value(7) << ' ' << Value::absent();
  EXPECT_EQ(os.str(), "7 Absent");
}

TEST(ToggleTest, RawMappingRoundTrips) {
  EXPECT_EQ(toggle_from_raw(0), Toggle::kLeft);
  EXPECT_EQ(toggle_from_raw(1), Toggle::kRight);
  EXPECT_EQ(toggle_from_raw(-1), Toggle::kRight);
  EXPECT_EQ(toggle_from_raw(-4), Toggle::kLeft);
  for (Toggle t : {Toggle::kLeft, Toggle::kRight}) {
    EXPECT_EQ(toggle_from_raw(to_raw(t)), t);
  }
}

TEST(HeapStateTest, ZeroCapacityIsRejected) {
  EXPECT_THROW(HeapState(0), std::invalid_argument);
}

TEST(HeapStateTest, FreshStateIsEmptyAndLegitimate) {
  HeapState st(7);
  for (const auto& rec : st.nodes()) EXPECT_TRUE(rec.val.is_absent());
  EXPECT_EQ(st[NodeId{0}].nextslot, 0);
  EXPECT_EQ(st[NodeId{6}].nextslot, 7);
  EXPECT_TRUE(check_legitimacy(st).legitimate);
}

TEST(HeapStateTest, CheckedAccessRejectsOutOfRange) {
  HeapState st(3);
  EXPECT_NO_THROW(st.at(NodeId{2}));
  EXPECT_THROW(st.at(NodeId{3}), std::out_of_range);
  EXPECT_FALSE(st.contains(NodeId{3}));
}

TEST(NavigationTest, ChildOf) {
  HeapState k7(7);
  EXPECT_EQ(child_of(k7, NodeId{0}, Side::kLeft), NodeId{1});
  EXPECT_EQ(child_of(k7, NodeId{0}, Side::kRight), NodeId{2});
  EXPECT_EQ(child_of(k7, NodeId{2}, Side::kRight), NodeId{6});
  EXPECT_EQ(child_of(k7, NodeId{3}, Side::kLeft), std::nullopt);
  HeapState k1(1);
  EXPECT_EQ(child_of(k1, NodeId{0}, Side::kRight), std::nullopt);
  EXPECT_FALSE(has_children(k1, NodeId{0}));
  // Even capacity: the last internal node has only a left child.
  HeapState k6(6);
  EXPECT_EQ(child_of(k6, NodeId{2}, Side::kLeft), NodeId{5});
  EXPECT_EQ(child_of(k6, NodeId{2}, Side::kRight), std::nullopt);
}

TEST(NavigationTest, ParentOfAndDepth) {
  HeapState st(7);
  EXPECT_EQ(parent_of(st, NodeId{6}), NodeId{2});
  EXPECT_EQ(parent_of(st, NodeId{1}), NodeId{0});
  EXPECT_EQ(parent_of(st, NodeId{0}), std::nullopt);
  EXPECT_EQ(depth_of(NodeId{0}), 0);
  EXPECT_EQ(depth_of(NodeId{2}), 1);
  EXPECT_EQ(depth_of(NodeId{6}), 2);
  EXPECT_EQ(depth_of(NodeId{7}), 3);
}

TEST(NavigationTest, ParentChildInverseProperty) {
  HeapState st(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    for (Side side : {Side::kLeft, Side::kRight}) {
      if (auto c = child_of(st, NodeId{i}, side)) {
        EXPECT_EQ(parent_of(st, *c), NodeId{i});
        EXPECT_EQ(depth_of(*c), depth_of(NodeId{i}) + 1);
      }
    }
  }
}

TEST(EncounterCheckTest, TruncatesSmallerChild) {
  HeapState st = worked_state_x();
  EXPECT_EQ(encounter_check(st, NodeId{0}), 1);
  EXPECT_TRUE(st[NodeId{1}].val.is_absent());
  EXPECT_EQ(st[NodeId{2}].val, Value(8));
}

TEST(EncounterCheckTest, NoChangeWhenOrdered) {
  HeapState st = make_state(7, {5, 7, 8});
  const HeapState before = st;
  EXPECT_EQ(encounter_check(st, NodeId{0}), 0);
  EXPECT_EQ(st, before);
}

TEST(EncounterCheckTest, LeafAndAbsentNodes) {
  HeapState st = make_state(7, {1, 2, 3, 0, 0, 0, 0});
  EXPECT_EQ(encounter_check(st, NodeId{4}), 0);  // no children in A
  HeapState absent_root = make_state(3, {std::nullopt, 1, 2});
  EXPECT_EQ(encounter_check(absent_root, NodeId{0}), 0);
  EXPECT_EQ(absent_root[NodeId{1}].val, Value(1));
}

TEST(EncounterCheckTest, IdempotentAndPreservesActiveTree) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    HeapState st = generate({seed, 15, ArbitraryMode{}});
    const auto active_before = active_tree(st);
    const auto bag_before = active_bag(st);
    for (std::size_t i = 0; i < st.capacity(); ++i) {
      encounter_check(st, NodeId{i});
      const HeapState once = st;
      EXPECT_EQ(encounter_check(st, NodeId{i}), 0);
      EXPECT_EQ(st, once);
    }
    EXPECT_EQ(active_tree(st), active_before) << "seed " << seed;
    EXPECT_EQ(active_bag(st), bag_before);
  }
}

TEST(EncounterCheckTest, ChildHasItemIffActiveAfterCheck) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    HeapState st = generate({seed, 31, ArbitraryMode{}});
    const auto s = active_tree(st);
    for (std::size_t i = 0; i < st.capacity(); ++i) {
      if (!s[i]) continue;
      encounter_check(st, NodeId{i});
      for (Side side : {Side::kLeft, Side::kRight}) {
        if (auto c = child_of(st, NodeId{i}, side)) {
          EXPECT_EQ(st[*c].val.has_item(), static_cast<bool>(s[c->index]));
        }
      }
    }
  }
}

TEST(RecomputeTest, HeightAndNextslot) {
  // 0 -> {1, 2}, 1 -> {3}; node 4 free.
  HeapState st = make_state(7, {1, 2, 3, 4});
  EXPECT_EQ(recomputed_height(st, NodeId{3}), 0);
  EXPECT_EQ(recomputed_height(st, NodeId{1}), 1);
  // Local: reads the children's stored heights, which are still 0.
  EXPECT_EQ(recomputed_height(st, NodeId{0}), 1);
  st[NodeId{1}].height = 1;
  EXPECT_EQ(recomputed_height(st, NodeId{0}), 2);
  EXPECT_EQ(recomputed_nextslot(st, NodeId{1}), 0);  // node 4 is free
  EXPECT_EQ(recomputed_nextslot(st, NodeId{3}), 7);  // no positions in A
  st[NodeId{1}].nextslot = 0;
  st[NodeId{2}].nextslot = 0;
  EXPECT_EQ(recomputed_nextslot(st, NodeId{0}), 1);
}

TEST(RecomputeTest, NextslotSaturatesAtCapacity) {
  HeapState st = make_state(3, {1, 2, 3});
  st[NodeId{1}].nextslot = std::numeric_limits<std::int64_t>::max();
  st[NodeId{2}].nextslot = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(recomputed_nextslot(st, NodeId{0}), 3);
  st[NodeId{1}].height = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(recomputed_height(st, NodeId{0}),
            std::numeric_limits<std::int64_t>::max());
}

}  // namespace
}  // namespace stabheap
