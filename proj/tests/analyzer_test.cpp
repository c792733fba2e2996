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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "oracle.hpp"
#include "stabheap/analysis_io.hpp"
#include "stabheap/analyzer.hpp"
#include "stabheap/fault_lab.hpp"
#include "stabheap/heap.hpp"

namespace stabheap {
namespace {

using testing::fix_fields;
using testing::make_state;
using testing::worked_state_x;

std::vector<bool> members(std::size_t k, std::initializer_list<std::size_t> xs) {
  std::vector<bool> v(k, false);
  for (auto x : xs) v[x] = true;
  return v;
}

TEST(TruncationTreeTest, Empty) {
  HeapState st = make_state(7, {std::nullopt, 1, 2});
  EXPECT_EQ(truncation_tree(st), std::vector<bool>(7, false));
  EXPECT_EQ(active_tree(st), std::vector<bool>(7, false));
  EXPECT_TRUE(active_bag(st).empty());
}

TEST(TruncationTreeTest, WorkedStateX) {
  EXPECT_EQ(truncation_tree(worked_state_x()), members(7, {0, 1, 2, 5, 6}));
}

TEST(TruncationTreeTest, CutAtAbsent) {
  HeapState st = make_state(7, {5, std::nullopt, 8, 1, 1, 9, 2});
  EXPECT_EQ(truncation_tree(st), members(7, {0, 2, 5, 6}));
}

TEST(ActiveTreeTest, WorkedStateX) {
  const HeapState st = worked_state_x();
  EXPECT_EQ(active_tree(st), members(7, {0, 2, 5}));
  EXPECT_EQ(active_bag(st), (std::vector<std::int64_t>{5, 8, 9}));
}

TEST(ActiveTreeTest, LegitimateHeapEqualsTruncationTree) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const HeapState st = generate({seed, 63, LegitimateMode{seed % 64}});
    EXPECT_EQ(active_tree(st), truncation_tree(st));
  }
}

TEST(LegitimacyTest, BuiltByInsertsIsLegitimate) {
  for (std::size_t n = 0; n <= 31; ++n) {
    StabilizingHeap h(31);
    for (std::size_t i = 0; i < n; ++i) {
      h.insert(static_cast<std::int64_t>((i * 7919) % 101));
    }
    const auto r = check_legitimacy(h.state());
    EXPECT_TRUE(r.legitimate) << n;
    EXPECT_EQ(r.m, n);
  }
}

TEST(LegitimacyTest, WorkedStateXViolatesHeapOrder) {
  const auto r = check_legitimacy(worked_state_x());
  EXPECT_FALSE(r.legit_i);
  EXPECT_FALSE(r.legitimate);
  EXPECT_EQ(r.t_size, 5U);
  EXPECT_EQ(r.m, 3U);
}

TEST(LegitimacyTest, SingleHeightFaultIsDetected) {
  HeapState st = generate({5, 15, LegitimateMode{10}});
  ASSERT_TRUE(check_legitimacy(st).legitimate);
  st[NodeId{1}].height = 99;
  const auto r = check_legitimacy(st);
  EXPECT_FALSE(r.legit_iii);
  EXPECT_TRUE(r.legit_i);
  EXPECT_TRUE(r.legit_iv);
  EXPECT_FALSE(r.legitimate);
}

TEST(LegitimacyTest, NextslotAtOrAboveCapacityWhenSubtreeFull) {
  HeapState st = make_state(3, {1, 2, 3});
  fix_fields(st);
  st[kRoot].nextslot = 1000;
  EXPECT_TRUE(check_legitimacy(st).legit_iv);
  st[kRoot].nextslot = 2;
  EXPECT_FALSE(check_legitimacy(st).legit_iv);
}

TEST(GapTest, Examples) {
  // Balanced heap.
  HeapState full = make_state(7, {1, 2, 3, 4, 5, 6, 7});
  fix_fields(full);
  EXPECT_EQ(gap_value(full), 0);
  // Worked state X: m = 3, node 5 at depth 2 > floor(lg 3) = 1.
  EXPECT_EQ(gap_value(worked_state_x()), 1);
  EXPECT_EQ(check_legitimacy(worked_state_x()).gap, 1);
  // Chain 0 -> 1 -> 3 -> 7: depths 0..3 against floor(lg 4) = 2.
  HeapState chain(15);
  std::int64_t v = 0;
  for (std::size_t x : {0, 1, 3, 7}) chain[NodeId{x}].val = v++;
  EXPECT_EQ(gap_value(chain), 1);
}

TEST(GapTest, ZeroGapWithCoreConditionsImpliesBalance) {
  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    const auto st = generate({seed, 31, ArbitraryMode{}});
    const auto r = check_legitimacy(st);
    if (r.gap == 0 && r.core_legitimate()) {
      EXPECT_TRUE(r.legit_ii) << "seed " << seed;
    }
  }
}

TEST(BalanceParamsTest, Bounds) {
  const BalanceParams strict;
  EXPECT_EQ(strict.bound(1), 0);
  EXPECT_EQ(strict.bound(3), 1);
  EXPECT_EQ(strict.bound(4), 2);
  EXPECT_EQ(strict.bound(1023), 9);
  EXPECT_EQ(strict.bound(1024), 10);
  const BalanceParams loose{1, 3, 2};
  EXPECT_EQ(loose.bound(4), 4);     // 1 + 1.5 * 2
  EXPECT_EQ(loose.bound(8), 5);     // 1 + 4.5
  EXPECT_EQ(loose.bound(1024), 16);
}

TEST(AnalyzerOracleTest, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    const std::size_t k = 1 + seed % 15;
    const HeapState st =
        seed % 3 == 0 ? generate({seed, k, CorruptLegitimateMode{seed % (k + 1),
                                                                 1 + seed % 3}})
                      : generate({seed, k, ArbitraryMode{}});
    const auto r = check_legitimacy(st);
    const auto o = testing::brute_force(st);
    ASSERT_EQ(r.t_members, o.t) << "seed " << seed;
    ASSERT_EQ(r.s_members, o.s) << "seed " << seed;
    ASSERT_EQ(r.legit_i, o.legit_i) << "seed " << seed;
    ASSERT_EQ(r.legit_ii, o.legit_ii) << "seed " << seed;
    ASSERT_EQ(r.legit_iii, o.legit_iii) << "seed " << seed;
    ASSERT_EQ(r.legit_iv, o.legit_iv) << "seed " << seed;
    ASSERT_EQ(r.legitimate, o.legitimate()) << "seed " << seed;
    ASSERT_EQ(r.gap, o.gap) << "seed " << seed;
  }
}

TEST(AnalysisIoTest, SerializesFlagsAndBitmaps) {
  const auto doc = nlohmann::json::parse(to_json(check_legitimacy(worked_state_x())));
  EXPECT_EQ(doc["truncation_tree"], "1110011");
  EXPECT_EQ(doc["active_tree"], "1010010");
  EXPECT_EQ(doc["bag"], nlohmann::json({5, 8, 9}));
  EXPECT_EQ(doc["m"], 3);
  EXPECT_EQ(doc["gap"], 1);
  EXPECT_EQ(doc["legit_i"], false);
  EXPECT_EQ(doc["legitimate"], false);
}

}  // namespace
}  // namespace stabheap
