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

#ifndef STABHEAP_STEP_BOUNDS_HPP_
#define STABHEAP_STEP_BOUNDS_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace stabheap {

// Per-operation node-visit budget C0 + C1 * levels.
struct StepBound {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  constexpr std::uint64_t for_levels(std::uint64_t levels) const {
    return c0 + c1 * levels;
  }
  // floor(lg K) + 1 == ceil(lg(K + 1)) levels: any state of a capacity-K tree.
  constexpr std::uint64_t for_capacity(std::size_t capacity) const {
    return for_levels(std::bit_width(capacity));
  }
  // ceil(lg(n + 1)) levels, at least one: a legitimate heap holding n items.
  constexpr std::uint64_t for_content(std::size_t n) const {
    return for_levels(std::max<std::uint64_t>(1, std::bit_width(n)));
  }

  friend constexpr bool operator==(const StepBound&, const StepBound&) = default;
};

// Frozen from two pilot runs (`stabheap pilot`, seeds 42 and 7) over trial and
// legitimate states at K in {15, 255, 4095, 65535}. The runs proposed
// (7, 30) and (15, 30); the larger proposal, rounded up to a power of two
// per constant.
inline constexpr StepBound kStepBound{16, 32};

// Operations-to-legitimacy per unit of m. The pilot's worst ratio over
// K in {63, 255, 1023} was 1.0; frozen at that plus one.
inline constexpr std::uint64_t kConvergenceFactor = 2;

}  // namespace stabheap

#endif  // STABHEAP_STEP_BOUNDS_HPP_
