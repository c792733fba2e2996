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

#include "stabheap/fault_lab.hpp"

#include <bit>
#include <limits>
#include <string>
#include <type_traits>

#include "stabheap/heap.hpp"

namespace stabheap {
namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Boundary-heavy integer pool shared by every corruptible field.
std::int64_t boundary_int(std::mt19937_64& rng, std::size_t capacity) {
  const auto k = static_cast<std::int64_t>(capacity);
  switch (pick(rng, 0, 11)) {
    case 0: return kMin;
    case 1: return kMax;
    case 2: return -1;
    case 3: return 0;
    case 4: return 1;
    case 5: return k - 1;
    case 6: return k;
    case 7: return k + 1;
    case 8: return static_cast<std::int64_t>(rng());
    case 9: return pick(rng, -k, -1);
    case 10: return pick(rng, 0, std::bit_width(capacity) + 2);
    default: return pick(rng, 0, 2 * k);
  }
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Value random_val(std::mt19937_64& rng, std::size_t capacity) {
  if (pick(rng, 0, 7) == 0) return Value::absent();
  return boundary_int(rng, capacity);
}

std::int64_t random_field(std::mt19937_64& rng, std::size_t capacity) {
  return boundary_int(rng, capacity);
}

FaultEdit random_edit(std::mt19937_64& rng, std::size_t capacity) {
  FaultEdit e;
  e.node = NodeId{static_cast<std::size_t>(
      pick(rng, 0, static_cast<std::int64_t>(capacity) - 1))};
  e.field = static_cast<Field>(pick(rng, 0, 3));
  switch (e.field) {
    case Field::kVal:
      e.raw = random_val(rng, capacity).as_optional();
      break;
    case Field::kToggle:
      e.raw = pick(rng, 0, 1);
      break;
    default:
      e.raw = random_field(rng, capacity);
  }
  return e;
}

void inject(HeapState& state, const FaultSpec& spec) {
  for (const auto& e : spec.edits) {
    if (!state.contains(e.node)) {
      throw std::invalid_argument("fault edit names node " +
                                  std::to_string(e.node.index) +
                                  " outside capacity " +
                                  std::to_string(state.capacity()));
    }
    if (e.field != Field::kVal && !e.raw) {
      throw std::invalid_argument("Absent is only a legal val");
    }
  }
  for (const auto& e : spec.edits) {
    auto& rec = state[e.node];
    switch (e.field) {
      case Field::kVal:
        rec.val = e.raw ? Value(*e.raw) : Value::absent();
        break;
      case Field::kHeight:
        rec.height = *e.raw;
        break;
      case Field::kNextslot:
        rec.nextslot = *e.raw;
        break;
      case Field::kToggle:
        rec.toggle = toggle_from_raw(*e.raw);
        break;
    }
  }
}

namespace {

HeapState legitimate_state(std::mt19937_64& rng, std::size_t capacity,
                           std::size_t items) {
  if (items > capacity) {
    throw std::invalid_argument("cannot place " + std::to_string(items) +
                                " items in capacity " +
                                std::to_string(capacity));
  }
  StabilizingHeap heap(capacity);
  // Narrow range so duplicates show up.
  const auto span = static_cast<std::int64_t>(2 * items + 8);
  for (std::size_t i = 0; i < items; ++i) {
    heap.insert(pick(rng, -span, span));
  }
  return heap.state();
}

}  // namespace

HeapState generate(const StateGenSpec& spec) {
  auto rng = make_rng(spec.seed, spec.capacity);
  return std::visit(
      [&](const auto& mode) -> HeapState {
        using M = std::decay_t<decltype(mode)>;
        if constexpr (std::is_same_v<M, LegitimateMode>) {
          return legitimate_state(rng, spec.capacity, mode.items);
        } else if constexpr (std::is_same_v<M, ArbitraryMode>) {
          HeapState state(spec.capacity);
          for (auto& rec : state.nodes()) {
            rec.val = random_val(rng, spec.capacity);
            rec.height = random_field(rng, spec.capacity);
            rec.nextslot = random_field(rng, spec.capacity);
            rec.toggle = toggle_from_raw(pick(rng, 0, 1));
          }
          return state;
        } else {
          HeapState state = legitimate_state(rng, spec.capacity, mode.items);
          FaultSpec faults;
          for (std::size_t i = 0; i < mode.faults; ++i) {
            faults.edits.push_back(random_edit(rng, spec.capacity));
          }
          inject(state, faults);
          return state;
        }
      },
      spec.mode);
}

}  // namespace stabheap
