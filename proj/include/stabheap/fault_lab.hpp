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

// Deterministic construction of heap states, legitimate or not, plus field
// level fault injection and the JSON snapshot format.
//
// Snapshot document:
//
//   {"K": 3,
//    "nodes": [{"val": 5, "height": 1, "nextslot": 0, "toggle": "L"},
//              {"val": null, "height": 0, "nextslot": 3, "toggle": "R"},
//              ...]}
//
// `val` null encodes Absent. All integer fields are signed 64-bit and
// round-trip exactly.

#ifndef STABHEAP_FAULT_LAB_HPP_
#define STABHEAP_FAULT_LAB_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stabheap/heap_state.hpp"

namespace stabheap {

enum class Field : std::uint8_t { kVal, kHeight, kNextslot, kToggle };

struct FaultEdit {
  NodeId node;
  Field field = Field::kVal;
  std::optional<std::int64_t> raw;  // nullopt writes Absent; val only

  friend bool operator==(const FaultEdit&, const FaultEdit&) = default;
};

// Edits apply in order, so a later edit to the same field wins.
struct FaultSpec {
  std::vector<FaultEdit> edits;

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies every edit, or none: the spec is validated first and
// std::invalid_argument is thrown for an out-of-range node or an Absent
// written to a non-val field.
void inject(HeapState& state, const FaultSpec& spec);

struct LegitimateMode {
  std::size_t items = 0;
};
struct ArbitraryMode {};
struct CorruptLegitimateMode {
  std::size_t items = 0;
  std::size_t faults = 0;
};
using GenMode = std::variant<LegitimateMode, ArbitraryMode,
                             CorruptLegitimateMode>;

struct StateGenSpec {
  std::uint64_t seed = 0;
  std::size_t capacity = 1;
  GenMode mode = LegitimateMode{};
};

// Pure function of the spec. Throws std::invalid_argument if the requested
// item count exceeds the capacity.
HeapState generate(const StateGenSpec& spec);

// Draws from the adversarial pools used by generate(); exposed so experiments
// can corrupt states and pick insert arguments the same way.
Value random_val(std::mt19937_64& rng, std::size_t capacity);
std::int64_t random_field(std::mt19937_64& rng, std::size_t capacity);
FaultEdit random_edit(std::mt19937_64& rng, std::size_t capacity);

// A per-trial generator seeded from (seed, stream); streams are independent.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

std::string snapshot(const HeapState& state);
// Throws FormatError on malformed JSON, a non-positive K, a node list whose
// length differs from K, or a toggle other than "L"/"R".
HeapState restore(std::string_view document);

std::string to_json(const FaultSpec& spec);
// Document form: a JSON list of {"node": 1, "field": "height", "value": -5};
// "value": null writes Absent. Throws FormatError.
FaultSpec parse_fault_spec(std::string_view document);

}  // namespace stabheap

#endif  // STABHEAP_FAULT_LAB_HPP_
