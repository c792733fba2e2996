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

#ifndef STABHEAP_ITEM_VALUE_HPP_
#define STABHEAP_ITEM_VALUE_HPP_

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>

namespace stabheap {

// Position of a slot in the implicit tree. Children and parent are computed
// from the index, never stored, so a fault cannot redirect them.
struct NodeId {
  std::size_t index = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
  friend std::ostream& operator<<(std::ostream& os, NodeId id) {
    return os << id.index;
  }
};

inline constexpr NodeId kRoot{0};

enum class Side : std::uint8_t { kLeft, kRight };

// One bit of path steering state. Raw integers written by a fault are folded
// onto the two legal values, so a toggle is never invalid.
enum class Toggle : std::uint8_t { kLeft, kRight };

constexpr Toggle toggle_from_raw(std::int64_t raw) {
  return (raw & 1) != 0 ? Toggle::kRight : Toggle::kLeft;
}

constexpr std::int64_t to_raw(Toggle t) { return t == Toggle::kRight ? 1 : 0; }

// A slot value: either an item or Absent. Absent orders above every item and
// equal to itself.
template <std::totally_ordered T>
class ItemValue {
 public:
  using value_type = T;

  constexpr ItemValue() = default;
  constexpr ItemValue(T item) : item_(std::move(item)) {}  // NOLINT

  static constexpr ItemValue absent() { return ItemValue(); }

  constexpr bool is_absent() const { return !item_.has_value(); }
  constexpr bool has_item() const { return item_.has_value(); }
  constexpr const T& item() const { return *item_; }
  constexpr const std::optional<T>& as_optional() const { return item_; }

  friend constexpr bool operator==(const ItemValue& a, const ItemValue& b) {
    return a.item_ == b.item_;
  }

  friend constexpr std::weak_ordering operator<=>(const ItemValue& a,
                                                  const ItemValue& b) {
    if (a.is_absent() || b.is_absent()) {
      return static_cast<int>(a.is_absent()) <=>
             static_cast<int>(b.is_absent());
    }
    if (a.item() < b.item()) return std::weak_ordering::less;
    if (b.item() < a.item()) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

  friend std::ostream& operator<<(std::ostream& os, const ItemValue& v) {
    if (v.is_absent()) return os << "Absent";
    return os << v.item();
  }

 private:
  std::optional<T> item_;
};

}  // namespace stabheap

#endif  // STABHEAP_ITEM_VALUE_HPP_
