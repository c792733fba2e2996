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

// JSON helpers shared by the library's document formats. Not installed.

#ifndef STABHEAP_SRC_JSON_IO_HPP_
#define STABHEAP_SRC_JSON_IO_HPP_

#include <cstdint>
#include <string_view>

#include "json.hpp"
#include "stabheap/heap_state.hpp"

namespace stabheap {

std::int64_t json_int(const nlohmann::json& j, std::string_view what);
const nlohmann::json& json_field(const nlohmann::json& obj, const char* key);
nlohmann::json parse_document(std::string_view document);

nlohmann::json state_to_json(const HeapState& state);
HeapState state_from_json(const nlohmann::json& doc);

}  // namespace stabheap

#endif  // STABHEAP_SRC_JSON_IO_HPP_
