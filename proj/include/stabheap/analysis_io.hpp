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

#ifndef STABHEAP_ANALYSIS_IO_HPP_
#define STABHEAP_ANALYSIS_IO_HPP_

#include <cstdint>
#include <string>

#include "stabheap/analyzer.hpp"

namespace stabheap {

// Membership sets are written as bitmaps: character i is '1' iff node i is a
// member.
std::string to_json(const AnalysisReport<std::int64_t>& report);

}  // namespace stabheap

#endif  // STABHEAP_ANALYSIS_IO_HPP_
