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

#include <limits>
#include <string>

#include "json.hpp"
#include "stabheap/fault_lab.hpp"
#include "json_io.hpp"
#include "stabheap/analysis_io.hpp"

namespace stabheap {

using json = nlohmann::json;

std::int64_t json_int(const json& j, std::string_view what) {
  if (j.is_number_integer() && !j.is_number_unsigned()) {
    return j.get<std::int64_t>();
  }
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(
                 std::numeric_limits<std::int64_t>::max())) {
      return static_cast<std::int64_t>(u);
    }
  }
  throw FormatError(std::string(what) + " must be a signed 64-bit integer");
}

const json& json_field(const json& obj, const char* key) {
  if (!obj.is_object()) throw FormatError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

json state_to_json(const HeapState& state) {
  json nodes = json::array();
  for (const auto& rec : state.nodes()) {
    nodes.push_back({
        {"val", rec.val.has_item() ? json(rec.val.item()) : json(nullptr)},
        {"height", rec.height},
        {"nextslot", rec.nextslot},
        {"toggle", rec.toggle == Toggle::kLeft ? "L" : "R"},
    });
  }
  return {{"K", state.capacity()}, {"nodes", std::move(nodes)}};
}

HeapState state_from_json(const json& doc) {
  const std::int64_t k = json_int(json_field(doc, "K"), "K");
  if (k <= 0) throw FormatError("K must be positive");
  const json& nodes = json_field(doc, "nodes");
  if (!nodes.is_array() || nodes.size() != static_cast<std::size_t>(k)) {
    throw FormatError("nodes must be a list of exactly K records");
  }
  HeapState state(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& n = nodes[i];
    auto& rec = state[NodeId{i}];
    const json& val = json_field(n, "val");
    rec.val = val.is_null() ? Value::absent() : Value(json_int(val, "val"));
    rec.height = json_int(json_field(n, "height"), "height");
    rec.nextslot = json_int(json_field(n, "nextslot"), "nextslot");
    const json& t = json_field(n, "toggle");
    if (t == "L") {
      rec.toggle = Toggle::kLeft;
    } else if (t == "R") {
      rec.toggle = Toggle::kRight;
    } else {
      throw FormatError("toggle must be \"L\" or \"R\"");
    }
  }
  return state;
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

std::string snapshot(const HeapState& state) {
  return state_to_json(state).dump();
}

HeapState restore(std::string_view document) {
  return state_from_json(parse_document(document));
}

namespace {

constexpr const char* kFieldNames[] = {"val", "height", "nextslot", "toggle"};

}  // namespace

std::string to_json(const FaultSpec& spec) {
  json edits = json::array();
  for (const auto& e : spec.edits) {
    edits.push_back({{"node", e.node.index},
                     {"field", kFieldNames[static_cast<int>(e.field)]},
                     {"value", e.raw ? json(*e.raw) : json(nullptr)}});
  }
  return edits.dump();
}

FaultSpec parse_fault_spec(std::string_view document) {
  const json doc = parse_document(document);
  if (!doc.is_array()) throw FormatError("fault spec must be a JSON list");
  FaultSpec spec;
  for (const json& e : doc) {
    FaultEdit edit;
    const std::int64_t node = json_int(json_field(e, "node"), "node");
    if (node < 0) throw FormatError("node must be non-negative");
    edit.node = NodeId{static_cast<std::size_t>(node)};
    const json& field = json_field(e, "field");
    bool known = false;
    for (int f = 0; f < 4; ++f) {
      if (field == kFieldNames[f]) {
        edit.field = static_cast<Field>(f);
        known = true;
      }
    }
    if (!known) throw FormatError("unknown field name");
    const json& value = json_field(e, "value");
    if (!value.is_null()) edit.raw = json_int(value, "value");
    spec.edits.push_back(edit);
  }
  return spec;
}

}  // namespace stabheap

namespace stabheap {
namespace {

std::string bitmap(const std::vector<bool>& members) {
  std::string s(members.size(), '0');
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i]) s[i] = '1';
  }
  return s;
}

}  // namespace

std::string to_json(const AnalysisReport<std::int64_t>& report) {
  json doc = {
      {"truncation_tree", bitmap(report.t_members)},
      {"active_tree", bitmap(report.s_members)},
      {"bag", report.bag},
      {"t_size", report.t_size},
      {"m", report.m},
      {"t_height", report.t_height},
      {"legit_i", report.legit_i},
      {"legit_ii", report.legit_ii},
      {"legit_iii", report.legit_iii},
      {"legit_iv", report.legit_iv},
      {"legitimate", report.legitimate},
      {"gap", report.gap},
  };
  return doc.dump();
}

}  // namespace stabheap
