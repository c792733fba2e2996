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

#include <sstream>
#include <string>

#include "json.hpp"
#include "json_io.hpp"
#include "stabheap/experiments.hpp"

namespace stabheap {
namespace {

using json = nlohmann::json;

std::uint64_t non_negative(const json& j, const char* what) {
  const std::int64_t v = json_int(j, what);
  if (v < 0) throw FormatError(std::string(what) + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_config(std::string_view document,
                              ExperimentConfig base) {
  const json doc = parse_document(document);
  if (!doc.is_object()) throw FormatError("config must be a JSON object");
  ExperimentConfig c = std::move(base);
  for (const auto& [key, v] : doc.items()) {
    if (key == "seed") {
      if (!v.is_number_integer()) throw FormatError("seed must be an integer");
      c.seed = v.is_number_unsigned() ? v.get<std::uint64_t>()
                                      : static_cast<std::uint64_t>(
                                            v.get<std::int64_t>());
    } else if (key == "capacity") {
      c.capacity = non_negative(v, "capacity");
      if (c.capacity == 0) throw FormatError("capacity must be positive");
    } else if (key == "trials") {
      c.trials = non_negative(v, "trials");
    } else if (key == "ops") {
      c.ops = non_negative(v, "ops");
    } else if (key == "op_mix") {
      if (!v.is_number()) throw FormatError("op_mix must be a number");
      c.insert_probability = v.get<double>();
      if (!(c.insert_probability >= 0 && c.insert_probability <= 1)) {
        throw FormatError("op_mix must lie in [0, 1]");
      }
    } else if (key == "format") {
      const auto s = v.is_string() ? v.get<std::string>() : "";
      if (s == "csv") {
        c.format = ReportFormat::kCsv;
      } else if (s == "text") {
        c.format = ReportFormat::kText;
      } else {
        throw FormatError("format must be \"csv\" or \"text\"");
      }
    } else if (key == "out") {
      if (!v.is_string()) throw FormatError("out must be a string");
      c.out_path = v.get<std::string>();
    } else if (key == "strawman") {
      const auto s = v.is_string() ? v.get<std::string>() : "";
      if (s == "none") {
        c.strawman = Strawman::kNone;
      } else if (s == "always-fail") {
        c.strawman = Strawman::kAlwaysFail;
      } else if (s == "reset") {
        c.strawman = Strawman::kReset;
      } else {
        throw FormatError("strawman must be none, always-fail or reset");
      }
    } else if (key == "a") {
      c.params.a = json_int(v, "a");
    } else if (key == "b_num") {
      c.params.b_num = json_int(v, "b_num");
    } else if (key == "b_den") {
      c.params.b_den = json_int(v, "b_den");
      if (c.params.b_den <= 0) throw FormatError("b_den must be positive");
    } else if (key == "c0") {
      c.bound.c0 = non_negative(v, "c0");
    } else if (key == "c1") {
      c.bound.c1 = non_negative(v, "c1");
    } else if (key == "mixed_states") {
      if (!v.is_boolean()) throw FormatError("mixed_states must be a boolean");
      c.mixed_states = v.get<bool>();
    } else {
      throw FormatError("unknown config key \"" + key + "\"");
    }
  }
  return c;
}

std::string Report::render(ReportFormat format) const {
  if (format == ReportFormat::kText) {
    json doc;
    doc["experiment"] = experiment;
    doc["passed"] = passed;
    json summ = json::object();
    for (const auto& [k, v] : summary) summ[k] = v;
    doc["summary"] = summ;
    json table = json::array();
    for (const auto& row : rows) {
      json r = json::object();
      for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
        r[columns[i]] = row[i];
      }
      table.push_back(std::move(r));
    }
    doc["rows"] = std::move(table);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << csv_cell(columns[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_cell(row[i]);
    }
    out << '\n';
  }
  out << "# experiment," << csv_cell(experiment) << '\n';
  for (const auto& [k, v] : summary) {
    out << "# " << csv_cell(k) << ',' << csv_cell(v) << '\n';
  }
  out << "# passed," << (passed ? "1" : "0") << '\n';
  return out.str();
}

}  // namespace stabheap
