// Copyright 2026 The qembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qembed/report.hpp"

#include <cstdio>

namespace qembed {

Json ExperimentReport::to_json(bool include_trials) const {
  Json out = Json::object();
  out["schema"] = kReportSchema;
  out["experiment_id"] = experiment_id;
  out["params"] = params;
  out["seed"] = Json{{"seed", u64_string(seed)}, {"stream_id", u64_string(stream_id)}};
  out["bounds"] = bounds;
  out["aggregates"] = aggregates;
  if (include_trials) out["trials"] = trials;
  Json verdict_list = Json::array();
  for (const auto& v : verdicts) {
    Json item = Json::object();
    item["name"] = v.name;
    item["status"] = v.status;
    if (!v.details.is_null()) item["details"] = v.details;
    verdict_list.push_back(std::move(item));
  }
  out["verdicts"] = std::move(verdict_list);
  out["runtime_seconds"] = runtime_seconds;
  return out;
}

std::string ExperimentReport::to_csv() const {
  std::string out = csv_line(csv_header);
  for (const auto& row : csv_rows) out += csv_line(row);
  return out;
}

bool ExperimentReport::any_fail() const {
  for (const auto& v : verdicts)
    if (v.status == "fail") return true;
  return false;
}

int ExperimentReport::exit_code() const { return any_fail() ? 2 : 0; }

std::string u64_string(std::uint64_t value) { return std::to_string(value); }

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

}  // namespace qembed
