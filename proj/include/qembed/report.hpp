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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qembed {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qembed-report/1";

// Verdict statuses: "pass", "fail", or the advisory
// "outside-theorem-scope" (parameters outside the hypothesis of the bound
// being checked; the run still reports its numbers).
struct Verdict {
  std::string name;
  std::string status;
  Json details;  // optional extra numbers; may be null
};

// Everything a CLI invocation persists.  JSON key order is fixed: schema,
// experiment_id, params, seed, bounds, aggregates, [trials], verdicts,
// runtime_seconds.  With the same seed and flags the serialised bytes are
// identical run to run; runtime_seconds is 0.0 unless wall-clock timing is
// explicitly requested, so timing noise never breaks reproducibility.
struct ExperimentReport {
  std::string experiment_id;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  Json bounds = Json::object();
  Json aggregates = Json::object();
  Json trials = Json::array();
  std::vector<Verdict> verdicts;
  double runtime_seconds = 0.0;

  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  Json to_json(bool include_trials) const;
  std::string to_csv() const;

  bool any_fail() const;
  // 0 when every verdict passes, 2 otherwise.
  int exit_code() const;
};

// Lossless u64 echo for JSON (64-bit values do not fit JSON numbers).
std::string u64_string(std::uint64_t value);

// Shortest round-trip double formatting used in CSV cells.
std::string format_double(double value);

std::string csv_escape(const std::string& field);
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace qembed
