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

#include <optional>

#include "qembed/lemmas.hpp"
#include "qembed/report.hpp"

namespace qembed {

// Drivers that run each inequality/identity verifier at its canonical
// parameters and emit one JSON record per check:
//   {lemma_id, params, seed, estimate, std_error, bound, verdict}.
// Each lemma draws from a fixed substream of the root seed, so running a
// single lemma reproduces exactly the records it contributes to "all".

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  std::optional<std::size_t> dim;      // overrides the primary dimension
  std::optional<std::size_t> samples;  // overrides the sample count
};

struct LemmaRecord {
  std::string lemma_id;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  Json estimate;
  Json std_error;
  Json bound;
  std::string verdict;  // "pass" or "fail"
};

Json lemma_record_to_json(const LemmaRecord& record);

// The known lemma ids, in the order "all" runs them.
const std::vector<std::string>& lemma_ids();

// lemma: one of lemma_ids() or "all".
std::vector<LemmaRecord> run_verify(const std::string& lemma,
                                    const VerifyOptions& options);

}  // namespace qembed
