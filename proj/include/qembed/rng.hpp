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
#include <utility>

#include "qembed/complex_matrix.hpp"

namespace qembed {

// Deterministic, splittable randomness.  The generator is the Philox4x32-10
// counter-based block cipher keyed by the 64-bit seed; the 128-bit counter
// holds (stream_id, block index), so (seed, stream_id, counter) fully
// determines every draw, bit-exactly across platforms and runs.  Streams are
// value types: copy freely, never share a mutating stream across threads.
// Parallel work must derive one stream per trial via substream().
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double next_unit();       // [0, 1), 53-bit resolution
  double next_unit_open();  // (0, 1), never exactly 0 or 1

  // Box-Muller from the uniform stream: one pair of independent N(0,1)
  // draws per two uniforms, platform-independent.
  std::pair<double, double> next_gaussian_pair();
  double next_gaussian();
  Complex next_complex_gaussian();  // N(0,1) + i N(0,1)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t buffer_[2] = {0, 0};
  int available_ = 0;
};

// Deterministically derived independent stream for trial `index`.  Distinct
// indices give distinct streams; same inputs always give the same stream.
RngStream substream(const RngStream& root, std::uint64_t index);

// Accepts decimal or 0x-prefixed hexadecimal 64-bit seeds.
std::uint64_t parse_seed(const std::string& text);

}  // namespace qembed
