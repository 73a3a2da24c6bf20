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

#include "qembed/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "qembed/errors.hpp"

namespace qembed {
namespace {

// Philox4x32 round constants (multipliers and Weyl key increments).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t next[4] = {hi1 ^ ctr[1] ^ key[0], lo1,
                                 hi0 ^ ctr[3] ^ key[1], lo0};
  ctr[0] = next[0];
  ctr[1] = next[1];
  ctr[2] = next[2];
  ctr[3] = next[3];
}

// 10-round Philox4x32 applied to counter (block, stream) under key (seed).
inline void philox_block(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t block, std::uint32_t out[4]) {
  std::uint32_t ctr[4] = {
      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    philox_round(ctr, key);
  }
  out[0] = ctr[0];
  out[1] = ctr[1];
  out[2] = ctr[2];
  out[3] = ctr[3];
}

// SplitMix64 finalizer; used to mix stream ids when deriving substreams.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() {
  std::uint32_t words[4];
  philox_block(seed_, stream_id_, block_++, words);
  buffer_[0] = (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
  buffer_[1] = (static_cast<std::uint64_t>(words[3]) << 32) | words[2];
  available_ = 2;
}

std::uint64_t RngStream::next_u64() {
  if (available_ == 0) refill();
  return buffer_[--available_];
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_unit_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> RngStream::next_gaussian_pair() {
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RngStream::next_gaussian() { return next_gaussian_pair().first; }

Complex RngStream::next_complex_gaussian() {
  const auto [re, im] = next_gaussian_pair();
  return Complex(re, im);
}

RngStream substream(const RngStream& root, std::uint64_t index) {
  const std::uint64_t derived =
      mix64(root.stream_id() + 0x9E3779B97F4A7C15ull * (index + 1));
  return RngStream(root.seed(), derived);
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) throw ArgumentError("empty seed");
  int base = 10;
  std::size_t start = 0;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    start = 2;
  }
  std::uint64_t value = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (base == 16 && c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (base == 16 && c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw ArgumentError("invalid seed: " + text);
    }
    value = value * base + static_cast<std::uint64_t>(digit);
  }
  return value;
}

}  // namespace qembed
