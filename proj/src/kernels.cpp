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

#include "qembed/kernels.hpp"

#include <atomic>

#include "qembed/errors.hpp"

namespace qembed::kernels {
namespace {

std::atomic<const Backend*> g_active{nullptr};

bool cpu_supports_avx2() {
#if defined(QEMBED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend* pick_auto() {
  if (avx2_available()) return &avx2_backend();
  return &scalar_backend();
}

}  // namespace

bool avx2_compiled() {
#ifdef QEMBED_HAVE_AVX2
  return true;
#else
  return false;
#endif
}

bool avx2_available() { return avx2_compiled() && cpu_supports_avx2(); }

#ifndef QEMBED_HAVE_AVX2
const Backend& avx2_backend() {
  throw ArgumentError("avx2 kernels were not compiled into this binary");
}
#endif

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (b == nullptr) {
    b = pick_auto();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

void select(const std::string& name) {
  if (name == "auto") {
    g_active.store(pick_auto(), std::memory_order_release);
  } else if (name == "scalar") {
    g_active.store(&scalar_backend(), std::memory_order_release);
  } else if (name == "avx2") {
    if (!avx2_available()) {
      throw ArgumentError("avx2 kernels unavailable on this machine");
    }
    g_active.store(&avx2_backend(), std::memory_order_release);
  } else {
    throw ArgumentError("unknown kernel backend: " + name);
  }
}

}  // namespace qembed::kernels
