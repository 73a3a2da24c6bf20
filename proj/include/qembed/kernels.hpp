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

#include <complex>
#include <cstddef>
#include <string>

namespace qembed::kernels {

// Data-parallel inner loops over row-major, interleaved complex<double>
// arrays.  Every entry point has a scalar reference implementation; on
// x86-64 an AVX2+FMA variant is compiled in and selected at runtime.  The
// two backends agree to rounding error and are equivalence-tested against
// each other and against a naive oracle.

// c (m x n) = a (m x k) * b (k x n)
using GemmNN = void (*)(std::complex<double>* c, const std::complex<double>* a,
                        const std::complex<double>* b, std::size_t m,
                        std::size_t k, std::size_t n);

// c (m x n) = a (m x k) * b^dagger, with b stored as (n x k)
using GemmNC = void (*)(std::complex<double>* c, const std::complex<double>* a,
                        const std::complex<double>* b, std::size_t m,
                        std::size_t k, std::size_t n);

// c (m x n) = a^dagger * b, with a stored as (k x m) and b as (k x n)
using GemmCN = void (*)(std::complex<double>* c, const std::complex<double>* a,
                        const std::complex<double>* b, std::size_t m,
                        std::size_t k, std::size_t n);

// sum_i |x_i|^2
using FrobSq = double (*)(const std::complex<double>* x, std::size_t count);

// sum_i conj(x_i) * y_i
using DotCC = std::complex<double> (*)(const std::complex<double>* x,
                                       const std::complex<double>* y,
                                       std::size_t count);

struct Backend {
  const char* name;
  GemmNN gemm_nn;
  GemmNC gemm_nc;
  GemmCN gemm_cn;
  FrobSq frob_sq;
  DotCC dot_cc;
};

const Backend& scalar_backend();

// True when the AVX2 variant was compiled into this binary.
bool avx2_compiled();
// True when it was compiled in and the running CPU supports it.
bool avx2_available();
// Valid only when avx2_compiled().
const Backend& avx2_backend();

// The backend all matrix operations route through.  Defaults to the best
// available ("auto").
const Backend& active();

// name: "auto", "scalar" or "avx2".  Throws ArgumentError when the request
// cannot be honoured on this machine.
void select(const std::string& name);

}  // namespace qembed::kernels
