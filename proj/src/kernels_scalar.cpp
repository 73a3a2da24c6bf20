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

#include <algorithm>

namespace qembed::kernels {
namespace {

using Cx = std::complex<double>;

// Hand-written real/imag arithmetic: keeps the loops free of the libm
// complex-multiply helper and matches the vector backends' formula.
void gemm_nn_scalar(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                    std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, Cx(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    Cx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = a[i * k + l].real();
      const double ai = a[i * k + l].imag();
      const Cx* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] += Cx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

void gemm_nc_scalar(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                    std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const Cx* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const Cx* brow = b + j * k;
      double re = 0.0, im = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        const double xr = arow[l].real(), xi = arow[l].imag();
        const double yr = brow[l].real(), yi = brow[l].imag();
        // x * conj(y)
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
      }
      c[i * n + j] = Cx(re, im);
    }
  }
}

void gemm_cn_scalar(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                    std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, Cx(0.0, 0.0));
  for (std::size_t l = 0; l < k; ++l) {
    const Cx* arow = a + l * m;
    const Cx* brow = b + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      // conj(a[l][i])
      const double ar = arow[i].real();
      const double ai = -arow[i].imag();
      Cx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] += Cx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

double frob_sq_scalar(const Cx* x, std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

Cx dot_cc_scalar(const Cx* x, const Cx* y, std::size_t count) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return Cx(re, im);
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{"scalar",       gemm_nn_scalar, gemm_nc_scalar,
                               gemm_cn_scalar, frob_sq_scalar, dot_cc_scalar};
  return backend;
}

}  // namespace qembed::kernels
