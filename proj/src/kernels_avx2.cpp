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

// AVX2+FMA variants.  This translation unit is only part of the build on
// x86-64 and is compiled with -mavx2 -mfma; callers must go through the
// runtime dispatcher in kernels.cpp.

#include "qembed/kernels.hpp"

#ifdef QEMBED_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>

namespace qembed::kernels {
namespace {

using Cx = std::complex<double>;

// Interleaved complex layout: a __m256d holds [re0, im0, re1, im1].
// (alpha_re + i*alpha_im) * b is computed as
//   fmaddsub(alpha_re, b, alpha_im * swap(b))
// which yields re = ar*br - ai*bi on even lanes, im = ar*bi + ai*br on odd.

// crow += alpha * brow, length n complex entries.
inline void axpy_complex(double* crow, double ar, double ai,
                         const double* brow, std::size_t n) {
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set1_pd(ai);
  std::size_t j = 0;
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p, j += 4) {
    const __m256d b = _mm256_loadu_pd(brow + j);
    const __m256d bs = _mm256_permute_pd(b, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(var, b, _mm256_mul_pd(vai, bs));
    _mm256_storeu_pd(crow + j, _mm256_add_pd(_mm256_loadu_pd(crow + j), prod));
  }
  if (n & 1) {
    const double br = brow[j], bi = brow[j + 1];
    crow[j] += ar * br - ai * bi;
    crow[j + 1] += ar * bi + ai * br;
  }
}

void gemm_nn_avx2(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                  std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, Cx(0.0, 0.0));
  double* cd = reinterpret_cast<double*>(c);
  const double* bd = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const Cx alpha = a[i * k + l];
      axpy_complex(crow, alpha.real(), alpha.imag(), bd + 2 * l * n, n);
    }
  }
}

void gemm_cn_avx2(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                  std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, Cx(0.0, 0.0));
  double* cd = reinterpret_cast<double*>(c);
  const double* bd = reinterpret_cast<const double*>(b);
  for (std::size_t l = 0; l < k; ++l) {
    const double* brow = bd + 2 * l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const Cx alpha = a[l * m + i];
      axpy_complex(cd + 2 * i * n, alpha.real(), -alpha.imag(), brow, n);
    }
  }
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// Accumulates sum(x*y) into acc1 and sum(x*swap(y)) into acc2; the caller
// extracts real/imag combinations from the lane sums.
inline void conj_dot_accumulate(const double* x, const double* y, std::size_t n,
                                double lane1[4], double lane2[4]) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t j = 0;
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p, j += 4) {
    const __m256d xv = _mm256_loadu_pd(x + j);
    const __m256d yv = _mm256_loadu_pd(y + j);
    const __m256d ys = _mm256_permute_pd(yv, 0x5);
    acc1 = _mm256_fmadd_pd(xv, yv, acc1);
    acc2 = _mm256_fmadd_pd(xv, ys, acc2);
  }
  _mm256_storeu_pd(lane1, acc1);
  _mm256_storeu_pd(lane2, acc2);
  if (n & 1) {
    lane1[0] += x[j] * y[j];
    lane1[1] += x[j + 1] * y[j + 1];
    lane2[0] += x[j] * y[j + 1];
    lane2[1] += x[j + 1] * y[j];
  }
}

void gemm_nc_avx2(Cx* c, const Cx* a, const Cx* b, std::size_t m,
                  std::size_t k, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = ad + 2 * i * k;
    for (std::size_t j = 0; j < n; ++j) {
      double l1[4], l2[4];
      conj_dot_accumulate(arow, bd + 2 * j * k, k, l1, l2);
      // x * conj(y): re = xr*yr + xi*yi, im = xi*yr - xr*yi
      const double re = (l1[0] + l1[1]) + (l1[2] + l1[3]);
      const double im = (l2[1] - l2[0]) + (l2[3] - l2[2]);
      c[i * n + j] = Cx(re, im);
    }
  }
}

double frob_sq_avx2(const Cx* x, std::size_t count) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t total = 2 * count;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= total; j += 4) {
    const __m256d v = _mm256_loadu_pd(xd + j);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double result = hsum(acc);
  for (; j < total; ++j) result += xd[j] * xd[j];
  return result;
}

Cx dot_cc_avx2(const Cx* x, const Cx* y, std::size_t count) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double l1[4], l2[4];
  conj_dot_accumulate(xd, yd, count, l1, l2);
  // conj(x) * y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
  const double re = (l1[0] + l1[1]) + (l1[2] + l1[3]);
  const double im = (l2[0] - l2[1]) + (l2[2] - l2[3]);
  return Cx(re, im);
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{"avx2",       gemm_nn_avx2, gemm_nc_avx2,
                               gemm_cn_avx2, frob_sq_avx2, dot_cc_avx2};
  return backend;
}

}  // namespace qembed::kernels

#endif  // QEMBED_HAVE_AVX2
