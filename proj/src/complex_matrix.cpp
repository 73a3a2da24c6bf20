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

#include "qembed/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qembed/errors.hpp"
#include "qembed/kernels.hpp"

namespace qembed {
namespace {

void require(bool cond, const char* message) {
  if (!cond) throw ArgumentError(message);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(entries_.size() == rows_ * cols_,
          "entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in +=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in -=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  require(cols_ == rhs.rows_, "shape mismatch in matrix product");
  ComplexMatrix out(rows_, rhs.cols_);
  kernels::active().gemm_nn(out.data(), data(), rhs.data(), rows_, cols_,
                            rhs.cols_);
  return out;
}

ComplexMatrix ComplexMatrix::multiply_adjoint(const ComplexMatrix& rhs) const {
  require(cols_ == rhs.cols_, "shape mismatch in A*B^dagger");
  ComplexMatrix out(rows_, rhs.rows_);
  kernels::active().gemm_nc(out.data(), data(), rhs.data(), rows_, cols_,
                            rhs.rows_);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint_multiply(const ComplexMatrix& rhs) const {
  require(rows_ == rhs.rows_, "shape mismatch in A^dagger*B");
  ComplexMatrix out(cols_, rhs.cols_);
  kernels::active().gemm_cn(out.data(), data(), rhs.data(), cols_, rows_,
                            rhs.cols_);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

std::vector<Complex> ComplexMatrix::multiply_vector(
    const std::vector<Complex>& v) const {
  require(v.size() == cols_, "vector length mismatch");
  std::vector<Complex> out(rows_);
  kernels::active().gemm_nn(out.data(), data(), v.data(), rows_, cols_, 1);
  return out;
}

Complex ComplexMatrix::trace() const {
  require(is_square(), "trace of a non-square matrix");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm_sq() const {
  return kernels::active().frob_sq(data(), entries_.size());
}

double ComplexMatrix::frobenius_norm() const {
  return std::sqrt(frobenius_norm_sq());
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

std::string ComplexMatrix::debug_dump() const {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Complex& z = (*this)(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
      out += buf;
      out += (j + 1 < cols_) ? '\t' : '\n';
    }
    if (cols_ == 0) out += '\n';
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex scale = a(ia, ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        const std::size_t row = ia * b.rows() + ib;
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(row, ja * b.cols() + jb) = scale * b(ib, jb);
        }
      }
    }
  }
  return out;
}

ComplexMatrix swap_operator(std::size_t dim) {
  if (dim == 0) throw ArgumentError("swap_operator: dim must be >= 1");
  ComplexMatrix f(dim * dim, dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      f(i * dim + j, j * dim + i) = Complex(1.0, 0.0);
  return f;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& x, std::size_t dim_a,
                              std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0 || !x.is_square() ||
      x.rows() != dim_a * dim_b) {
    throw ArgumentError("partial_trace_b: operator must be (dim_a*dim_b)-square");
  }
  ComplexMatrix out(dim_a, dim_a);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t c = 0; c < dim_a; ++c) {
      Complex acc(0.0, 0.0);
      for (std::size_t b = 0; b < dim_b; ++b)
        acc += x(a * dim_b + b, c * dim_b + b);
      out(a, c) = acc;
    }
  return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ArgumentError("trace_product: shape mismatch");
  }
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  return acc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("max_abs_diff: shape mismatch");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

}  // namespace qembed
