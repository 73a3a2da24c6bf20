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
#include <vector>

namespace qembed {

using Complex = std::complex<double>;

// Dense row-major complex matrix: the substrate every operator, state and
// channel in the library is built on.  Values are immutable in spirit; all
// operations return fresh matrices and never mutate their inputs.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  Complex* data() { return entries_.data(); }
  const Complex* data() const { return entries_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    lhs *= scale;
    return lhs;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    rhs *= scale;
    return rhs;
  }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;         // A * B
  ComplexMatrix multiply_adjoint(const ComplexMatrix& rhs) const;  // A * B^dagger
  ComplexMatrix adjoint_multiply(const ComplexMatrix& rhs) const;  // A^dagger * B

  ComplexMatrix adjoint() const;
  std::vector<Complex> multiply_vector(const std::vector<Complex>& v) const;

  Complex trace() const;
  double frobenius_norm_sq() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  // One line per row, entries formatted "re+imi" and separated by tabs.
  // This is the format behind the CLI's --dump flag.
  std::string debug_dump() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// Kronecker product with the row-major convention
// (A⊗B)(i_a*rows_b + i_b, j_a*cols_b + j_b) = A(i_a, j_a) * B(i_b, j_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// The unitary exchanging two dim-dimensional registers,
// sum_{ij} |i><j| ⊗ |j><i|.  Rejects dim = 0.
ComplexMatrix swap_operator(std::size_t dim);

// Discards the second (dim_b-sized) subsystem of a (dim_a*dim_b)-square
// operator.  Trace- and Hermiticity-preserving.
ComplexMatrix partial_trace_b(const ComplexMatrix& x, std::size_t dim_a,
                              std::size_t dim_b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(A*B) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qembed
