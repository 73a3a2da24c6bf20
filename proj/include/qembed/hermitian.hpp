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

#include <vector>

#include "qembed/complex_matrix.hpp"

namespace qembed {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kUnitNormTol = 1e-12;

// A square operator checked against ||A - A^dagger||_max <= 1e-10 at
// construction and stored exactly Hermitized as (A + A^dagger)/2, so
// downstream code never re-checks symmetry.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& a);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  double real_trace() const { return matrix_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a,
                                     const HermitianOperator& b) {
    return HermitianOperator(a.matrix_ + b.matrix_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a,
                                     const HermitianOperator& b) {
    return HermitianOperator(a.matrix_ - b.matrix_);
  }
  friend HermitianOperator operator*(double scale, const HermitianOperator& a) {
    return HermitianOperator(Complex(scale, 0.0) * a.matrix_);
  }

 private:
  ComplexMatrix matrix_;
};

// Unit vector in C^d; the constructor rejects vectors whose Euclidean norm
// is more than 1e-12 away from 1.
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  static PureState basis_vector(std::size_t dim, std::size_t index);

  ComplexMatrix projector() const;
  // Real part of <psi|op|psi> (exact for Hermitian op).
  double expectation(const ComplexMatrix& op) const;

 private:
  std::vector<Complex> amplitudes_;
};

Complex inner_product(const PureState& a, const PureState& b);

}  // namespace qembed
