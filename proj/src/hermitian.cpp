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

#include "qembed/hermitian.hpp"

#include <cmath>

#include "qembed/errors.hpp"
#include "qembed/kernels.hpp"

namespace qembed {

HermitianOperator::HermitianOperator(const ComplexMatrix& a) {
  if (!a.is_square()) throw ArgumentError("HermitianOperator: matrix not square");
  if (!a.all_finite()) throw ArgumentError("HermitianOperator: non-finite entries");
  const std::size_t d = a.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  if (worst > kHermitianTol) {
    throw ArgumentError("HermitianOperator: ||A - A^dagger||_max = " +
                        std::to_string(worst) + " exceeds 1e-10");
  }
  matrix_ = ComplexMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    matrix_(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      matrix_(i, j) = z;
      matrix_(j, i) = std::conj(z);
    }
  }
}

PureState::PureState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw ArgumentError("PureState: empty amplitude vector");
  const double norm = std::sqrt(
      kernels::active().frob_sq(amplitudes_.data(), amplitudes_.size()));
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormTol) {
    throw ArgumentError("PureState: norm " + std::to_string(norm) +
                        " not within 1e-12 of 1");
  }
}

PureState PureState::basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ArgumentError("basis_vector: index out of range");
  std::vector<Complex> amps(dim, Complex(0.0, 0.0));
  amps[index] = Complex(1.0, 0.0);
  return PureState(std::move(amps));
}

ComplexMatrix PureState::projector() const {
  const std::size_t d = dim();
  ComplexMatrix p(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
  return p;
}

double PureState::expectation(const ComplexMatrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw ArgumentError("expectation: dimension mismatch");
  }
  const std::vector<Complex> v = op.multiply_vector(amplitudes_);
  return kernels::active().dot_cc(amplitudes_.data(), v.data(), dim()).real();
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ArgumentError("inner_product: dimension mismatch");
  return kernels::active().dot_cc(a.amplitudes().data(), b.amplitudes().data(),
                                  a.dim());
}

}  // namespace qembed
