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

#include "qembed/density.hpp"

#include <cmath>

#include "qembed/errors.hpp"

namespace qembed {
namespace {

HermitianOperator clean_state(const HermitianOperator& op) {
  const double tr = op.real_trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ArgumentError("DensityMatrix: trace " + std::to_string(tr) +
                        " not within 1e-9 of 1");
  }
  Spectrum s = eig_hermitian(op);
  double clipped_sum = 0.0;
  for (double& lam : s.eigenvalues) {
    if (lam < -kPsdTol) {
      throw ArgumentError("DensityMatrix: eigenvalue " + std::to_string(lam) +
                          " below -1e-9");
    }
    if (lam < 0.0) lam = 0.0;
    clipped_sum += lam;
  }
  if (clipped_sum <= 0.0) {
    throw ArgumentError("DensityMatrix: zero spectrum after clipping");
  }

  // Rebuild Q diag(lambda/sum) Q^dagger.
  const std::size_t d = op.dim();
  ComplexMatrix scaled(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    const double lam = s.eigenvalues[col] / clipped_sum;
    for (std::size_t i = 0; i < d; ++i)
      scaled(i, col) = lam * s.eigenvectors(i, col);
  }
  return HermitianOperator(scaled.multiply_adjoint(s.eigenvectors));
}

}  // namespace

DensityMatrix::DensityMatrix(const HermitianOperator& op,
                             std::optional<std::size_t> rank_hint)
    : op_(clean_state(op)), rank_hint_(rank_hint) {}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(HermitianOperator(psi.projector()), 1);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw ArgumentError("maximally_mixed: dim must be >= 1");
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= Complex(1.0 / static_cast<double>(dim), 0.0);
  return DensityMatrix(HermitianOperator(m), dim);
}

double DensityMatrix::purity() const {
  return matrix().frobenius_norm_sq();
}

HermitianOperator state_difference(const DensityMatrix& rho,
                                   const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ArgumentError("state_difference: dimension mismatch");
  }
  return HermitianOperator(rho.matrix() - sigma.matrix());
}

}  // namespace qembed
