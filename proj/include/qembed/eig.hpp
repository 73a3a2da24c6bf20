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

#include "qembed/hermitian.hpp"

namespace qembed {

// Threshold below which an eigenvalue counts as zero when building
// positive-part and support projectors.
inline constexpr double kEigenvalueZeroTol = 1e-10;

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, matching order
};

// Cyclic Jacobi rotations; sweep cap 100, off-diagonal Frobenius tolerance
// 1e-12 * ||A||_2.  Throws NumericalFailure (with the reached residual) if
// the cap is hit.
Spectrum eig_hermitian(const HermitianOperator& a);

enum class SchattenP { one, two, inf };

double schatten_norm(const HermitianOperator& a, SchattenP p);

// Projector onto the eigenvectors with eigenvalue > 1e-10; eigenvalues in
// (-1e-10, 1e-10) count as zero and are excluded.
ComplexMatrix positive_part_projector(const HermitianOperator& a);

// Projector onto the span of eigenvectors with |eigenvalue| > threshold.
ComplexMatrix support_projector(const HermitianOperator& a,
                                double threshold = kEigenvalueZeroTol);

// Number of eigenvalues strictly above the threshold.
std::size_t positive_eigenvalue_count(const Spectrum& s,
                                      double threshold = kEigenvalueZeroTol);

}  // namespace qembed
