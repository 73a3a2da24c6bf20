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

#include "qembed/density.hpp"
#include "qembed/rng.hpp"

namespace qembed {

inline constexpr double kIsometryTol = 1e-10;

// Norm-preserving map C^{dim_in} -> C^{dim_out}; V^dagger V = I within 1e-10.
struct Isometry {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix matrix;  // dim_out x dim_in
};

// Validates the isometry invariants and wraps the matrix.
Isometry make_isometry(ComplexMatrix m);

// Haar-distributed unitary via a complex standard-Gaussian matrix followed
// by Householder QR with the R-diagonal phase correction.  The correction is
// mandatory: the raw QR output is not Haar, and the twirl identity tests
// would catch the bias.
ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng);

// First dim_in columns of a Haar unitary on C^{dim_out}.
Isometry haar_isometry(std::size_t dim_in, std::size_t dim_out, RngStream& rng);

// Uniform (unitarily invariant) pure state.
PureState haar_pure_state(std::size_t dim, RngStream& rng);

// Rank exactly `rank`: Haar-random eigenbasis, eigenvalues uniform on the
// rank-simplex (exponential normalisation).
DensityMatrix random_density(std::size_t dim, std::size_t rank, RngStream& rng);

// Projector onto a Haar-random rank-dimensional subspace of C^dim.
ComplexMatrix random_projector(std::size_t dim, std::size_t rank, RngStream& rng);

}  // namespace qembed
