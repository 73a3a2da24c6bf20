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

#include "qembed/sampling.hpp"

namespace qembed {

inline constexpr double kChannelTol = 1e-9;

// CPTP map in Kraus form: E(rho) = sum_i A_i rho A_i^dagger with
// sum_i A_i^dagger A_i = I within 1e-9 (checked at construction; violation
// is an error, not a warning).  Channels are immutable once built.
class KrausChannel {
 public:
  KrausChannel(std::size_t dim_in, std::size_t dim_out,
               std::vector<ComplexMatrix> kraus_ops);

  static KrausChannel identity_channel(std::size_t dim);
  // rho -> tr(rho) I_{dim_out}/dim_out.
  static KrausChannel depolarizing(std::size_t dim_in, std::size_t dim_out);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return kraus_ops_; }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_ops_;
};

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& x);
HermitianOperator apply_channel(const KrausChannel& ch,
                                const HermitianOperator& x);

// The channel that performs V : C^d -> C^e ⊗ C^{ceil(d/e)} and discards the
// second subsystem.  Kraus operators A_k = (I_e ⊗ <k|) V.  Requires e <= d.
KrausChannel embedding_channel(const Isometry& v, std::size_t dim_in,
                               std::size_t dim_out);

// sum_{ij} (A_i ⊗ A_j) X (A_i ⊗ A_j)^dagger on a dim_in^2-square operator.
ComplexMatrix apply_tensor_square(const KrausChannel& ch,
                                  const ComplexMatrix& x);

// tr[F_e (E⊗E)(F_d)], evaluated from the definition.
double flip_functional(const KrausChannel& ch);

// The same functional evaluated as sum_i (tr[A_i^dagger A_i])^2 after
// canonicalisation; agrees with flip_functional to 1e-8.
double flip_functional_gram(const KrausChannel& ch);

// Same channel action with pairwise trace-orthogonal Kraus operators
// (eigenbasis of the Gram matrix tr[A_i^dagger A_j]; near-zero operators are
// dropped).  Deterministic: eigenvalues descending, each operator's first
// nonzero entry made real positive.
KrausChannel canonicalize(const KrausChannel& ch);

}  // namespace qembed
