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

#include <optional>

#include "qembed/eig.hpp"

namespace qembed {

// Quantum state: Hermitian, trace within 1e-9 of 1, eigenvalues >= -1e-9.
// Eigenvalues in [-1e-9, 0) are clipped to 0 and the state renormalised, so
// Monte Carlo round-off cannot poison validity; anything more negative is a
// construction error.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianOperator& op,
                         std::optional<std::size_t> rank_hint = std::nullopt);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  std::optional<std::size_t> rank_hint() const { return rank_hint_; }

  double purity() const;  // tr rho^2

 private:
  HermitianOperator op_;
  std::optional<std::size_t> rank_hint_;
};

// rho - sigma as a Hermitian operator (traceless for valid states).
HermitianOperator state_difference(const DensityMatrix& rho,
                                   const DensityMatrix& sigma);

}  // namespace qembed
