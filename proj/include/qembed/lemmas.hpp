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

#include "qembed/channels.hpp"
#include "qembed/monte_carlo.hpp"

namespace qembed {

// Monte Carlo and exact-formula verifiers for the Haar-integral identities
// and inequalities the embedding analysis rests on.  Every estimator draws
// per-sample substreams, so results are reproducible and worker-independent.

// Closed form of the two-fold twirl of delta⊗delta for traceless Hermitian
// delta:  (||delta||_2^2 / (d^2-1)) (F_d - I_{d^2}/d).
ComplexMatrix twirl_closed_form(const HermitianOperator& delta, std::size_t d);

// Entrywise mean of U⊗U (delta⊗delta) (U⊗U)^dagger over Haar unitaries.
MatrixEstimate twirl_estimate(const HermitianOperator& delta, std::size_t d,
                              std::size_t samples, const RngStream& root,
                              std::size_t workers);

// Checks the average 2-norm contraction of a channel over a Haar orbit:
// mean of ||E(U(rho-sigma)U^dagger)||_2^2 against
// d(e^2-1)/(e(d^2-1)) ||rho-sigma||_2^2.
BoundCheck avg_contraction_check(const KrausChannel& ch,
                                 const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 std::size_t samples, const RngStream& root,
                                 std::size_t workers);

// tr[delta^2] / (d(d+1)).
double second_moment_exact(const HermitianOperator& delta, std::size_t d);
// Mean of <psi|delta|psi>^2 over Haar states.
MonteCarloEstimate second_moment_estimate(const HermitianOperator& delta,
                                          std::size_t d, std::size_t samples,
                                          const RngStream& root,
                                          std::size_t workers);

// (3 tr[delta^2]^2 + 6 tr[delta^4]) / (d(d+1)(d+2)(d+3)).
double fourth_moment_exact(const HermitianOperator& delta, std::size_t d);
// 9 tr[delta^2]^2 / (d(d+1)(d+2)(d+3)); always >= fourth_moment_exact.
double fourth_moment_bound(const HermitianOperator& delta, std::size_t d);
// Mean of <psi|delta|psi>^4 over Haar states.
MonteCarloEstimate fourth_moment_estimate(const HermitianOperator& delta,
                                          std::size_t d, std::size_t samples,
                                          const RngStream& root,
                                          std::size_t workers);

// Q = d * E_psi |<psi|delta|psi>|, the bias scale of the uniform POVM.
// The result also carries the sandwich bounds ||delta||_2/3 <= Q <=
// ||delta||_2 and the fourth-moment lower bound
// E|X| >= E[X^2]^{3/2} / E[X^4]^{1/2}, which holds exactly on the sample
// moments.
struct UniformPovmResult {
  MonteCarloEstimate q;              // estimate of Q (already scaled by d)
  double lower_bound = 0.0;          // ||delta||_2 / 3
  double upper_bound = 0.0;          // ||delta||_2
  bool sandwich_pass = false;        // at 3 sigma
  double moment_lower = 0.0;         // d * E[X^2]^{3/2}/E[X^4]^{1/2} on the sample
  bool moment_lower_pass = false;    // Q_hat >= moment_lower - epsilon
};
UniformPovmResult uniform_povm_quantity(const HermitianOperator& delta,
                                        std::size_t d, std::size_t samples,
                                        const RngStream& root,
                                        std::size_t workers);

// Expected bias of a projective measurement in a Haar-random basis,
// (1/2) E_U sum_i |<i|U^dagger delta U|i>|; equals Q/2.
MonteCarloEstimate random_basis_bias(const HermitianOperator& delta,
                                     std::size_t d, std::size_t samples,
                                     const RngStream& root,
                                     std::size_t workers);

// One random instance of the projector-support inequality
//   tr[(D⊗I) P_perp |psi><psi| P_perp] <= tr[(D⊗I)|psi><psi|] tr[P_perp |psi><psi|]
// where P projects onto a random rank_p subspace of C^{dim_a} ⊗ C^{dim_b}
// and D onto the support of tr_B P.  Returns pass/fail at +1e-10 slack and
// optionally the signed violation (lhs - rhs).
bool projsupp_check(std::size_t dim_a, std::size_t dim_b, std::size_t rank_p,
                    RngStream& rng, double* violation = nullptr);

// Tail of tr[U P U^dagger |psi><psi|] over Haar U for a rank-t projector P,
// against exp(-t(delta - ln(1+delta))/ln 2); frequency compared at a
// 3-sigma binomial margin.
BoundCheck projconc_tail(std::size_t d, std::size_t t, double delta_param,
                         std::size_t samples, const RngStream& root,
                         std::size_t workers);

// The analytic tail bound exp(-t(delta - ln(1+delta))/ln 2).
double projconc_bound(std::size_t t, double delta_param);

}  // namespace qembed
