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
#include "qembed/games.hpp"
#include "qembed/monte_carlo.hpp"
#include "qembed/report.hpp"

namespace qembed {

// State-pair families used across experiments: the canonical orthogonal
// pure pair, orthogonal rank-r projector pairs (rho = P/r, sigma = Q/r with
// PQ = 0), and independent random rank-r states.
enum class StateFamily {
  orthogonal_pure,
  rank_r_orthogonal_projectors,
  random_rank_r_pair,
  explicit_pair,  // API-only: caller supplies the states
};

std::string family_name(StateFamily family);
StateFamily parse_family(const std::string& name);

std::pair<DensityMatrix, DensityMatrix> make_state_pair(StateFamily family,
                                                        std::size_t d,
                                                        std::size_t r,
                                                        RngStream& rng);

// Exponent constant of the trace-norm embedding failure bound
// d * exp(-K * epsilon * d), with K = (1 - ln 2) / (2 ln 2).
double embed_failure_constant();

// Smallest target dimension the trace-norm guarantee covers:
// ceil(2 sqrt(r d / epsilon)).
std::size_t derive_target_dim(std::size_t d, std::size_t r, double epsilon);

struct EmbedParams {
  std::size_t d = 0;
  std::size_t r = 1;
  double epsilon = 0.5;
  double delta = 0.0;
  std::size_t e = 0;  // 0: auto-derive
  std::size_t trials = 1;
  StateFamily family = StateFamily::orthogonal_pure;
};

struct EmbedTrialRecord {
  std::size_t trial = 0;
  std::uint64_t stream_id = 0;
  double ratio1 = 0.0;     // ||E_V(delta)||_1 / ||delta||_1
  double ratio2sq = 0.0;   // ||E_V(delta)||_2^2 / ||delta||_2^2
  double witness_value = 0.0;
  std::size_t s_plus = 0;  // positive eigenvalues of V delta V^dagger
  bool success = false;    // ratio1 >= 1 - epsilon
};

// One random-isometry compression trial.  Draws V : C^d -> C^e ⊗ C^{ceil(d/e)}
// from rng, applies the induced channel to rho - sigma, and records the norm
// ratios plus the support-witness value.  Throws NumericalFailure if the
// trace-norm ratio exceeds 1 + 1e-9 (channels are contractive).
EmbedTrialRecord trace_embed_trial(const DensityMatrix& rho,
                                   const DensityMatrix& sigma, std::size_t e,
                                   double epsilon, RngStream& rng);

// The measurement the compression analysis constructs: project V(rho-sigma)V^dagger
// onto its positive eigenvectors, take the support D of the partial trace of
// that projector, and return tr[D E_V(rho-sigma)].  Never exceeds half the
// output trace-norm distance (checked to 1e-9).
double witness_measurement_check(const DensityMatrix& rho,
                                 const DensityMatrix& sigma, const Isometry& v);

// Full trace-norm embedding experiment with failure-bound verdicts.
ExperimentReport embed_experiment(const EmbedParams& params, std::uint64_t seed,
                                  std::size_t workers);

// 2-norm contraction experiment: mean of ||E_V(U delta U^dagger)||_2^2 over
// Haar (V, U) against d(e^2-1)/(e(d^2-1)), plus the grid of (epsilon, delta)
// pairs ruled out at this (d, e) by e >= (1-delta)(1-epsilon)^2 d.
ExperimentReport two_norm_experiment(std::size_t d, std::size_t e,
                                     std::size_t trials, StateFamily family,
                                     std::size_t r, std::uint64_t seed,
                                     std::size_t workers);

struct BoundTableRow {
  std::string family;
  std::size_t r = 0;
  double norm1 = 0.0;
  double norm2 = 0.0;
  double norm_ratio = 0.0;    // norm1 / norm2
  double bound_trace = 0.0;   // (1-delta)(1-epsilon) sqrt(d) norm1/norm2
  double bound_two = 0.0;     // (1-delta)(1-epsilon)^2 d
};

BoundTableRow lower_bound_row(const std::string& family_label, std::size_t r,
                              const DensityMatrix& rho,
                              const DensityMatrix& sigma, std::size_t d,
                              double epsilon, double delta);

// Table of target-dimension lower bounds for the named family (or "all":
// the orthogonal pure pair plus orthogonal rank-r projector pairs for
// r = 1, 2, 4, ... <= d/2).
ExperimentReport bounds_table_experiment(std::size_t d, double epsilon,
                                         double delta,
                                         const std::string& family,
                                         std::size_t r, std::uint64_t seed);

// Classical baseline: Gaussian random projection scaled by 1/sqrt(e) on
// Gaussian point sets, sweeping the target dimensions.
ExperimentReport jl_baseline(std::size_t n_points, std::size_t d,
                             const std::vector<std::size_t>& target_dims,
                             double epsilon, std::size_t trials,
                             std::uint64_t seed, std::size_t workers);

// Compresses k orthonormal tags by a random projection, renormalises, and
// plays the swap-test equality protocol between them.
ExperimentReport fingerprint_demo(std::size_t k_strings,
                                  std::size_t dim_compressed,
                                  std::size_t rounds, std::uint64_t seed);

// Equality-game experiment wrapper around equality_game_simulate.
ExperimentReport game_experiment(StateFamily family, std::size_t d,
                                 std::size_t r, std::size_t rounds,
                                 Strategy strategy, Adversary adversary,
                                 std::uint64_t seed);

}  // namespace qembed
