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
#include <string>
#include <vector>

#include "qembed/density.hpp"
#include "qembed/rng.hpp"

namespace qembed {

// Probability that the swap test accepts a pair (A, B): 1/2 + tr[A B]/2.
double swap_test_accept_prob(const DensityMatrix& a, const DensityMatrix& b);

enum class Strategy { swap_test, optimal_m, custom_m };
enum class Adversary { fixed_u, haar_u };

// Equality testing with no shared reference frame: an adversary prepares
// rho⊗rho, sigma⊗sigma, rho⊗sigma or sigma⊗rho with equal probability,
// conjugates both registers by the same unknown unitary, and the tester
// answers "same" or "different".
struct GameSpec {
  DensityMatrix rho;
  DensityMatrix sigma;
  std::size_t rounds = 0;
  Adversary adversary = Adversary::fixed_u;
  Strategy strategy = Strategy::swap_test;
  // Required for Strategy::custom_m: a d^2-dimensional operator with
  // eigenvalues in [-1e-9, 1 + 1e-9]; ("same" outcome element).
  std::optional<HermitianOperator> custom_m;
};

// Success probability with bias B satisfying p = 1/2 + B/2 exactly.
struct GameResult {
  double success_rate = 0.0;
  double std_error = 0.0;
  double analytic_success = 0.0;
  double bias = 0.0;
};

struct GameRoundTrace {
  std::size_t round;
  std::string preparation;  // "rho-rho", "sigma-sigma", "rho-sigma", "sigma-rho"
  std::string outcome;      // "same" or "different"
  bool correct;
};

// U-independent success value: 1/2 + ||rho-sigma||_2^2/8 for the swap test,
// and the same number for the optimal measurement, obtained from the
// symmetric-subspace projector and the twirl closed form.
double equality_game_analytic(const DensityMatrix& rho,
                              const DensityMatrix& sigma, Strategy strategy);

// Plays the game: each round computes the exact acceptance probability of
// the strategy on the prepared pair and draws one biased coin.
GameResult equality_game_simulate(const GameSpec& spec, RngStream& rng,
                                  std::vector<GameRoundTrace>* trace = nullptr);

// Optimal one-shot discrimination: bias ||rho-sigma||_1/2, achieved by the
// projector onto the positive part of rho-sigma.
struct HelstromResult {
  double bias = 0.0;
  ComplexMatrix measurement;
};
HelstromResult helstrom_bias(const DensityMatrix& rho,
                             const DensityMatrix& sigma);

// (1/2) sum_i |tr[M_i (rho-sigma)]| for a POVM (PSD elements summing to I
// within 1e-9); never exceeds the optimal bias.
double povm_bias(const std::vector<HermitianOperator>& povm,
                 const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qembed
