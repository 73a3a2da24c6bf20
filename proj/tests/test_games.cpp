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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qembed/errors.hpp"
#include "qembed/games.hpp"
#include "qembed/sampling.hpp"

using namespace qembed;

namespace {

DensityMatrix basis_state(std::size_t d, std::size_t index) {
  return DensityMatrix::pure(PureState::basis_vector(d, index));
}

DensityMatrix diag_state(std::initializer_list<double> values) {
  ComplexMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (double v : values) m(i, i) = Complex(v, 0.0), ++i;
  return DensityMatrix(HermitianOperator(m));
}

}  // namespace

TEST_CASE("swap test acceptance probabilities") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  CHECK(swap_test_accept_prob(e0, e0) == doctest::Approx(1.0));
  CHECK(swap_test_accept_prob(e0, e1) == doctest::Approx(0.5));

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(swap_test_accept_prob(mixed, mixed) == doctest::Approx(0.75));
}

TEST_CASE("analytic equality-game values") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);

  CHECK(equality_game_analytic(e0, e1, Strategy::swap_test) ==
        doctest::Approx(0.75));
  CHECK(equality_game_analytic(e0, e0, Strategy::swap_test) ==
        doctest::Approx(0.5));

  // The optimal measurement value is computed through the twirl form and
  // must equal the swap-test value to 1e-10; its average bias is
  // ||delta||_2^2/4.
  const double optimal = equality_game_analytic(e0, e1, Strategy::optimal_m);
  CHECK(std::abs(optimal - 0.75) < 1e-10);
  const double avg_bias = 2.0 * (optimal - 0.5);
  CHECK(std::abs(avg_bias - 0.5) < 1e-10);  // ||delta||_2^2 = 2

  // Higher dimension, mixed states.
  RngStream rng(3, 0);
  const DensityMatrix rho = random_density(4, 2, rng);
  const DensityMatrix sigma = random_density(4, 3, rng);
  const double delta_2sq =
      (rho.matrix() - sigma.matrix()).frobenius_norm_sq();
  const double swap_value = equality_game_analytic(rho, sigma, Strategy::swap_test);
  const double opt_value = equality_game_analytic(rho, sigma, Strategy::optimal_m);
  CHECK(swap_value == doctest::Approx(0.5 + delta_2sq / 8.0).epsilon(1e-12));
  CHECK(std::abs(opt_value - swap_value) < 1e-10);
}

TEST_CASE("simulated games converge to the analytic value") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);

  GameSpec spec{e0, e1, 100000, Adversary::fixed_u, Strategy::swap_test,
                std::nullopt};
  RngStream rng(42, 0);
  const GameResult result = equality_game_simulate(spec, rng);
  CHECK(std::abs(result.success_rate - 0.75) < 0.01);
  CHECK(result.analytic_success == doctest::Approx(0.75));
  // p = 1/2 + B/2 exactly.
  CHECK(result.success_rate ==
        doctest::Approx(0.5 + result.bias / 2.0).epsilon(1e-12));

  GameSpec equal{e0, e0, 100000, Adversary::fixed_u, Strategy::swap_test,
                 std::nullopt};
  RngStream rng2(43, 0);
  const GameResult same = equality_game_simulate(equal, rng2);
  CHECK(std::abs(same.success_rate - 0.5) < 0.01);
}

TEST_CASE("swap-test value is invariant under the adversary's unitary") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  const std::size_t rounds = 20000;

  // Ten different fixed unitaries; all must sit within 4 binomial sigmas.
  for (std::uint64_t k = 0; k < 10; ++k) {
    GameSpec spec{e0, e1, rounds, Adversary::fixed_u, Strategy::swap_test,
                  std::nullopt};
    RngStream rng(100 + k, 0);
    const GameResult r = equality_game_simulate(spec, rng);
    CHECK(std::abs(r.success_rate - 0.75) <= 4.0 * r.std_error);
  }

  // Haar adversary agrees too.
  GameSpec haar{e0, e1, rounds, Adversary::haar_u, Strategy::swap_test,
                std::nullopt};
  RngStream rng(200, 0);
  const GameResult r = equality_game_simulate(haar, rng);
  CHECK(std::abs(r.success_rate - 0.75) <= 4.0 * r.std_error);
}

TEST_CASE("optimal measurement strategy simulates to the same value") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  GameSpec spec{e0, e1, 50000, Adversary::haar_u, Strategy::optimal_m,
                std::nullopt};
  RngStream rng(44, 0);
  const GameResult r = equality_game_simulate(spec, rng);
  CHECK(std::abs(r.success_rate - 0.75) <= 4.0 * r.std_error);
}

TEST_CASE("custom measurements validate and track their analytic value") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);

  // Out-of-range eigenvalues rejected.
  GameSpec bad{e0, e1, 100, Adversary::fixed_u, Strategy::custom_m,
               HermitianOperator(Complex(2.0, 0.0) * ComplexMatrix::identity(4))};
  RngStream bad_rng(50, 0);
  CHECK_THROWS_AS(equality_game_simulate(bad, bad_rng), ArgumentError);

  // The symmetric-subspace projector as a custom measurement reproduces the
  // optimal value under a Haar adversary.
  ComplexMatrix sym = swap_operator(2);
  for (std::size_t i = 0; i < 4; ++i) sym(i, i) += Complex(1.0, 0.0);
  sym *= Complex(0.5, 0.0);
  GameSpec spec{e0, e1, 40000, Adversary::haar_u, Strategy::custom_m,
                HermitianOperator(sym)};
  RngStream rng(51, 0);
  const GameResult r = equality_game_simulate(spec, rng);
  CHECK(r.analytic_success == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(std::abs(r.success_rate - r.analytic_success) <= 4.0 * r.std_error);

  // Fixed adversary: the analytic value is computed for the drawn unitary.
  GameSpec fixed{e0, e1, 40000, Adversary::fixed_u, Strategy::custom_m,
                 HermitianOperator(sym)};
  RngStream rng2(52, 0);
  const GameResult rf = equality_game_simulate(fixed, rng2);
  CHECK(std::abs(rf.success_rate - rf.analytic_success) <= 4.0 * rf.std_error);
}

TEST_CASE("round trace records what happened") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  GameSpec spec{e0, e1, 32, Adversary::fixed_u, Strategy::swap_test,
                std::nullopt};
  RngStream rng(45, 0);
  std::vector<GameRoundTrace> trace;
  equality_game_simulate(spec, rng, &trace);
  CHECK(trace.size() == 32);
  for (const auto& t : trace) {
    const bool same_prep = t.preparation == "rho-rho" || t.preparation == "sigma-sigma";
    const bool said_same = t.outcome == "same";
    CHECK(t.correct == (same_prep == said_same));
  }
}

TEST_CASE("helstrom bias and optimal measurement") {
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  const HelstromResult orth = helstrom_bias(e0, e1);
  CHECK(orth.bias == doctest::Approx(1.0));

  const HelstromResult same = helstrom_bias(e0, e0);
  CHECK(same.bias == doctest::Approx(0.0));

  const DensityMatrix rho = diag_state({0.75, 0.25});
  const DensityMatrix sigma = diag_state({0.25, 0.75});
  const HelstromResult mixed = helstrom_bias(rho, sigma);
  CHECK(mixed.bias == doctest::Approx(0.5));

  // The returned measurement achieves the bias.
  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  CHECK(trace_product(mixed.measurement, delta).real() ==
        doctest::Approx(mixed.bias).epsilon(1e-9));
}

TEST_CASE("povm bias") {
  const DensityMatrix rho = diag_state({0.75, 0.25});
  const DensityMatrix sigma = diag_state({0.25, 0.75});
  const HelstromResult best = helstrom_bias(rho, sigma);

  // The optimal two-outcome POVM reaches the Helstrom bias.
  ComplexMatrix complement = ComplexMatrix::identity(2) - best.measurement;
  const std::vector<HermitianOperator> optimal = {
      HermitianOperator(best.measurement), HermitianOperator(complement)};
  CHECK(povm_bias(optimal, rho, sigma) ==
        doctest::Approx(best.bias).epsilon(1e-9));

  // The trivial POVM {I} has zero bias.
  const std::vector<HermitianOperator> trivial = {
      HermitianOperator(ComplexMatrix::identity(2))};
  CHECK(povm_bias(trivial, rho, sigma) == doctest::Approx(0.0));

  // Invalid POVMs are rejected.
  const std::vector<HermitianOperator> short_sum = {
      HermitianOperator(Complex(0.5, 0.0) * ComplexMatrix::identity(2))};
  CHECK_THROWS_AS(povm_bias(short_sum, rho, sigma), ArgumentError);

  // Any valid POVM stays below the Helstrom bias.
  RngStream rng(46, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix p = random_projector(2, 1, rng);
    ComplexMatrix rest = ComplexMatrix::identity(2) - p;
    const std::vector<HermitianOperator> povm = {HermitianOperator(p),
                                                 HermitianOperator(rest)};
    CHECK(povm_bias(povm, rho, sigma) <= best.bias + 1e-9);
  }
}

TEST_CASE("random projective measurements average to half the povm quantity") {
  // For the orthogonal qubit pair the expected random-basis bias is 1/2.
  const DensityMatrix e0 = basis_state(2, 0);
  const DensityMatrix e1 = basis_state(2, 1);
  RngStream rng(47, 0);
  const int n = 4000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix u = haar_unitary(2, rng);
    std::vector<HermitianOperator> povm;
    for (std::size_t k = 0; k < 2; ++k) {
      ComplexMatrix column(2, 1);
      column(0, 0) = u(0, k);
      column(1, 0) = u(1, k);
      povm.emplace_back(column.multiply_adjoint(column));
    }
    const double b = povm_bias(povm, e0, e1);
    sum += b;
    sum_sq += b * b;
  }
  const double mean = sum / n;
  const double se =
      std::sqrt(std::max(0.0, (sum_sq / n - mean * mean) / (n - 1.0)));
  CHECK(std::abs(mean - 0.5) <= 4.0 * se);
}
