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
#include "qembed/lemmas.hpp"

using namespace qembed;

namespace {

HermitianOperator orthogonal_pure_delta(std::size_t d) {
  ComplexMatrix m(d, d);
  m(0, 0) = Complex(1, 0);
  m(1, 1) = Complex(-1, 0);
  return HermitianOperator(m);
}

HermitianOperator random_traceless(std::size_t d, RngStream& rng) {
  return state_difference(random_density(d, d, rng), random_density(d, d, rng));
}

}  // namespace

TEST_CASE("twirl closed form") {
  const HermitianOperator delta = orthogonal_pure_delta(2);
  const ComplexMatrix tau = twirl_closed_form(delta, 2);

  // Coefficient ||delta||_2^2/(d^2-1) = 2/3 at d = 2.
  ComplexMatrix expected = swap_operator(2);
  for (std::size_t i = 0; i < 4; ++i) expected(i, i) -= Complex(0.5, 0.0);
  expected *= Complex(2.0 / 3.0, 0.0);
  CHECK(max_abs_diff(tau, expected) < 1e-14);

  CHECK(std::abs(tau.trace()) < 1e-12);  // traceless
  // tr[F tau] recovers ||delta||_2^2.
  CHECK(trace_product(swap_operator(2), tau).real() ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Non-traceless input rejected.
  ComplexMatrix biased(2, 2);
  biased(0, 0) = Complex(1, 0);
  CHECK_THROWS_AS(twirl_closed_form(HermitianOperator(biased), 2),
                  ArgumentError);
}

TEST_CASE("twirl estimate converges to the closed form") {
  const RngStream root(42, 0);
  for (std::size_t d : {2, 3}) {
    const HermitianOperator delta = orthogonal_pure_delta(d);
    const MatrixEstimate est =
        twirl_estimate(delta, d, 20000, root, default_workers());
    const ComplexMatrix closed = twirl_closed_form(delta, d);
    CHECK(max_abs_diff(est.mean, closed) <
          std::max(5e-3 * 4.0, 6.0 * est.max_std_error()));
  }

  // Tiny sample: std_error finite and nonzero.
  const MatrixEstimate tiny = twirl_estimate(orthogonal_pure_delta(2), 2, 2,
                                             root, 1);
  CHECK(tiny.max_std_error() > 0.0);
  CHECK(std::isfinite(tiny.max_std_error()));
}

TEST_CASE("average contraction check") {
  const RngStream root(7, 0);
  RngStream rng(7, 1);

  // Identity channel: estimate equals the bound exactly (unitary invariance).
  const auto rho = DensityMatrix::pure(PureState::basis_vector(4, 0));
  const auto sigma = DensityMatrix::pure(PureState::basis_vector(4, 1));
  const BoundCheck id_check = avg_contraction_check(
      KrausChannel::identity_channel(4), rho, sigma, 200, root, 2);
  CHECK(id_check.pass);
  CHECK(id_check.estimate.mean == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(id_check.bound_value == doctest::Approx(2.0).epsilon(1e-12));

  // Depolarizing channel: output constant, estimate 0.
  const BoundCheck depol_check = avg_contraction_check(
      KrausChannel::depolarizing(4, 2), rho, sigma, 200, root, 2);
  CHECK(depol_check.pass);
  CHECK(std::abs(depol_check.estimate.mean) < 1e-12);

  // Random embedding channel at (8, 2).
  const std::size_t d = 8, e = 2;
  const Isometry v = haar_isometry(d, e * 4, rng);
  const KrausChannel ch = embedding_channel(v, d, e);
  const auto rho8 = DensityMatrix::pure(PureState::basis_vector(8, 0));
  const auto sigma8 = DensityMatrix::pure(PureState::basis_vector(8, 1));
  const BoundCheck check =
      avg_contraction_check(ch, rho8, sigma8, 10000, root, default_workers());
  CHECK(check.pass);
  CHECK(check.bound_value ==
        doctest::Approx(8.0 * 3.0 / (2.0 * 63.0) * 2.0).epsilon(1e-12));
}

TEST_CASE("moment formulas at d = 2") {
  const HermitianOperator delta = orthogonal_pure_delta(2);
  CHECK(second_moment_exact(delta, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(fourth_moment_exact(delta, 2) == doctest::Approx(1.0 / 5.0));
  CHECK(fourth_moment_bound(delta, 2) == doctest::Approx(3.0 / 10.0));

  ComplexMatrix zero(2, 2);
  const HermitianOperator none(zero);
  CHECK(second_moment_exact(none, 2) == 0.0);
  CHECK(fourth_moment_exact(none, 2) == 0.0);
}

TEST_CASE("moment estimates match the exact formulas") {
  const RngStream root(11, 0);
  RngStream cases(11, 1);
  int misses = 0;
  for (int c = 0; c < 6; ++c) {
    const std::size_t d = 2 + c % 5;
    const HermitianOperator delta = random_traceless(d, cases);
    const MonteCarloEstimate second =
        second_moment_estimate(delta, d, 50000, substream(root, 2 * c),
                               default_workers());
    if (std::abs(second.mean - second_moment_exact(delta, d)) >
        3.0 * second.std_error)
      ++misses;
    const MonteCarloEstimate fourth =
        fourth_moment_estimate(delta, d, 50000, substream(root, 2 * c + 1),
                               default_workers());
    if (std::abs(fourth.mean - fourth_moment_exact(delta, d)) >
        3.0 * fourth.std_error)
      ++misses;
  }
  CHECK(misses <= 1);  // 3-sigma checks; allow one statistical miss
}

TEST_CASE("exact fourth moment never exceeds its cap") {
  RngStream rng(13, 0);
  for (int c = 0; c < 50; ++c) {
    const std::size_t d = 2 + c % 7;
    const HermitianOperator delta = random_traceless(d, rng);
    CHECK(fourth_moment_exact(delta, d) <=
          fourth_moment_bound(delta, d) + 1e-15);
  }
}

TEST_CASE("uniform POVM quantity: qubit value, sandwich and moment bound") {
  const RngStream root(17, 0);
  const UniformPovmResult qubit = uniform_povm_quantity(
      orthogonal_pure_delta(2), 2, 20000, root, default_workers());
  // Q = 2 * E|2t - 1| = 1 for the orthogonal qubit pair.
  CHECK(std::abs(qubit.q.mean - 1.0) < 0.02);
  CHECK(qubit.sandwich_pass);
  CHECK(qubit.moment_lower_pass);
  // Sandwich bounds: ||delta||_2/3 = 0.4714…, ||delta||_2 = 1.4142…
  CHECK(qubit.lower_bound == doctest::Approx(std::sqrt(2.0) / 3.0));
  CHECK(qubit.upper_bound == doctest::Approx(std::sqrt(2.0)));

  // Zero operator: Q = 0.
  ComplexMatrix zero(3, 3);
  const UniformPovmResult none =
      uniform_povm_quantity(HermitianOperator(zero), 3, 100, root, 1);
  CHECK(none.q.mean == 0.0);

  // Random pairs across dimensions.
  RngStream cases(17, 1);
  for (int c = 0; c < 8; ++c) {
    const std::size_t d = 2 + c * 2;
    const HermitianOperator delta = random_traceless(d, cases);
    const UniformPovmResult r = uniform_povm_quantity(
        delta, d, 10000, substream(root, 100 + c), default_workers());
    CHECK(r.sandwich_pass);
    CHECK(r.moment_lower_pass);
  }
}

TEST_CASE("random basis bias equals half the uniform POVM quantity") {
  const RngStream root(19, 0);
  const MonteCarloEstimate qubit = random_basis_bias(
      orthogonal_pure_delta(2), 2, 20000, root, default_workers());
  CHECK(std::abs(qubit.mean - 0.5) < 0.01);

  ComplexMatrix zero(3, 3);
  const MonteCarloEstimate none =
      random_basis_bias(HermitianOperator(zero), 3, 100, root, 1);
  CHECK(none.mean == 0.0);

  RngStream cases(19, 1);
  const std::size_t d = 4;
  const HermitianOperator delta = random_traceless(d, cases);
  const MonteCarloEstimate bias =
      random_basis_bias(delta, d, 10000, substream(root, 1), default_workers());
  const UniformPovmResult povm = uniform_povm_quantity(
      delta, d, 10000, substream(root, 2), default_workers());
  const double sigma = std::sqrt(bias.std_error * bias.std_error +
                                 0.25 * povm.q.std_error * povm.q.std_error);
  CHECK(std::abs(bias.mean - povm.q.mean / 2.0) <= 4.0 * sigma);
}

TEST_CASE("random basis bias sits in the scaled sandwich") {
  // Expected bias lies in [||delta||_2/6, ||delta||_2/2] at 3 sigma.
  const RngStream root(31, 0);
  RngStream cases(31, 1);
  for (int c = 0; c < 5; ++c) {
    const std::size_t d = 2 + c;
    const HermitianOperator delta = random_traceless(d, cases);
    const double norm2 = delta.matrix().frobenius_norm();
    const MonteCarloEstimate bias =
        random_basis_bias(delta, d, 5000, substream(root, c), default_workers());
    CHECK(bias.mean >= norm2 / 6.0 - 3.0 * bias.std_error);
    CHECK(bias.mean <= norm2 / 2.0 + 3.0 * bias.std_error);
  }
}

TEST_CASE("projector support inequality") {
  RngStream rng(23, 0);
  for (int i = 0; i < 2000; ++i) {
    double violation = 0.0;
    CHECK(projsupp_check(4, 3, 2, rng, &violation));
    CHECK(violation <= 1e-10);
  }

  // Full projector: P_perp = 0, both sides vanish.
  RngStream full_rng(23, 1);
  double violation = 1.0;
  CHECK(projsupp_check(2, 2, 4, full_rng, &violation));
  CHECK(std::abs(violation) < 1e-12);

  // A state inside the range of P: P_perp |psi> = 0, inequality is 0 <= 0.
  RngStream range_rng(23, 2);
  const ComplexMatrix p = random_projector(6, 2, range_rng);
  const PureState seed = haar_pure_state(6, range_rng);
  std::vector<Complex> in_range = p.multiply_vector(seed.amplitudes());
  double norm_sq = 0.0;
  for (const auto& z : in_range) norm_sq += std::norm(z);
  for (auto& z : in_range) z /= std::sqrt(norm_sq);
  std::vector<Complex> rest = in_range;
  const auto projected = p.multiply_vector(in_range);
  double off_mass = 0.0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    rest[i] -= projected[i];
    off_mass += std::norm(rest[i]);
  }
  CHECK(off_mass < 1e-18);  // both sides of the inequality vanish with it
}

TEST_CASE("projector overlap tail bound") {
  const RngStream root(29, 0);

  // delta = 0: bound is 1, trivially satisfied.
  const BoundCheck trivial = projconc_tail(8, 2, 0.0, 100, root, 1);
  CHECK(trivial.bound_value == doctest::Approx(1.0));
  CHECK(trivial.pass);

  // t = d: the overlap is always 1, so the tail frequency is 0.
  const BoundCheck full = projconc_tail(6, 6, 0.5, 100, root, 1);
  CHECK(full.estimate.mean == 0.0);
  CHECK(full.pass);

  // Tail bound value at (t, delta) = (4, 1).
  CHECK(projconc_bound(4, 1.0) ==
        doctest::Approx(std::exp(-4.0 * (1.0 - std::log(2.0)) / std::log(2.0))));
  const BoundCheck main = projconc_tail(32, 4, 1.0, 4000, root, default_workers());
  CHECK(main.pass);
}
