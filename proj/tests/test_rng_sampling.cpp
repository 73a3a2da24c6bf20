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
#include <set>

#include "qembed/errors.hpp"
#include "qembed/monte_carlo.hpp"
#include "qembed/sampling.hpp"

using namespace qembed;

TEST_CASE("streams replay bit-exactly and stream ids separate") {
  RngStream a(123, 7);
  RngStream b(123, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c(123, 8);
  RngStream d(124, 7);
  bool differs_c = false, differs_d = false;
  RngStream a2(123, 7);
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t base = a2.next_u64();
    if (c.next_u64() != base) differs_c = true;
    if (d.next_u64() != base) differs_d = true;
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("uniform doubles live in their half-open ranges") {
  RngStream rng(1, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    const double v = rng.next_unit_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("gaussian pairs have the right first moments") {
  RngStream rng(2, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = rng.next_gaussian_pair();
    sum += x + y;
    sum_sq += x * x + y * y;
  }
  const double mean = sum / (2.0 * n);
  const double var = sum_sq / (2.0 * n);
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("substreams are distinct, reproducible and collision-free") {
  const RngStream root(99, 0);
  RngStream s0 = substream(root, 0);
  RngStream s1 = substream(root, 1);
  CHECK(s0.next_u64() != s1.next_u64());

  RngStream s0_again = substream(root, 0);
  RngStream s0_third = substream(root, 0);
  for (int i = 0; i < 10; ++i) CHECK(s0_again.next_u64() == s0_third.next_u64());

  // 1000 substreams: pairwise distinct first draws.
  std::set<std::uint64_t> first_draws;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RngStream s = substream(root, i);
    first_draws.insert(s.next_u64());
  }
  CHECK(first_draws.size() == 1000);
}

TEST_CASE("seed parsing accepts decimal and hex") {
  CHECK(parse_seed("42") == 42);
  CHECK(parse_seed("0x2A") == 42);
  CHECK(parse_seed("0xffffffffffffffff") == 0xFFFFFFFFFFFFFFFFull);
  CHECK_THROWS_AS(parse_seed("12x"), ArgumentError);
  CHECK_THROWS_AS(parse_seed(""), ArgumentError);
}

TEST_CASE("haar unitaries are unitary to 1e-10") {
  RngStream rng(3, 0);
  for (std::size_t d : {1, 2, 3, 5, 8, 16, 33}) {
    const ComplexMatrix u = haar_unitary(d, rng);
    CHECK(max_abs_diff(u.adjoint_multiply(u), ComplexMatrix::identity(d)) <
          1e-10);
  }
  RngStream one(4, 0);
  const ComplexMatrix u1 = haar_unitary(1, one);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar unitaries average to the depolarised operator") {
  // One-design property: mean of U A U^dagger is tr(A) I/d.
  const std::size_t d = 3;
  RngStream fixed(5, 1);
  ComplexMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = fixed.next_complex_gaussian();
  a = Complex(0.5, 0.0) * (a + a.adjoint());
  a *= Complex(1.0 / a.frobenius_norm(), 0.0);  // unit scale for the tolerance

  const RngStream root(5, 0);
  const MatrixEstimate est = monte_carlo_matrix(
      100000, root, 0, default_workers(), [&](RngStream& rng) {
        const ComplexMatrix u = haar_unitary(d, rng);
        return (u * a).multiply_adjoint(u);
      });

  ComplexMatrix target = ComplexMatrix::identity(d);
  target *= a.trace() / static_cast<double>(d);
  CHECK(max_abs_diff(est.mean, target) < 5e-3);
}

TEST_CASE("haar isometries satisfy their invariants") {
  RngStream rng(6, 0);
  const Isometry v = haar_isometry(4, 12, rng);
  CHECK(v.dim_in == 4);
  CHECK(v.dim_out == 12);
  CHECK(max_abs_diff(v.matrix.adjoint_multiply(v.matrix),
                     ComplexMatrix::identity(4)) < 1e-10);
  CHECK_THROWS_AS(haar_isometry(5, 4, rng), ArgumentError);

  // Square case is a Haar unitary.
  const Isometry square = haar_isometry(6, 6, rng);
  CHECK(max_abs_diff(square.matrix.multiply_adjoint(square.matrix),
                     ComplexMatrix::identity(6)) < 1e-10);
}

TEST_CASE("compression of a state through an isometry stays a valid state") {
  RngStream rng(7, 0);
  const std::size_t d = 8, e = 3, env = 3;
  const Isometry v = haar_isometry(d, e * env, rng);
  const DensityMatrix rho = random_density(d, d, rng);
  const ComplexMatrix big = (v.matrix * rho.matrix()).multiply_adjoint(v.matrix);
  const ComplexMatrix out = partial_trace_b(big, e, env);
  // Constructor enforces PSD and unit trace.
  const DensityMatrix compressed((HermitianOperator(out)));
  CHECK(compressed.dim() == e);
}

TEST_CASE("haar pure states are uniform") {
  RngStream norm_rng(8, 0);
  for (int i = 0; i < 50; ++i) {
    const PureState psi = haar_pure_state(4, norm_rng);
    double norm_sq = 0.0;
    for (const auto& z : psi.amplitudes()) norm_sq += std::norm(z);
    CHECK(std::abs(std::sqrt(norm_sq) - 1.0) <= 1e-12);
  }

  // Mean projector is I/d.
  const RngStream root(8, 1);
  const MatrixEstimate est = monte_carlo_matrix(
      100000, root, 0, default_workers(),
      [](RngStream& rng) { return haar_pure_state(4, rng).projector(); });
  CHECK(max_abs_diff(est.mean,
                     Complex(0.25, 0.0) * ComplexMatrix::identity(4)) < 5e-3);

  // Mean of <psi|P|psi>^2 for P = |0><0| at d=2 is 1/3 (flat overlap law).
  ComplexMatrix p(2, 2);
  p(0, 0) = Complex(1, 0);
  const RngStream root2(8, 2);
  const MonteCarloEstimate second = monte_carlo_scalar(
      100000, root2, 0, default_workers(), [&](RngStream& rng) {
        const double x = haar_pure_state(2, rng).expectation(p);
        return x * x;
      });
  CHECK(std::abs(second.mean - 1.0 / 3.0) < 5e-3);
}

TEST_CASE("random density matrices have the requested rank and purity law") {
  RngStream rng(9, 0);
  CHECK_THROWS_AS(random_density(3, 4, rng), ArgumentError);
  CHECK_THROWS_AS(random_density(3, 0, rng), ArgumentError);

  const DensityMatrix pure_like = random_density(5, 1, rng);
  CHECK(pure_like.purity() == doctest::Approx(1.0).epsilon(1e-9));

  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(6, 3, rng);
    const Spectrum s = eig_hermitian(rho.op());
    std::size_t rank = 0;
    for (double lam : s.eigenvalues)
      if (lam > 1e-12) ++rank;
    CHECK(rank == 3);
    CHECK(rho.op().real_trace() == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Full-rank qubit: purity averages E[t^2 + (1-t)^2] = 2/3.
  const RngStream root(9, 1);
  const MonteCarloEstimate purity = monte_carlo_scalar(
      100000, root, 0, default_workers(),
      [](RngStream& r) { return random_density(2, 2, r).purity(); });
  CHECK(std::abs(purity.mean - 2.0 / 3.0) < 5e-3);
}

TEST_CASE("random projectors") {
  RngStream rng(10, 0);
  CHECK_THROWS_AS(random_projector(3, 4, rng), ArgumentError);

  const ComplexMatrix full = random_projector(4, 4, rng);
  CHECK(max_abs_diff(full, ComplexMatrix::identity(4)) < 1e-9);

  const ComplexMatrix p = random_projector(8, 2, rng);
  CHECK(max_abs_diff(p * p, p) < 1e-9);
  CHECK(p.trace().real() == doctest::Approx(2.0).epsilon(1e-9));
  const Spectrum s = eig_hermitian(HermitianOperator(p));
  std::size_t rank = 0;
  for (double lam : s.eigenvalues)
    if (lam > 0.5) ++rank;
  CHECK(rank == 2);

  // Mean overlap with a fixed state is rank/dim.
  const RngStream root(10, 1);
  const PureState probe = PureState::basis_vector(8, 0);
  const MonteCarloEstimate overlap = monte_carlo_scalar(
      100000, root, 0, default_workers(), [&](RngStream& r) {
        return probe.expectation(random_projector(8, 2, r));
      });
  CHECK(std::abs(overlap.mean - 0.25) < 5e-3);
}

TEST_CASE("monte carlo reduction is worker-count independent") {
  const RngStream root(31, 0);
  auto draw = [](RngStream& rng) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += rng.next_gaussian();
    return acc;
  };
  const MonteCarloEstimate one = monte_carlo_scalar(5000, root, 0, 1, draw);
  const MonteCarloEstimate four = monte_carlo_scalar(5000, root, 0, 4, draw);
  CHECK(one.mean == four.mean);          // bit-exact
  CHECK(one.std_error == four.std_error);
}
