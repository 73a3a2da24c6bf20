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

#include "qembed/channels.hpp"
#include "qembed/eig.hpp"
#include "qembed/errors.hpp"

using namespace qembed;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, RngStream& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_complex_gaussian();
  return m;
}

HermitianOperator random_hermitian(std::size_t d, RngStream& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  return HermitianOperator(Complex(0.5, 0.0) * (g + g.adjoint()));
}

KrausChannel random_embedding(std::size_t d, std::size_t e, RngStream& rng) {
  const std::size_t env = (d + e - 1) / e;
  return embedding_channel(haar_isometry(d, e * env, rng), d, e);
}

// The defining sum over Kraus pairs; oracle for the factorised routine.
ComplexMatrix tensor_square_naive(const KrausChannel& ch,
                                  const ComplexMatrix& x) {
  const std::size_t e2 = ch.dim_out() * ch.dim_out();
  ComplexMatrix out(e2, e2);
  for (const auto& ai : ch.kraus_ops())
    for (const auto& aj : ch.kraus_ops()) {
      const ComplexMatrix k = kron(ai, aj);
      out += (k * x).multiply_adjoint(k);
    }
  return out;
}

}  // namespace

TEST_CASE("channel construction validates trace preservation") {
  std::vector<ComplexMatrix> bad;
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= Complex(0.5, 0.0);
  bad.push_back(half);
  CHECK_THROWS_AS(KrausChannel(2, 2, bad), ArgumentError);

  std::vector<ComplexMatrix> wrong_shape;
  wrong_shape.push_back(ComplexMatrix::identity(3));
  CHECK_THROWS_AS(KrausChannel(2, 3, wrong_shape), ArgumentError);
}

TEST_CASE("identity and depolarizing channels act as expected") {
  RngStream rng(1, 0);
  const KrausChannel id = KrausChannel::identity_channel(3);
  const HermitianOperator x = random_hermitian(3, rng);
  CHECK(max_abs_diff(apply_channel(id, x).matrix(), x.matrix()) < 1e-12);

  const KrausChannel depol = KrausChannel::depolarizing(2, 2);
  const DensityMatrix rho = random_density(2, 2, rng);
  const ComplexMatrix out = apply_channel(depol, rho.matrix());
  CHECK(max_abs_diff(out, Complex(0.5, 0.0) * ComplexMatrix::identity(2)) <
        1e-12);
}

TEST_CASE("channel application preserves trace, hermiticity and linearity") {
  RngStream rng(2, 0);
  const KrausChannel ch = random_embedding(6, 3, rng);

  const HermitianOperator x = random_hermitian(6, rng);
  const HermitianOperator y = apply_channel(ch, x);
  CHECK(y.real_trace() == doctest::Approx(x.real_trace()).epsilon(1e-9));

  const HermitianOperator z = random_hermitian(6, rng);
  const ComplexMatrix mixed =
      apply_channel(ch, ComplexMatrix(Complex(0.3, 0.0) * x.matrix() +
                                      Complex(0.7, 0.0) * z.matrix()));
  const ComplexMatrix combo = Complex(0.3, 0.0) * apply_channel(ch, x.matrix()) +
                              Complex(0.7, 0.0) * apply_channel(ch, z.matrix());
  CHECK(max_abs_diff(mixed, combo) < 1e-10);

  CHECK_THROWS_AS(apply_channel(ch, random_matrix(5, 5, rng)), ArgumentError);
}

TEST_CASE("embedding channel matches the isometry-then-discard route") {
  RngStream rng(3, 0);
  const std::size_t d = 6, e = 3, env = 2;
  const Isometry v = haar_isometry(d, e * env, rng);
  const KrausChannel ch = embedding_channel(v, d, e);
  CHECK(ch.kraus_ops().size() == env);

  const DensityMatrix rho = random_density(d, 2, rng);
  const ComplexMatrix via_channel = apply_channel(ch, rho.matrix());
  const ComplexMatrix big = (v.matrix * rho.matrix()).multiply_adjoint(v.matrix);
  const ComplexMatrix via_trace = partial_trace_b(big, e, env);
  CHECK(max_abs_diff(via_channel, via_trace) < 1e-10);
}

TEST_CASE("embedding channel shapes and preconditions") {
  RngStream rng(4, 0);
  // ceil(8/3) = 3 Kraus operators.
  const KrausChannel ch = random_embedding(8, 3, rng);
  CHECK(ch.kraus_ops().size() == 3);

  // e = d gives the trivial environment and an isometric (unitary) channel.
  const Isometry u = haar_isometry(4, 4, rng);
  const KrausChannel iso = embedding_channel(u, 4, 4);
  CHECK(iso.kraus_ops().size() == 1);

  const Isometry wrong = haar_isometry(4, 9, rng);
  CHECK_THROWS_AS(embedding_channel(wrong, 4, 2), ArgumentError);
  CHECK_THROWS_AS(embedding_channel(u, 4, 5), ArgumentError);

  // Identity isometry with e = d gives the identity channel.
  const Isometry eye = make_isometry(ComplexMatrix::identity(4));
  const KrausChannel id = embedding_channel(eye, 4, 4);
  RngStream probe_rng(5, 0);
  const HermitianOperator probe = random_hermitian(4, probe_rng);
  CHECK(max_abs_diff(apply_channel(id, probe).matrix(), probe.matrix()) <
        1e-12);

  // Output of the embedding channel is a valid state.
  const KrausChannel small = random_embedding(4, 2, rng);
  const DensityMatrix rho = random_density(4, 4, rng);
  const DensityMatrix out(apply_channel(small, rho.op()));
  CHECK(out.dim() == 2);
}

TEST_CASE("tensor-square application") {
  RngStream rng(6, 0);
  const KrausChannel ch = random_embedding(3, 2, rng);

  // Factorised implementation against the defining double sum.
  const ComplexMatrix x = random_matrix(9, 9, rng);
  CHECK(max_abs_diff(apply_tensor_square(ch, x), tensor_square_naive(ch, x)) <
        1e-10);

  // Identity channel leaves inputs unchanged.
  const KrausChannel id = KrausChannel::identity_channel(3);
  CHECK(max_abs_diff(apply_tensor_square(id, x), x) < 1e-12);

  // Product inputs factorise.
  const HermitianOperator y = random_hermitian(3, rng);
  const HermitianOperator z = random_hermitian(3, rng);
  const ComplexMatrix lhs = apply_tensor_square(ch, kron(y.matrix(), z.matrix()));
  const ComplexMatrix rhs = kron(apply_channel(ch, y.matrix()),
                                 apply_channel(ch, z.matrix()));
  CHECK(max_abs_diff(lhs, rhs) < 1e-10);

  // Trace preserved.
  CHECK(std::abs(apply_tensor_square(ch, x).trace() - x.trace()) < 1e-9);
}

TEST_CASE("flip functional values and bound") {
  // Identity at d = e saturates de = d^2.
  for (std::size_t d : {2, 3, 4}) {
    const KrausChannel id = KrausChannel::identity_channel(d);
    CHECK(flip_functional(id) ==
          doctest::Approx(static_cast<double>(d * d)).epsilon(1e-10));
  }

  // Completely depolarizing C^d -> C^e evaluates to d/e.
  for (auto [d, e] : {std::pair<std::size_t, std::size_t>{4, 2},
                      {6, 3},
                      {4, 4}}) {
    const KrausChannel depol = KrausChannel::depolarizing(d, e);
    CHECK(flip_functional(depol) ==
          doctest::Approx(static_cast<double>(d) / static_cast<double>(e))
              .epsilon(1e-9));
  }

  // Random embedding channels: flip <= de and the two evaluation paths agree.
  RngStream rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 4 + (trial % 3) * 2;  // 4, 6, 8
    const std::size_t e = 2 + trial % 2;        // 2, 3
    const KrausChannel ch = random_embedding(d, e, rng);
    const double flip = flip_functional(ch);
    CHECK(flip <= static_cast<double>(d) * static_cast<double>(e) + 1e-6);
    CHECK(std::abs(flip - flip_functional_gram(ch)) <= 1e-8);
  }

  // General random Stinespring channels (Haar isometry, environment of any
  // size up to d, Kraus count decoupled from ceil(d/e)) respect the bound
  // too.
  RngStream sting(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 3 + trial % 4;
    const std::size_t e = 2 + trial % 3;
    // Environment at least ceil(d/e) so the Stinespring isometry exists.
    const std::size_t env = (d + e - 1) / e + sting.next_u64() % d;
    const Isometry v = haar_isometry(d, e * env, sting);
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < env; ++k) {
      ComplexMatrix a(e, d);
      for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < d; ++j) a(i, j) = v.matrix(i * env + k, j);
      ops.push_back(std::move(a));
    }
    const KrausChannel ch(d, e, std::move(ops));
    const double flip = flip_functional(ch);
    CHECK(flip <= static_cast<double>(d) * static_cast<double>(e) + 1e-6);
    CHECK(std::abs(flip - flip_functional_gram(ch)) <= 1e-8);
  }
}

TEST_CASE("canonicalize") {
  RngStream rng(8, 0);

  // Already-orthogonal sets keep their action and their Gram diagonality.
  const KrausChannel ch = random_embedding(6, 3, rng);
  const KrausChannel canon = canonicalize(ch);
  const HermitianOperator probe = random_hermitian(6, rng);
  CHECK(max_abs_diff(apply_channel(ch, probe.matrix()),
                     apply_channel(canon, probe.matrix())) < 1e-9);
  for (std::size_t i = 0; i < canon.kraus_ops().size(); ++i)
    for (std::size_t j = 0; j < canon.kraus_ops().size(); ++j) {
      if (i == j) continue;
      const Complex g =
          trace_product(canon.kraus_ops()[i].adjoint(), canon.kraus_ops()[j]);
      CHECK(std::abs(g) < 1e-9);
    }

  // Duplicated Kraus operators collapse to a single one.
  const ComplexMatrix u = haar_unitary(3, rng);
  ComplexMatrix scaled = u;
  scaled *= Complex(1.0 / std::sqrt(2.0), 0.0);
  const KrausChannel duplicated(3, 3, {scaled, scaled});
  const KrausChannel collapsed = canonicalize(duplicated);
  CHECK(collapsed.kraus_ops().size() == 1);
  const HermitianOperator probe3 = random_hermitian(3, rng);
  CHECK(max_abs_diff(apply_channel(duplicated, probe3.matrix()),
                     apply_channel(collapsed, probe3.matrix())) < 1e-9);
}
