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

#include "qembed/channels.hpp"

#include <cmath>

#include "qembed/eig.hpp"
#include "qembed/errors.hpp"

namespace qembed {
namespace {

// Smaller than kChannelTol: Gram eigenvalues at this scale are pure
// round-off from duplicated or null Kraus operators.
constexpr double kGramDropTol = 1e-12;

}  // namespace

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus_ops)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_ops_(std::move(kraus_ops)) {
  if (dim_in_ == 0 || dim_out_ == 0) {
    throw ArgumentError("KrausChannel: dimensions must be >= 1");
  }
  if (kraus_ops_.empty()) {
    throw ArgumentError("KrausChannel: at least one Kraus operator required");
  }
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const auto& op : kraus_ops_) {
    if (op.rows() != dim_out_ || op.cols() != dim_in_) {
      throw ArgumentError("KrausChannel: Kraus operator has wrong shape");
    }
    if (!op.all_finite()) {
      throw ArgumentError("KrausChannel: non-finite Kraus operator");
    }
    sum += op.adjoint_multiply(op);
  }
  const double residual = max_abs_diff(sum, ComplexMatrix::identity(dim_in_));
  if (residual > kChannelTol) {
    throw ArgumentError(
        "KrausChannel: trace preservation violated, ||sum A^dagger A - I|| = " +
        std::to_string(residual));
  }
}

KrausChannel KrausChannel::identity_channel(std::size_t dim) {
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::identity(dim));
  return KrausChannel(dim, dim, std::move(ops));
}

KrausChannel KrausChannel::depolarizing(std::size_t dim_in, std::size_t dim_out) {
  if (dim_in == 0 || dim_out == 0) {
    throw ArgumentError("depolarizing: dimensions must be >= 1");
  }
  // A_{ij} = |i><j| / sqrt(dim_out) maps rho to tr(rho) I/dim_out.
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_out));
  std::vector<ComplexMatrix> ops;
  ops.reserve(dim_in * dim_out);
  for (std::size_t i = 0; i < dim_out; ++i)
    for (std::size_t j = 0; j < dim_in; ++j) {
      ComplexMatrix a(dim_out, dim_in);
      a(i, j) = Complex(scale, 0.0);
      ops.push_back(std::move(a));
    }
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != ch.dim_in()) {
    throw ArgumentError("apply_channel: input must be dim_in-square");
  }
  ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.kraus_ops()) {
    const ComplexMatrix ax = a * x;
    out += ax.multiply_adjoint(a);
  }
  return out;
}

HermitianOperator apply_channel(const KrausChannel& ch,
                                const HermitianOperator& x) {
  return HermitianOperator(apply_channel(ch, x.matrix()));
}

KrausChannel embedding_channel(const Isometry& v, std::size_t dim_in,
                               std::size_t dim_out) {
  if (dim_out > dim_in) {
    throw ArgumentError("embedding_channel: requires dim_out <= dim_in");
  }
  const std::size_t env = (dim_in + dim_out - 1) / dim_out;  // ceil(d/e)
  if (v.dim_in != dim_in || v.dim_out != dim_out * env) {
    throw ArgumentError(
        "embedding_channel: isometry must map C^d to C^e ⊗ C^{ceil(d/e)}");
  }
  // A_k = (I_e ⊗ <k|) V selects the rows congruent to k modulo the
  // environment dimension.
  std::vector<ComplexMatrix> ops;
  ops.reserve(env);
  for (std::size_t k = 0; k < env; ++k) {
    ComplexMatrix a(dim_out, dim_in);
    for (std::size_t i = 0; i < dim_out; ++i)
      for (std::size_t j = 0; j < dim_in; ++j)
        a(i, j) = v.matrix(i * env + k, j);
    ops.push_back(std::move(a));
  }
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

ComplexMatrix apply_tensor_square(const KrausChannel& ch,
                                  const ComplexMatrix& x) {
  const std::size_t d = ch.dim_in();
  const std::size_t e = ch.dim_out();
  if (!x.is_square() || x.rows() != d * d) {
    throw ArgumentError("apply_tensor_square: input must be dim_in^2-square");
  }
  // sum_{ij} (A_i ⊗ A_j) X (A_i ⊗ A_j)^dagger factorises as the channel
  // acting on the second register followed by the first, which avoids the
  // quadratic blow-up in the number of Kraus operators.

  // Second register: Y[(a,s),(b,t)] = sum_j (A_j X_{ab} A_j^dagger)[s,t].
  ComplexMatrix y(d * e, d * e);
  ComplexMatrix block(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) block(u, v) = x(a * d + u, b * d + v);
      const ComplexMatrix mapped = apply_channel(ch, block);
      for (std::size_t s = 0; s < e; ++s)
        for (std::size_t t = 0; t < e; ++t)
          y(a * e + s, b * e + t) = mapped(s, t);
    }

  // First register: Z[(p,s),(q,t)] = sum_i (A_i Y^{(st)} A_i^dagger)[p,q].
  ComplexMatrix out(e * e, e * e);
  ComplexMatrix outer(d, d);
  for (std::size_t s = 0; s < e; ++s)
    for (std::size_t t = 0; t < e; ++t) {
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) outer(a, b) = y(a * e + s, b * e + t);
      const ComplexMatrix mapped = apply_channel(ch, outer);
      for (std::size_t p = 0; p < e; ++p)
        for (std::size_t q = 0; q < e; ++q)
          out(p * e + s, q * e + t) = mapped(p, q);
    }
  return out;
}

double flip_functional(const KrausChannel& ch) {
  const ComplexMatrix fd = swap_operator(ch.dim_in());
  const ComplexMatrix fe = swap_operator(ch.dim_out());
  const ComplexMatrix mapped = apply_tensor_square(ch, fd);
  return trace_product(fe, mapped).real();
}

double flip_functional_gram(const KrausChannel& ch) {
  const KrausChannel canon = canonicalize(ch);
  double acc = 0.0;
  for (const auto& a : canon.kraus_ops()) {
    const double t = a.frobenius_norm_sq();  // tr[A^dagger A]
    acc += t * t;
  }
  return acc;
}

KrausChannel canonicalize(const KrausChannel& ch) {
  const auto& ops = ch.kraus_ops();
  const std::size_t count = ops.size();

  // Gram matrix G_{ij} = tr[A_i^dagger A_j] is Hermitian PSD.
  ComplexMatrix gram(count, count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      gram(i, j) = ops[j].multiply_adjoint(ops[i]).trace();

  const Spectrum s = eig_hermitian(HermitianOperator(gram));

  // B_m = sum_i W_{im} A_i diagonalises the Gram form; eigenvalues are
  // already descending.  Drop near-zero weights (redundant operators).
  std::vector<ComplexMatrix> out;
  for (std::size_t m = 0; m < count; ++m) {
    if (s.eigenvalues[m] <= kGramDropTol) continue;
    ComplexMatrix b(ch.dim_out(), ch.dim_in());
    for (std::size_t i = 0; i < count; ++i) {
      const Complex w = s.eigenvectors(i, m);
      if (w == Complex(0.0, 0.0)) continue;
      b += w * ops[i];
    }
    // Phase fix: first entry with magnitude above the drop tolerance made
    // real positive, so the representation is deterministic.
    Complex pivot(0.0, 0.0);
    for (std::size_t i = 0; i < b.rows() && pivot == Complex(0.0, 0.0); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (std::abs(b(i, j)) > kGramDropTol) {
          pivot = b(i, j);
          break;
        }
    if (pivot != Complex(0.0, 0.0)) {
      b *= std::conj(pivot) / std::abs(pivot);
    }
    out.push_back(std::move(b));
  }
  return KrausChannel(ch.dim_in(), ch.dim_out(), std::move(out));
}

}  // namespace qembed
