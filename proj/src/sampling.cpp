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

#include "qembed/sampling.hpp"

#include <cmath>

#include "qembed/errors.hpp"
#include "qembed/kernels.hpp"

namespace qembed {
namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RngStream& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.next_complex_gaussian();
  return g;
}

// In-place Householder QR.  On return `a` holds R in its upper triangle and
// `q` the accumulated product of reflectors (a = q * R).
void householder_qr(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.rows();
  q = ComplexMatrix::identity(n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double normx_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) normx_sq += std::norm(a(i, k));
    const double normx = std::sqrt(normx_sq);
    if (normx == 0.0) continue;

    const Complex x0 = a(k, k);
    const double absx0 = std::abs(x0);
    const Complex phase = (absx0 == 0.0) ? Complex(1.0, 0.0) : x0 / absx0;
    const Complex alpha = -phase * normx;

    double vnorm_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k) v[i] -= alpha;
      vnorm_sq += std::norm(v[i]);
    }
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;

    // a[k:, j] -= beta * v * (v^dagger a[k:, j])
    for (std::size_t j = k; j < n; ++j) {
      Complex dot(0.0, 0.0);
      for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // q[:, k:] -= beta * (q[:, k:] v) * v^dagger
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot(0.0, 0.0);
      for (std::size_t j = k; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
  }
}

}  // namespace

Isometry make_isometry(ComplexMatrix m) {
  const std::size_t dim_out = m.rows();
  const std::size_t dim_in = m.cols();
  if (dim_out < dim_in) {
    throw ArgumentError("Isometry requires dim_out >= dim_in");
  }
  const ComplexMatrix gram = m.adjoint_multiply(m);
  const double residual = max_abs_diff(gram, ComplexMatrix::identity(dim_in));
  if (residual > kIsometryTol) {
    throw ArgumentError("Isometry: ||V^dagger V - I||_max = " +
                        std::to_string(residual) + " exceeds 1e-10");
  }
  return Isometry{dim_in, dim_out, std::move(m)};
}

ComplexMatrix haar_unitary(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw ArgumentError("haar_unitary: dim must be >= 1");
  ComplexMatrix a = ginibre(dim, dim, rng);
  ComplexMatrix q;
  householder_qr(a, q);
  // Column phases from the R diagonal make the distribution exactly Haar.
  ComplexMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const Complex rjj = a(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = (mag == 0.0) ? Complex(1.0, 0.0) : rjj / mag;
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = q(i, j) * phase;
  }
#ifndef NDEBUG
  const double residual =
      max_abs_diff(u.adjoint_multiply(u), ComplexMatrix::identity(dim));
  if (residual > kIsometryTol) {
    throw NumericalFailure("haar_unitary: unitarity residual too large",
                           residual);
  }
#endif
  return u;
}

Isometry haar_isometry(std::size_t dim_in, std::size_t dim_out, RngStream& rng) {
  if (dim_in == 0) throw ArgumentError("haar_isometry: dim_in must be >= 1");
  if (dim_out < dim_in) {
    throw ArgumentError("haar_isometry: dim_out must be >= dim_in");
  }
  const ComplexMatrix u = haar_unitary(dim_out, rng);
  ComplexMatrix v(dim_out, dim_in);
  for (std::size_t i = 0; i < dim_out; ++i)
    for (std::size_t j = 0; j < dim_in; ++j) v(i, j) = u(i, j);
  return make_isometry(std::move(v));
}

PureState haar_pure_state(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw ArgumentError("haar_pure_state: dim must be >= 1");
  std::vector<Complex> amps(dim);
  for (;;) {
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      amps[i] = rng.next_complex_gaussian();
      norm_sq += std::norm(amps[i]);
    }
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& z : amps) z *= inv;
      return PureState(std::move(amps));
    }
  }
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, RngStream& rng) {
  if (rank == 0 || rank > dim) {
    throw ArgumentError("random_density: need 1 <= rank <= dim");
  }
  // Simplex-uniform eigenvalues; resample in the (measure-zero) event that a
  // weight underflows the rank threshold.
  std::vector<double> weights(rank);
  for (;;) {
    double sum = 0.0;
    for (auto& w : weights) {
      w = -std::log(rng.next_unit_open());
      sum += w;
    }
    bool ok = true;
    for (auto& w : weights) {
      w /= sum;
      if (w <= kEigenvalueZeroTol) ok = false;
    }
    if (ok) break;
  }

  const ComplexMatrix u = haar_unitary(dim, rng);
  ComplexMatrix scaled(dim, rank);
  ComplexMatrix basis(dim, rank);
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t i = 0; i < dim; ++i) {
      basis(i, c) = u(i, c);
      scaled(i, c) = weights[c] * u(i, c);
    }
  return DensityMatrix(HermitianOperator(scaled.multiply_adjoint(basis)), rank);
}

ComplexMatrix random_projector(std::size_t dim, std::size_t rank, RngStream& rng) {
  if (rank == 0 || rank > dim) {
    throw ArgumentError("random_projector: need 1 <= rank <= dim");
  }
  const Isometry v = haar_isometry(rank, dim, rng);
  return v.matrix.multiply_adjoint(v.matrix);
}

}  // namespace qembed
