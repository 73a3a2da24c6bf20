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

#include "qembed/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qembed/errors.hpp"

namespace qembed {
namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_frobenius(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) acc += std::norm(a(p, q));
  return std::sqrt(2.0 * acc);
}

// One Jacobi rotation zeroing A(p,q).  With g = A(p,q) = |g| e^{i phi} the
// plane rotation is
//   J(p,p) = c, J(p,q) = s e^{i phi}, J(q,p) = -s e^{-i phi}, J(q,q) = c,
// where tau = (A(q,q) - A(p,p)) / (2|g|), t = sgn(tau)/(|tau| + sqrt(1+tau^2)),
// c = 1/sqrt(1+t^2) and s = t*c.  A <- J^dagger A J, V <- V J.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                   std::size_t q) {
  const Complex g = a(p, q);
  const double mag = std::abs(g);
  if (mag == 0.0) return;
  const Complex phase = g / mag;

  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
  const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex sp = s * phase;              // s e^{i phi}
  const Complex spc = s * std::conj(phase);  // s e^{-i phi}

  const std::size_t n = a.rows();
  // Row update: rows p and q of J^dagger A.
  for (std::size_t j = 0; j < n; ++j) {
    const Complex apj = a(p, j);
    const Complex aqj = a(q, j);
    a(p, j) = c * apj - sp * aqj;
    a(q, j) = spc * apj + c * aqj;
  }
  // Column update: columns p and q of (J^dagger A) J.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex aip = a(i, p);
    const Complex aiq = a(i, q);
    a(i, p) = c * aip - spc * aiq;
    a(i, q) = sp * aip + c * aiq;
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = c * vip - spc * viq;
    v(i, q) = sp * vip + c * viq;
  }
  // Pin the rotated pair to exact Hermitian form; round-off otherwise
  // accumulates over sweeps.
  a(p, q) = Complex(0.0, 0.0);
  a(q, p) = Complex(0.0, 0.0);
  a(p, p) = Complex(a(p, p).real(), 0.0);
  a(q, q) = Complex(a(q, q).real(), 0.0);
}

}  // namespace

Spectrum eig_hermitian(const HermitianOperator& herm) {
  const std::size_t n = herm.dim();
  ComplexMatrix a = herm.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double tol = 1e-12 * scale;

  if (n > 1) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_frobenius(a) <= tol) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_frobenius(a) > tol) {
      throw NumericalFailure("eig_hermitian: Jacobi sweep cap reached",
                             off_diagonal_frobenius(a));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.eigenvalues[col] = a(src, src).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, col) = v(i, src);
  }
  return out;
}

double schatten_norm(const HermitianOperator& a, SchattenP p) {
  const Spectrum s = eig_hermitian(a);
  switch (p) {
    case SchattenP::one: {
      double acc = 0.0;
      for (double lam : s.eigenvalues) acc += std::abs(lam);
      return acc;
    }
    case SchattenP::two: {
      double acc = 0.0;
      for (double lam : s.eigenvalues) acc += lam * lam;
      return std::sqrt(acc);
    }
    case SchattenP::inf: {
      double best = 0.0;
      for (double lam : s.eigenvalues) best = std::max(best, std::abs(lam));
      return best;
    }
  }
  throw ArgumentError("schatten_norm: unsupported p");
}

namespace {

ComplexMatrix projector_from_columns(const Spectrum& s,
                                     const std::vector<std::size_t>& cols) {
  const std::size_t n = s.eigenvectors.rows();
  ComplexMatrix basis(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      basis(i, c) = s.eigenvectors(i, cols[c]);
  return basis.multiply_adjoint(basis);
}

}  // namespace

ComplexMatrix positive_part_projector(const HermitianOperator& a) {
  const Spectrum s = eig_hermitian(a);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues[i] > kEigenvalueZeroTol) keep.push_back(i);
  if (keep.empty()) return ComplexMatrix(a.dim(), a.dim());
  return projector_from_columns(s, keep);
}

ComplexMatrix support_projector(const HermitianOperator& a, double threshold) {
  const Spectrum s = eig_hermitian(a);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues[i]) > threshold) keep.push_back(i);
  if (keep.empty()) return ComplexMatrix(a.dim(), a.dim());
  return projector_from_columns(s, keep);
}

std::size_t positive_eigenvalue_count(const Spectrum& s, double threshold) {
  std::size_t count = 0;
  for (double lam : s.eigenvalues)
    if (lam > threshold) ++count;
  return count;
}

}  // namespace qembed
