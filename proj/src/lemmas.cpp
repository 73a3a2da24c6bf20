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

#include "qembed/lemmas.hpp"

#include <cmath>

#include "qembed/eig.hpp"
#include "qembed/errors.hpp"
#include "qembed/kernels.hpp"

namespace qembed {
namespace {

void require_traceless(const HermitianOperator& delta) {
  const double tr = std::abs(delta.real_trace());
  if (tr > kTraceTol) {
    throw ArgumentError("delta must be traceless (|tr| = " + std::to_string(tr) +
                        ")");
  }
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& x) {
  return (u * x).multiply_adjoint(u);
}

}  // namespace

ComplexMatrix twirl_closed_form(const HermitianOperator& delta, std::size_t d) {
  if (d < 2 || delta.dim() != d) {
    throw ArgumentError("twirl_closed_form: need traceless delta with d >= 2");
  }
  require_traceless(delta);
  const double coeff = delta.matrix().frobenius_norm_sq() /
                       (static_cast<double>(d) * d - 1.0);
  ComplexMatrix out = swap_operator(d);
  const double shift = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) -= shift;
  out *= Complex(coeff, 0.0);
  return out;
}

MatrixEstimate twirl_estimate(const HermitianOperator& delta, std::size_t d,
                              std::size_t samples, const RngStream& root,
                              std::size_t workers) {
  if (delta.dim() != d) throw ArgumentError("twirl_estimate: dimension mismatch");
  require_traceless(delta);
  const ComplexMatrix& dm = delta.matrix();
  return monte_carlo_matrix(samples, root, 0, workers, [&](RngStream& rng) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix x = conjugate(u, dm);
    return kron(x, x);
  });
}

BoundCheck avg_contraction_check(const KrausChannel& ch,
                                 const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 std::size_t samples, const RngStream& root,
                                 std::size_t workers) {
  const std::size_t d = ch.dim_in();
  const std::size_t e = ch.dim_out();
  if (rho.dim() != d || sigma.dim() != d) {
    throw ArgumentError("avg_contraction_check: state dimension mismatch");
  }
  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  const double delta_norm_sq = delta.frobenius_norm_sq();
  const double coeff = static_cast<double>(d) *
                       (static_cast<double>(e) * e - 1.0) /
                       (static_cast<double>(e) * (static_cast<double>(d) * d - 1.0));

  const MonteCarloEstimate est =
      monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
        const ComplexMatrix u = haar_unitary(d, rng);
        const ComplexMatrix mapped = apply_channel(ch, conjugate(u, delta));
        return mapped.frobenius_norm_sq();
      });
  return check_bound(est, coeff * delta_norm_sq, BoundDirection::less_equal);
}

double second_moment_exact(const HermitianOperator& delta, std::size_t d) {
  if (delta.dim() != d) throw ArgumentError("second_moment_exact: dimension mismatch");
  require_traceless(delta);
  return delta.matrix().frobenius_norm_sq() /
         (static_cast<double>(d) * (static_cast<double>(d) + 1.0));
}

MonteCarloEstimate second_moment_estimate(const HermitianOperator& delta,
                                          std::size_t d, std::size_t samples,
                                          const RngStream& root,
                                          std::size_t workers) {
  if (delta.dim() != d) throw ArgumentError("second_moment_estimate: dimension mismatch");
  const ComplexMatrix& dm = delta.matrix();
  return monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
    const double x = haar_pure_state(d, rng).expectation(dm);
    return x * x;
  });
}

double fourth_moment_exact(const HermitianOperator& delta, std::size_t d) {
  if (delta.dim() != d) throw ArgumentError("fourth_moment_exact: dimension mismatch");
  require_traceless(delta);
  const double tr2 = delta.matrix().frobenius_norm_sq();
  const ComplexMatrix sq = delta.matrix() * delta.matrix();
  const double tr4 = sq.frobenius_norm_sq();  // tr[delta^4]
  const double dd = static_cast<double>(d);
  return (3.0 * tr2 * tr2 + 6.0 * tr4) / (dd * (dd + 1.0) * (dd + 2.0) * (dd + 3.0));
}

double fourth_moment_bound(const HermitianOperator& delta, std::size_t d) {
  if (delta.dim() != d) throw ArgumentError("fourth_moment_bound: dimension mismatch");
  const double tr2 = delta.matrix().frobenius_norm_sq();
  const double dd = static_cast<double>(d);
  return 9.0 * tr2 * tr2 / (dd * (dd + 1.0) * (dd + 2.0) * (dd + 3.0));
}

MonteCarloEstimate fourth_moment_estimate(const HermitianOperator& delta,
                                          std::size_t d, std::size_t samples,
                                          const RngStream& root,
                                          std::size_t workers) {
  if (delta.dim() != d) throw ArgumentError("fourth_moment_estimate: dimension mismatch");
  const ComplexMatrix& dm = delta.matrix();
  return monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
    const double x = haar_pure_state(d, rng).expectation(dm);
    return (x * x) * (x * x);
  });
}

UniformPovmResult uniform_povm_quantity(const HermitianOperator& delta,
                                        std::size_t d, std::size_t samples,
                                        const RngStream& root,
                                        std::size_t workers) {
  if (delta.dim() != d) throw ArgumentError("uniform_povm_quantity: dimension mismatch");
  require_traceless(delta);
  const ComplexMatrix& dm = delta.matrix();
  const double dd = static_cast<double>(d);

  // Three passes over the identical substreams: sample i sees the same
  // state in each (substream(root, i) is a pure function), so the moment
  // inequality below is evaluated on one common sample.
  const MonteCarloEstimate abs_est =
      monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
        return std::abs(haar_pure_state(d, rng).expectation(dm));
      });
  const MonteCarloEstimate m2 =
      monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
        const double x = haar_pure_state(d, rng).expectation(dm);
        return x * x;
      });
  const MonteCarloEstimate m4 =
      monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
        const double x = haar_pure_state(d, rng).expectation(dm);
        return (x * x) * (x * x);
      });

  UniformPovmResult result;
  result.q = MonteCarloEstimate{dd * abs_est.mean, dd * abs_est.std_error,
                                abs_est.samples};
  const double norm2 = delta.matrix().frobenius_norm();
  result.lower_bound = norm2 / 3.0;
  result.upper_bound = norm2;
  const double sl = 3.0 * result.q.std_error + 1e-12 * std::max(1.0, norm2);
  result.sandwich_pass = (result.q.mean >= result.lower_bound - sl) &&
                         (result.q.mean <= result.upper_bound + sl);
  result.moment_lower =
      (m4.mean > 0.0) ? dd * std::pow(m2.mean, 1.5) / std::sqrt(m4.mean) : 0.0;
  result.moment_lower_pass =
      result.q.mean >= result.moment_lower - 1e-10 * std::max(1.0, norm2);
  return result;
}

MonteCarloEstimate random_basis_bias(const HermitianOperator& delta,
                                     std::size_t d, std::size_t samples,
                                     const RngStream& root,
                                     std::size_t workers) {
  if (delta.dim() != d) throw ArgumentError("random_basis_bias: dimension mismatch");
  require_traceless(delta);
  const ComplexMatrix& dm = delta.matrix();
  return monte_carlo_scalar(samples, root, 0, workers, [&](RngStream& rng) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix du = dm * u;
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      Complex diag(0.0, 0.0);
      for (std::size_t k = 0; k < d; ++k) diag += std::conj(u(k, i)) * du(k, i);
      acc += std::abs(diag.real());
    }
    return 0.5 * acc;
  });
}

bool projsupp_check(std::size_t dim_a, std::size_t dim_b, std::size_t rank_p,
                    RngStream& rng, double* violation) {
  const std::size_t n = dim_a * dim_b;
  if (rank_p == 0 || rank_p > n) {
    throw ArgumentError("projsupp_check: need 1 <= rank_p <= dim_a*dim_b");
  }
  const ComplexMatrix p = random_projector(n, rank_p, rng);
  const ComplexMatrix reduced = partial_trace_b(p, dim_a, dim_b);
  const ComplexMatrix d_op = support_projector(HermitianOperator(reduced));
  const ComplexMatrix d_full = kron(d_op, ComplexMatrix::identity(dim_b));

  const PureState psi = haar_pure_state(n, rng);
  std::vector<Complex> rest = psi.amplitudes();  // P_perp |psi>
  const std::vector<Complex> in_p = p.multiply_vector(psi.amplitudes());
  for (std::size_t i = 0; i < n; ++i) rest[i] -= in_p[i];

  const std::vector<Complex> dv = d_full.multiply_vector(rest);
  const double lhs = kernels::active().dot_cc(rest.data(), dv.data(), n).real();
  const double on_support = psi.expectation(d_full);
  const double off_p =
      kernels::active().dot_cc(rest.data(), rest.data(), n).real();
  const double rhs = on_support * off_p;
  if (violation != nullptr) *violation = lhs - rhs;
  return lhs <= rhs + 1e-10;
}

double projconc_bound(std::size_t t, double delta_param) {
  if (delta_param < 0.0) throw ArgumentError("projconc_bound: delta must be >= 0");
  const double dt = static_cast<double>(t);
  return std::exp(-dt * (delta_param - std::log1p(delta_param)) / std::log(2.0));
}

BoundCheck projconc_tail(std::size_t d, std::size_t t, double delta_param,
                         std::size_t samples, const RngStream& root,
                         std::size_t workers) {
  if (t == 0 || t > d) throw ArgumentError("projconc_tail: need 1 <= t <= d");
  const double threshold =
      (1.0 + delta_param) * static_cast<double>(t) / static_cast<double>(d);
  const MonteCarloEstimate freq =
      monte_carlo_frequency(samples, root, 0, workers, [&](RngStream& rng) {
        // For P the projector onto the first t basis vectors and |psi> = e_1,
        // tr[U P U^dagger |psi><psi|] is the first-row mass on those columns.
        const ComplexMatrix u = haar_unitary(d, rng);
        double q = 0.0;
        for (std::size_t k = 0; k < t; ++k) q += std::norm(u(0, k));
        return q >= threshold;
      });
  return check_bound(freq, projconc_bound(t, delta_param),
                     BoundDirection::less_equal);
}

}  // namespace qembed
