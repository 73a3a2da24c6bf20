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

#include "qembed/games.hpp"

#include <cmath>

#include "qembed/eig.hpp"
#include "qembed/errors.hpp"
#include "qembed/lemmas.hpp"
#include "qembed/sampling.hpp"

namespace qembed {
namespace {

constexpr double kMeasurementTol = 1e-9;

// Projector onto the symmetric subspace of two d-dimensional registers,
// (I + F_d)/2: the optimal "same" element for the equality game.
ComplexMatrix symmetric_projector(std::size_t d) {
  ComplexMatrix m = swap_operator(d);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += Complex(1.0, 0.0);
  m *= Complex(0.5, 0.0);
  return m;
}

void validate_measurement(const HermitianOperator& m) {
  const Spectrum s = eig_hermitian(m);
  for (double lam : s.eigenvalues) {
    if (lam < -kMeasurementTol || lam > 1.0 + kMeasurementTol) {
      throw ArgumentError("measurement operator must satisfy 0 <= M <= I");
    }
  }
}

}  // namespace

double swap_test_accept_prob(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("swap_test_accept_prob: dimension mismatch");
  }
  return 0.5 + 0.5 * trace_product(a.matrix(), b.matrix()).real();
}

double equality_game_analytic(const DensityMatrix& rho,
                              const DensityMatrix& sigma, Strategy strategy) {
  if (rho.dim() != sigma.dim()) {
    throw ArgumentError("equality_game_analytic: dimension mismatch");
  }
  const std::size_t d = rho.dim();
  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  switch (strategy) {
    case Strategy::swap_test:
      return 0.5 + delta.frobenius_norm_sq() / 8.0;
    case Strategy::optimal_m: {
      if (delta.frobenius_norm_sq() == 0.0) return 0.5;
      // Average bias of the symmetric-subspace measurement against the
      // twirled preparation difference; evaluates to ||delta||_2^2/4.
      const ComplexMatrix tau =
          twirl_closed_form(HermitianOperator(delta), d);
      const double avg_bias =
          0.5 * trace_product(symmetric_projector(d), tau).real();
      return 0.5 + 0.5 * avg_bias;
    }
    case Strategy::custom_m:
      throw ArgumentError(
          "equality_game_analytic: custom measurements have no U-free value");
  }
  throw ArgumentError("equality_game_analytic: unknown strategy");
}

GameResult equality_game_simulate(const GameSpec& spec, RngStream& rng,
                                  std::vector<GameRoundTrace>* trace) {
  if (spec.rounds == 0) throw ArgumentError("equality_game_simulate: rounds >= 1");
  if (spec.rho.dim() != spec.sigma.dim()) {
    throw ArgumentError("equality_game_simulate: dimension mismatch");
  }
  if (spec.strategy == Strategy::custom_m) {
    if (!spec.custom_m.has_value()) {
      throw ArgumentError("custom strategy requires a measurement operator");
    }
    if (spec.custom_m->dim() != spec.rho.dim() * spec.rho.dim()) {
      throw ArgumentError("custom measurement must act on the doubled system");
    }
    validate_measurement(*spec.custom_m);
  }

  const std::size_t d = spec.rho.dim();
  const ComplexMatrix& rho_m = spec.rho.matrix();
  const ComplexMatrix& sigma_m = spec.sigma.matrix();
  const ComplexMatrix sym = (spec.strategy == Strategy::optimal_m)
                                ? symmetric_projector(d)
                                : ComplexMatrix();

  const ComplexMatrix fixed_u = (spec.adversary == Adversary::fixed_u)
                                    ? haar_unitary(d, rng)
                                    : ComplexMatrix();

  std::size_t correct_count = 0;
  for (std::size_t round = 0; round < spec.rounds; ++round) {
    std::size_t prep = static_cast<std::size_t>(rng.next_unit() * 4.0);
    if (prep > 3) prep = 3;
    const bool truly_same = prep < 2;

    const ComplexMatrix u = (spec.adversary == Adversary::fixed_u)
                                ? fixed_u
                                : haar_unitary(d, rng);
    const ComplexMatrix first =
        (prep == 0 || prep == 2) ? (u * rho_m).multiply_adjoint(u)
                                 : (u * sigma_m).multiply_adjoint(u);
    const ComplexMatrix second =
        (prep == 0 || prep == 3) ? (u * rho_m).multiply_adjoint(u)
                                 : (u * sigma_m).multiply_adjoint(u);

    double p_same;
    switch (spec.strategy) {
      case Strategy::swap_test:
        p_same = 0.5 + 0.5 * trace_product(first, second).real();
        break;
      case Strategy::optimal_m:
        p_same = trace_product(sym, kron(first, second)).real();
        break;
      case Strategy::custom_m:
      default:
        p_same =
            trace_product(spec.custom_m->matrix(), kron(first, second)).real();
        break;
    }

    const bool answered_same = rng.next_unit() < p_same;
    const bool correct = (answered_same == truly_same);
    if (correct) ++correct_count;

    if (trace != nullptr) {
      static const char* kPrepNames[4] = {"rho-rho", "sigma-sigma",
                                          "rho-sigma", "sigma-rho"};
      trace->push_back(GameRoundTrace{round, kPrepNames[prep],
                                      answered_same ? "same" : "different",
                                      correct});
    }
  }

  GameResult result;
  result.success_rate =
      static_cast<double>(correct_count) / static_cast<double>(spec.rounds);
  result.std_error = std::sqrt(result.success_rate * (1.0 - result.success_rate) /
                               static_cast<double>(spec.rounds));
  result.bias = 2.0 * (result.success_rate - 0.5);
  if (spec.strategy == Strategy::custom_m) {
    // The custom measurement's value does depend on the adversary: use the
    // drawn unitary directly, or the twirled preparation difference in the
    // Haar case.
    const ComplexMatrix delta = rho_m - sigma_m;
    double avg_bias = 0.0;
    if (spec.adversary == Adversary::fixed_u) {
      const ComplexMatrix x = (fixed_u * delta).multiply_adjoint(fixed_u);
      avg_bias = 0.5 * trace_product(spec.custom_m->matrix(), kron(x, x)).real();
    } else if (delta.frobenius_norm_sq() > 0.0) {
      const ComplexMatrix tau = twirl_closed_form(HermitianOperator(delta), d);
      avg_bias = 0.5 * trace_product(spec.custom_m->matrix(), tau).real();
    }
    result.analytic_success = 0.5 + 0.5 * avg_bias;
  } else {
    result.analytic_success =
        equality_game_analytic(spec.rho, spec.sigma, spec.strategy);
  }
  return result;
}

HelstromResult helstrom_bias(const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ArgumentError("helstrom_bias: dimension mismatch");
  }
  const HermitianOperator delta = state_difference(rho, sigma);
  HelstromResult result;
  result.bias = 0.5 * schatten_norm(delta, SchattenP::one);
  result.measurement = positive_part_projector(delta);
  return result;
}

double povm_bias(const std::vector<HermitianOperator>& povm,
                 const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ArgumentError("povm_bias: dimension mismatch");
  }
  if (povm.empty()) throw ArgumentError("povm_bias: empty POVM");
  const std::size_t d = rho.dim();
  ComplexMatrix sum(d, d);
  for (const auto& element : povm) {
    if (element.dim() != d) throw ArgumentError("povm_bias: element dimension mismatch");
    const Spectrum s = eig_hermitian(element);
    if (s.eigenvalues.back() < -kMeasurementTol) {
      throw ArgumentError("povm_bias: element is not PSD");
    }
    sum += element.matrix();
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kMeasurementTol) {
    throw ArgumentError("povm_bias: elements do not sum to identity");
  }

  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  double acc = 0.0;
  for (const auto& element : povm) {
    acc += std::abs(trace_product(element.matrix(), delta).real());
  }
  return 0.5 * acc;
}

}  // namespace qembed
