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

#include "qembed/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "qembed/eig.hpp"
#include "qembed/errors.hpp"

namespace qembed {
namespace {

double binomial_sigma(double p, std::size_t n) {
  p = std::clamp(p, 0.0, 1.0);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

DensityMatrix uniform_projector_state(std::size_t d, std::size_t first,
                                      std::size_t count) {
  ComplexMatrix m(d, d);
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) m(first + i, first + i) = w;
  return DensityMatrix(HermitianOperator(m), count);
}

struct WitnessComputation {
  double value = 0.0;
  std::size_t s_plus = 0;
};

// Shared by trace_embed_trial and witness_measurement_check: `big` is
// V(rho-sigma)V^dagger on C^e ⊗ C^env and `out` its partial trace over the
// environment.
WitnessComputation witness_from_parts(const ComplexMatrix& big,
                                      const ComplexMatrix& out, std::size_t e,
                                      std::size_t env, double out_norm1) {
  const Spectrum spec = eig_hermitian(HermitianOperator(big));
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] > kEigenvalueZeroTol) pos.push_back(i);

  WitnessComputation result;
  result.s_plus = pos.size();
  if (pos.empty()) return result;

  ComplexMatrix basis(big.rows(), pos.size());
  for (std::size_t c = 0; c < pos.size(); ++c)
    for (std::size_t i = 0; i < big.rows(); ++i)
      basis(i, c) = spec.eigenvectors(i, pos[c]);
  const ComplexMatrix p_v = basis.multiply_adjoint(basis);
  const ComplexMatrix d_v =
      support_projector(HermitianOperator(partial_trace_b(p_v, e, env)));
  result.value = trace_product(d_v, out).real();

  if (result.value > 0.5 * out_norm1 + 1e-9) {
    throw NumericalFailure(
        "witness exceeded half the output trace-norm distance",
        result.value - 0.5 * out_norm1);
  }
  return result;
}

}  // namespace

std::string family_name(StateFamily family) {
  switch (family) {
    case StateFamily::orthogonal_pure:
      return "orthogonal-pure";
    case StateFamily::rank_r_orthogonal_projectors:
      return "rank-r-orthogonal-projectors";
    case StateFamily::random_rank_r_pair:
      return "random-rank-r-pair";
    case StateFamily::explicit_pair:
      return "explicit";
  }
  return "unknown";
}

StateFamily parse_family(const std::string& name) {
  if (name == "orthogonal-pure") return StateFamily::orthogonal_pure;
  if (name == "rank-r-orthogonal-projectors")
    return StateFamily::rank_r_orthogonal_projectors;
  if (name == "random-rank-r-pair") return StateFamily::random_rank_r_pair;
  if (name == "explicit") return StateFamily::explicit_pair;
  throw ArgumentError("unknown state family: " + name);
}

std::pair<DensityMatrix, DensityMatrix> make_state_pair(StateFamily family,
                                                        std::size_t d,
                                                        std::size_t r,
                                                        RngStream& rng) {
  switch (family) {
    case StateFamily::orthogonal_pure: {
      if (d < 2) throw ArgumentError("orthogonal-pure requires d >= 2");
      return {DensityMatrix::pure(PureState::basis_vector(d, 0)),
              DensityMatrix::pure(PureState::basis_vector(d, 1))};
    }
    case StateFamily::rank_r_orthogonal_projectors: {
      if (r == 0 || 2 * r > d) {
        throw ArgumentError("rank-r orthogonal projectors require 2r <= d");
      }
      return {uniform_projector_state(d, 0, r),
              uniform_projector_state(d, r, r)};
    }
    case StateFamily::random_rank_r_pair: {
      DensityMatrix rho = random_density(d, r, rng);
      DensityMatrix sigma = random_density(d, r, rng);
      return {std::move(rho), std::move(sigma)};
    }
    case StateFamily::explicit_pair:
      throw ArgumentError("explicit state family requires caller-supplied states");
  }
  throw ArgumentError("unknown state family");
}

double embed_failure_constant() {
  const double ln2 = std::log(2.0);
  return (1.0 - ln2) / (2.0 * ln2);
}

std::size_t derive_target_dim(std::size_t d, std::size_t r, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw ArgumentError("derive_target_dim: epsilon must be in (0, 1)");
  }
  const double e_min =
      2.0 * std::sqrt(static_cast<double>(r) * static_cast<double>(d) / epsilon);
  return static_cast<std::size_t>(std::ceil(e_min));
}

EmbedTrialRecord trace_embed_trial(const DensityMatrix& rho,
                                   const DensityMatrix& sigma, std::size_t e,
                                   double epsilon, RngStream& rng) {
  const std::size_t d = rho.dim();
  if (sigma.dim() != d) throw ArgumentError("trace_embed_trial: dimension mismatch");
  if (e == 0 || e > d) throw ArgumentError("trace_embed_trial: need 1 <= e <= d");

  const std::size_t env = (d + e - 1) / e;
  const Isometry v = haar_isometry(d, e * env, rng);

  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  const double norm1_in =
      schatten_norm(HermitianOperator(delta), SchattenP::one);
  const double norm2sq_in = delta.frobenius_norm_sq();

  const ComplexMatrix big = (v.matrix * delta).multiply_adjoint(v.matrix);
  const ComplexMatrix out = partial_trace_b(big, e, env);
  const double norm1_out =
      schatten_norm(HermitianOperator(out), SchattenP::one);

  EmbedTrialRecord record;
  record.stream_id = rng.stream_id();
  record.ratio1 = norm1_out / norm1_in;
  record.ratio2sq = out.frobenius_norm_sq() / norm2sq_in;
  if (record.ratio1 > 1.0 + 1e-9) {
    throw NumericalFailure("trace_embed_trial: channel increased trace distance",
                           record.ratio1 - 1.0);
  }
  record.success = record.ratio1 >= 1.0 - epsilon;

  const WitnessComputation witness =
      witness_from_parts(big, out, e, env, norm1_out);
  record.witness_value = witness.value;
  record.s_plus = witness.s_plus;
  return record;
}

double witness_measurement_check(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 const Isometry& v) {
  const std::size_t d = rho.dim();
  if (sigma.dim() != d || v.dim_in != d) {
    throw ArgumentError("witness_measurement_check: dimension mismatch");
  }
  std::size_t e = 0;
  for (std::size_t cand = 1; cand <= d; ++cand) {
    const std::size_t env = (d + cand - 1) / cand;
    if (cand * env == v.dim_out) {
      e = cand;
      break;
    }
  }
  if (e == 0) {
    throw ArgumentError(
        "witness_measurement_check: isometry output is not e*ceil(d/e)");
  }
  const std::size_t env = v.dim_out / e;

  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  const ComplexMatrix big = (v.matrix * delta).multiply_adjoint(v.matrix);
  const ComplexMatrix out = partial_trace_b(big, e, env);
  const double norm1_out =
      schatten_norm(HermitianOperator(out), SchattenP::one);
  return witness_from_parts(big, out, e, env, norm1_out).value;
}

ExperimentReport embed_experiment(const EmbedParams& params, std::uint64_t seed,
                                  std::size_t workers) {
  if (params.d < 2) throw ArgumentError("embed_experiment: d must be >= 2");
  if (params.trials == 0) throw ArgumentError("embed_experiment: trials >= 1");
  if (params.epsilon <= 0.0 || params.epsilon >= 1.0) {
    throw ArgumentError("embed_experiment: epsilon must be in (0, 1)");
  }

  const std::size_t e =
      (params.e == 0) ? derive_target_dim(params.d, params.r, params.epsilon)
                      : params.e;
  if (e == 0 || e > params.d) {
    throw ArgumentError("embed_experiment: target dimension must satisfy 1 <= e <= d");
  }

  const double min_e = 2.0 * std::sqrt(static_cast<double>(params.r) *
                                       static_cast<double>(params.d) /
                                       params.epsilon);
  const bool in_hypothesis = static_cast<double>(e) >= min_e && e <= params.d;

  RngStream root(seed, 0);
  RngStream setup = substream(root, 0);
  const auto [rho, sigma] =
      make_state_pair(params.family, params.d, params.r, setup);

  const HermitianOperator delta = state_difference(rho, sigma);
  const double norm1 = schatten_norm(delta, SchattenP::one);
  const double norm2 = delta.matrix().frobenius_norm();

  const double k_const = embed_failure_constant();
  const double failure_bound = std::min(
      1.0, static_cast<double>(params.d) *
               std::exp(-k_const * params.epsilon * static_cast<double>(params.d)));

  std::vector<EmbedTrialRecord> records(params.trials);
  parallel_for(params.trials, workers, [&](std::size_t i) {
    RngStream rng = substream(root, i + 1);
    records[i] = trace_embed_trial(rho, sigma, e, params.epsilon, rng);
    records[i].trial = i;
  });

  std::size_t failures = 0;
  std::size_t witness_ok = 0;
  std::size_t witness_ok_on_success = 0;
  std::size_t successes = 0;
  double ratio1_sum = 0.0, ratio2_sum = 0.0, witness_sum = 0.0;
  double ratio1_min = records[0].ratio1, ratio1_max = records[0].ratio1;
  double ratio2_max = records[0].ratio2sq;
  std::size_t s_plus_max = 0;
  const double witness_threshold = (1.0 - params.epsilon) * norm1 / 2.0;
  for (const auto& rec : records) {
    if (!rec.success) ++failures;
    ratio1_sum += rec.ratio1;
    ratio2_sum += rec.ratio2sq;
    witness_sum += rec.witness_value;
    ratio1_min = std::min(ratio1_min, rec.ratio1);
    ratio1_max = std::max(ratio1_max, rec.ratio1);
    ratio2_max = std::max(ratio2_max, rec.ratio2sq);
    s_plus_max = std::max(s_plus_max, rec.s_plus);
    const bool w_ok = rec.witness_value >= witness_threshold - 1e-12;
    if (w_ok) ++witness_ok;
    if (rec.success) {
      ++successes;
      if (w_ok) ++witness_ok_on_success;
    }
  }
  const double n = static_cast<double>(params.trials);
  const double failure_fraction = static_cast<double>(failures) / n;

  ExperimentReport report;
  report.experiment_id = "embed";
  report.seed = seed;
  report.stream_id = 0;
  report.params = Json{{"d", params.d},
                       {"r", params.r},
                       {"epsilon", params.epsilon},
                       {"delta", params.delta},
                       {"e", e},
                       {"e_was_derived", params.e == 0},
                       {"trials", params.trials},
                       {"state_family", family_name(params.family)}};
  report.bounds = Json{{"failure_exponent_constant", k_const},
                       {"failure_bound", failure_bound},
                       {"hypothesis_min_e", min_e},
                       {"in_hypothesis", in_hypothesis},
                       {"norm1_delta", norm1},
                       {"norm2_delta", norm2},
                       {"witness_threshold", witness_threshold}};
  report.aggregates =
      Json{{"failure_count", failures},
           {"failure_fraction", failure_fraction},
           {"success_count", successes},
           {"ratio1_mean", ratio1_sum / n},
           {"ratio1_min", ratio1_min},
           {"ratio1_max", ratio1_max},
           {"ratio2sq_mean", ratio2_sum / n},
           {"ratio2sq_max", ratio2_max},
           {"witness_mean", witness_sum / n},
           {"witness_ok_count", witness_ok},
           {"witness_ok_on_success_count", witness_ok_on_success},
           {"s_plus_max", s_plus_max}};

  const double margin = 3.0 * binomial_sigma(failure_bound, params.trials);
  Verdict bound_verdict;
  bound_verdict.name = "trace-norm-failure-bound";
  bound_verdict.details = Json{{"failure_fraction", failure_fraction},
                               {"bound", failure_bound},
                               {"margin", margin}};
  if (!in_hypothesis) {
    bound_verdict.status = "outside-theorem-scope";
  } else {
    bound_verdict.status =
        (failure_fraction <= failure_bound + margin + 1e-12) ? "pass" : "fail";
  }
  report.verdicts.push_back(bound_verdict);

  Verdict contract;
  contract.name = "contractivity";
  contract.status =
      (ratio1_max <= 1.0 + 1e-9 && ratio2_max <= 1.0 + 1e-9) ? "pass" : "fail";
  contract.details = Json{{"ratio1_max", ratio1_max}, {"ratio2sq_max", ratio2_max}};
  report.verdicts.push_back(contract);

  Verdict witness_verdict;
  witness_verdict.name = "witness-on-success";
  witness_verdict.details = Json{{"successes", successes},
                                 {"witness_ok_on_success", witness_ok_on_success}};
  if (!in_hypothesis) {
    witness_verdict.status = "outside-theorem-scope";
  } else {
    witness_verdict.status =
        (witness_ok_on_success == successes) ? "pass" : "fail";
  }
  report.verdicts.push_back(witness_verdict);

  report.csv_header = {"trial",   "stream_id", "ratio1", "ratio2sq",
                       "witness", "s_plus",    "success"};
  for (const auto& rec : records) {
    report.trials.push_back(Json{{"trial", rec.trial},
                                 {"stream_id", u64_string(rec.stream_id)},
                                 {"ratio1", rec.ratio1},
                                 {"ratio2sq", rec.ratio2sq},
                                 {"witness", rec.witness_value},
                                 {"s_plus", rec.s_plus},
                                 {"success", rec.success}});
    report.csv_rows.push_back({std::to_string(rec.trial),
                               u64_string(rec.stream_id),
                               format_double(rec.ratio1),
                               format_double(rec.ratio2sq),
                               format_double(rec.witness_value),
                               std::to_string(rec.s_plus),
                               rec.success ? "true" : "false"});
  }
  return report;
}

ExperimentReport two_norm_experiment(std::size_t d, std::size_t e,
                                     std::size_t trials, StateFamily family,
                                     std::size_t r, std::uint64_t seed,
                                     std::size_t workers) {
  if (d < 2) throw ArgumentError("two_norm_experiment: d must be >= 2");
  if (e == 0 || e > d) throw ArgumentError("two_norm_experiment: need 1 <= e <= d");
  if (trials < 2) throw ArgumentError("two_norm_experiment: trials must be >= 2");

  RngStream root(seed, 0);
  RngStream setup = substream(root, 0);
  const auto [rho, sigma] = make_state_pair(family, d, r, setup);
  const ComplexMatrix delta = rho.matrix() - sigma.matrix();
  const double norm2sq = delta.frobenius_norm_sq();
  const std::size_t env = (d + e - 1) / e;

  std::vector<double> ratios(trials);
  std::vector<std::uint64_t> stream_ids(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    RngStream rng = substream(root, i + 1);
    stream_ids[i] = rng.stream_id();
    const Isometry v = haar_isometry(d, e * env, rng);
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix rotated = (u * delta).multiply_adjoint(u);
    const ComplexMatrix big = (v.matrix * rotated).multiply_adjoint(v.matrix);
    const ComplexMatrix out = partial_trace_b(big, e, env);
    ratios[i] = out.frobenius_norm_sq() / norm2sq;
  });

  double sum = 0.0, sum_sq = 0.0, max_ratio = 0.0;
  for (double x : ratios) {
    sum += x;
    sum_sq += x * x;
    max_ratio = std::max(max_ratio, x);
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double variance =
      std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double se = std::sqrt(variance / n);

  const double bound = static_cast<double>(d) *
                       (static_cast<double>(e) * e - 1.0) /
                       (static_cast<double>(e) * (static_cast<double>(d) * d - 1.0));

  ExperimentReport report;
  report.experiment_id = "two-norm";
  report.seed = seed;
  report.params = Json{{"d", d},
                       {"e", e},
                       {"trials", trials},
                       {"r", r},
                       {"state_family", family_name(family)}};
  report.bounds = Json{{"avg_contraction_bound", bound}, {"norm2sq_delta", norm2sq}};

  Json grid = Json::array();
  for (int ei = 0; ei <= 9; ++ei) {
    for (int di = 0; di <= 9; ++di) {
      const double eps = 0.1 * ei;
      const double del = 0.1 * di;
      const bool ruled_out =
          static_cast<double>(e) <
          (1.0 - del) * (1.0 - eps) * (1.0 - eps) * static_cast<double>(d);
      grid.push_back(Json{{"epsilon", eps}, {"delta", del}, {"ruled_out", ruled_out}});
    }
  }
  report.aggregates = Json{{"ratio_mean", mean},
                           {"ratio_std_error", se},
                           {"ratio_max", max_ratio},
                           {"ruled_out_grid", grid}};

  Verdict verdict;
  verdict.name = "two-norm-average-bound";
  verdict.status = (mean <= bound + 3.0 * se + 1e-12) ? "pass" : "fail";
  verdict.details = Json{{"mean", mean}, {"bound", bound}, {"std_error", se}};
  report.verdicts.push_back(verdict);

  Verdict contract;
  contract.name = "contractivity";
  contract.status = (max_ratio <= 1.0 + 1e-9) ? "pass" : "fail";
  contract.details = Json{{"ratio_max", max_ratio}};
  report.verdicts.push_back(contract);

  report.csv_header = {"trial", "stream_id", "ratio2sq"};
  for (std::size_t i = 0; i < trials; ++i) {
    report.trials.push_back(Json{{"trial", i},
                                 {"stream_id", u64_string(stream_ids[i])},
                                 {"ratio2sq", ratios[i]}});
    report.csv_rows.push_back({std::to_string(i), u64_string(stream_ids[i]),
                               format_double(ratios[i])});
  }
  return report;
}

BoundTableRow lower_bound_row(const std::string& family_label, std::size_t r,
                              const DensityMatrix& rho,
                              const DensityMatrix& sigma, std::size_t d,
                              double epsilon, double delta) {
  const HermitianOperator diff = state_difference(rho, sigma);
  BoundTableRow row;
  row.family = family_label;
  row.r = r;
  row.norm1 = schatten_norm(diff, SchattenP::one);
  row.norm2 = diff.matrix().frobenius_norm();
  row.norm_ratio = row.norm1 / row.norm2;
  const double front = (1.0 - delta) * (1.0 - epsilon);
  row.bound_trace = front * std::sqrt(static_cast<double>(d)) * row.norm_ratio;
  row.bound_two = front * (1.0 - epsilon) * static_cast<double>(d);
  return row;
}

ExperimentReport bounds_table_experiment(std::size_t d, double epsilon,
                                         double delta,
                                         const std::string& family,
                                         std::size_t r, std::uint64_t seed) {
  if (d < 2) throw ArgumentError("bounds_table_experiment: d must be >= 2");
  RngStream root(seed, 0);
  RngStream setup = substream(root, 0);

  std::vector<BoundTableRow> rows;
  auto add_family = [&](StateFamily f, std::size_t rank) {
    auto [rho, sigma] = make_state_pair(f, d, rank, setup);
    rows.push_back(
        lower_bound_row(family_name(f), rank, rho, sigma, d, epsilon, delta));
  };

  if (family == "all") {
    add_family(StateFamily::orthogonal_pure, 1);
    for (std::size_t rank = 1; 2 * rank <= d; rank *= 2) {
      add_family(StateFamily::rank_r_orthogonal_projectors, rank);
    }
  } else {
    const StateFamily f = parse_family(family);
    if (f == StateFamily::explicit_pair) {
      throw ArgumentError("bounds: explicit family is API-only");
    }
    add_family(f, r);
  }

  ExperimentReport report;
  report.experiment_id = "bounds";
  report.seed = seed;
  report.params = Json{{"d", d},
                       {"epsilon", epsilon},
                       {"delta", delta},
                       {"family", family},
                       {"r", r}};
  report.bounds = Json{{"front_factor", (1.0 - delta) * (1.0 - epsilon)}};

  Json table = Json::array();
  report.csv_header = {"family", "r",          "norm1",      "norm2",
                       "ratio",  "bound_trace", "bound_two"};
  for (const auto& row : rows) {
    table.push_back(Json{{"family", row.family},
                         {"r", row.r},
                         {"norm1", row.norm1},
                         {"norm2", row.norm2},
                         {"ratio", row.norm_ratio},
                         {"bound_trace", row.bound_trace},
                         {"bound_two", row.bound_two}});
    report.csv_rows.push_back({row.family, std::to_string(row.r),
                               format_double(row.norm1),
                               format_double(row.norm2),
                               format_double(row.norm_ratio),
                               format_double(row.bound_trace),
                               format_double(row.bound_two)});
  }
  report.aggregates = Json{{"table", table}};
  report.trials = table;
  return report;
}

ExperimentReport jl_baseline(std::size_t n_points, std::size_t d,
                             const std::vector<std::size_t>& target_dims,
                             double epsilon, std::size_t trials,
                             std::uint64_t seed, std::size_t workers) {
  if (n_points < 2) throw ArgumentError("jl_baseline: need at least 2 points");
  if (target_dims.empty()) throw ArgumentError("jl_baseline: no target dimensions");
  if (trials == 0) throw ArgumentError("jl_baseline: trials >= 1");
  for (std::size_t e : target_dims) {
    if (e == 0 || e > d) throw ArgumentError("jl_baseline: need 1 <= e <= d");
  }
  std::vector<std::size_t> dims = target_dims;
  std::sort(dims.begin(), dims.end());

  RngStream root(seed, 0);
  const std::size_t pair_count = n_points * (n_points - 1) / 2;

  struct TrialOutcome {
    std::size_t failures = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double max_asymmetry = 0.0;
    double min_distance = 0.0;
    std::uint64_t stream_id = 0;
  };
  std::vector<TrialOutcome> outcomes(dims.size() * trials);

  parallel_for(dims.size() * trials, workers, [&](std::size_t job) {
    const std::size_t dim_index = job / trials;
    const std::size_t e = dims[dim_index];
    RngStream rng = substream(root, job + 1);
    TrialOutcome& outcome = outcomes[job];
    outcome.stream_id = rng.stream_id();

    std::vector<double> points(n_points * d);
    for (auto& x : points) x = rng.next_gaussian();

    // e = d keeps the identity map (zero distortion); otherwise project by
    // a Gaussian e x d matrix scaled by 1/sqrt(e).
    std::vector<double> projected;
    if (e == d) {
      projected = points;
    } else {
      std::vector<double> g(e * d);
      for (auto& x : g) x = rng.next_gaussian();
      const double scale = 1.0 / std::sqrt(static_cast<double>(e));
      projected.assign(n_points * e, 0.0);
      for (std::size_t p = 0; p < n_points; ++p)
        for (std::size_t i = 0; i < e; ++i) {
          double acc = 0.0;
          const double* grow = g.data() + i * d;
          const double* x = points.data() + p * d;
          for (std::size_t j = 0; j < d; ++j) acc += grow[j] * x[j];
          projected[p * e + i] = acc * scale;
        }
    }

    auto dist = [](const double* a, const double* b, std::size_t len) {
      double acc = 0.0;
      for (std::size_t j = 0; j < len; ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
      }
      return std::sqrt(acc);
    };

    bool first = true;
    outcome.min_distance = 0.0;
    for (std::size_t p = 0; p < n_points; ++p) {
      for (std::size_t q = p + 1; q < n_points; ++q) {
        const double orig = dist(points.data() + p * d, points.data() + q * d, d);
        const double orig_swapped =
            dist(points.data() + q * d, points.data() + p * d, d);
        outcome.max_asymmetry =
            std::max(outcome.max_asymmetry, std::abs(orig - orig_swapped));
        const double mapped =
            dist(projected.data() + p * e, projected.data() + q * e, e);
        const double ratio = mapped / orig;
        if (first) {
          outcome.min_ratio = outcome.max_ratio = ratio;
          outcome.min_distance = std::min(orig, mapped);
          first = false;
        } else {
          outcome.min_ratio = std::min(outcome.min_ratio, ratio);
          outcome.max_ratio = std::max(outcome.max_ratio, ratio);
          outcome.min_distance = std::min({outcome.min_distance, orig, mapped});
        }
        if (ratio < 1.0 - epsilon || ratio > 1.0 + epsilon) ++outcome.failures;
      }
    }
  });

  ExperimentReport report;
  report.experiment_id = "jl";
  report.seed = seed;
  report.params = Json{{"points", n_points},
                       {"d", d},
                       {"target_dims", dims},
                       {"epsilon", epsilon},
                       {"trials", trials}};

  Json per_dim = Json::array();
  std::vector<double> fail_fractions(dims.size());
  std::vector<double> fail_ses(dims.size());
  double global_min_distance = 0.0;
  double global_max_asymmetry = 0.0;
  bool first_dim = true;
  report.csv_header = {"e",        "trial",     "stream_id", "pairs",
                       "failures", "min_ratio", "max_ratio"};
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::size_t failures = 0;
    double min_ratio = 0.0, max_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialOutcome& o = outcomes[k * trials + t];
      failures += o.failures;
      if (t == 0) {
        min_ratio = o.min_ratio;
        max_ratio = o.max_ratio;
      } else {
        min_ratio = std::min(min_ratio, o.min_ratio);
        max_ratio = std::max(max_ratio, o.max_ratio);
      }
      if (first_dim && t == 0) {
        global_min_distance = o.min_distance;
      }
      global_min_distance = std::min(global_min_distance, o.min_distance);
      global_max_asymmetry = std::max(global_max_asymmetry, o.max_asymmetry);
      report.trials.push_back(Json{{"e", dims[k]},
                                   {"trial", t},
                                   {"stream_id", u64_string(o.stream_id)},
                                   {"pairs", pair_count},
                                   {"failures", o.failures},
                                   {"min_ratio", o.min_ratio},
                                   {"max_ratio", o.max_ratio}});
      report.csv_rows.push_back(
          {std::to_string(dims[k]), std::to_string(t), u64_string(o.stream_id),
           std::to_string(pair_count), std::to_string(o.failures),
           format_double(o.min_ratio), format_double(o.max_ratio)});
    }
    first_dim = false;
    const std::size_t total_pairs = pair_count * trials;
    const double fraction =
        static_cast<double>(failures) / static_cast<double>(total_pairs);
    fail_fractions[k] = fraction;
    fail_ses[k] = binomial_sigma(fraction, total_pairs);
    per_dim.push_back(Json{{"e", dims[k]},
                           {"pairs", total_pairs},
                           {"failures", failures},
                           {"failure_fraction", fraction},
                           {"std_error", fail_ses[k]},
                           {"min_ratio", min_ratio},
                           {"max_ratio", max_ratio}});
  }
  report.aggregates = Json{{"per_target_dim", per_dim},
                           {"min_distance", global_min_distance},
                           {"max_distance_asymmetry", global_max_asymmetry}};
  report.bounds = Json{{"band_low", 1.0 - epsilon}, {"band_high", 1.0 + epsilon}};

  Verdict trend;
  trend.name = "distortion-trend";
  trend.status = "pass";
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const double slack = 2.0 * std::sqrt(fail_ses[k] * fail_ses[k] +
                                         fail_ses[k + 1] * fail_ses[k + 1]);
    if (fail_fractions[k + 1] > fail_fractions[k] + slack) {
      trend.status = "fail";
      break;
    }
  }
  trend.details = Json{{"failure_fractions", fail_fractions}};
  report.verdicts.push_back(trend);

  Verdict valid;
  valid.name = "distances-valid";
  valid.status = (global_min_distance >= 0.0 && global_max_asymmetry <= 1e-12)
                     ? "pass"
                     : "fail";
  valid.details = Json{{"min_distance", global_min_distance},
                       {"max_asymmetry", global_max_asymmetry}};
  report.verdicts.push_back(valid);
  return report;
}

ExperimentReport fingerprint_demo(std::size_t k_strings,
                                  std::size_t dim_compressed,
                                  std::size_t rounds, std::uint64_t seed) {
  if (k_strings < 2) throw ArgumentError("fingerprint_demo: need >= 2 strings");
  if (dim_compressed < 2) {
    throw ArgumentError("fingerprint_demo: compressed dimension must be >= 2");
  }

  RngStream root(seed, 0);
  RngStream setup = substream(root, 0);

  // Compress the k orthonormal tags; identity when no compression is asked
  // for.  Renormalising the projected vectors keeps them valid states.
  std::vector<std::vector<double>> fingerprints(k_strings);
  if (dim_compressed == k_strings) {
    for (std::size_t a = 0; a < k_strings; ++a) {
      fingerprints[a].assign(k_strings, 0.0);
      fingerprints[a][a] = 1.0;
    }
  } else {
    std::vector<double> g(dim_compressed * k_strings);
    for (auto& x : g) x = setup.next_gaussian();
    for (std::size_t a = 0; a < k_strings; ++a) {
      std::vector<double> column(dim_compressed);
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < dim_compressed; ++i) {
        column[i] = g[i * k_strings + a];
        norm_sq += column[i] * column[i];
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& x : column) x *= inv;
      fingerprints[a] = std::move(column);
    }
  }

  double max_abs_inner = 0.0;
  for (std::size_t a = 0; a < k_strings; ++a)
    for (std::size_t b = a + 1; b < k_strings; ++b) {
      double inner = 0.0;
      for (std::size_t i = 0; i < fingerprints[a].size(); ++i)
        inner += fingerprints[a][i] * fingerprints[b][i];
      max_abs_inner = std::max(max_abs_inner, std::abs(inner));
    }

  auto accept_prob = [&](std::size_t a, std::size_t b) {
    double inner = 0.0;
    for (std::size_t i = 0; i < fingerprints[a].size(); ++i)
      inner += fingerprints[a][i] * fingerprints[b][i];
    return 0.5 + 0.5 * inner * inner;
  };

  RngStream play = substream(root, 1);
  std::size_t equal_rounds = 0, equal_errors = 0;
  std::size_t distinct_rounds = 0, distinct_errors = 0;
  ExperimentReport report;
  report.csv_header = {"round", "kind", "a", "b", "outcome", "correct"};
  for (std::size_t round = 0; round < rounds; ++round) {
    const bool same = play.next_unit() < 0.5;
    std::size_t a = static_cast<std::size_t>(play.next_unit() * k_strings);
    if (a >= k_strings) a = k_strings - 1;
    std::size_t b;
    if (same) {
      b = a;
    } else {
      b = static_cast<std::size_t>(play.next_unit() * (k_strings - 1));
      if (b >= k_strings - 1) b = k_strings - 2;
      if (b >= a) ++b;
    }
    const double p = accept_prob(a, b);
    const bool accepted = play.next_unit() < p;
    const bool correct = (accepted == same);
    if (same) {
      ++equal_rounds;
      if (!correct) ++equal_errors;
    } else {
      ++distinct_rounds;
      if (!correct) ++distinct_errors;
    }
    report.trials.push_back(Json{{"round", round},
                                 {"kind", same ? "equal" : "distinct"},
                                 {"a", a},
                                 {"b", b},
                                 {"outcome", accepted ? "same" : "different"},
                                 {"correct", correct}});
    report.csv_rows.push_back({std::to_string(round),
                               same ? "equal" : "distinct", std::to_string(a),
                               std::to_string(b),
                               accepted ? "same" : "different",
                               correct ? "true" : "false"});
  }

  report.experiment_id = "fingerprint";
  report.seed = seed;
  report.params = Json{{"strings", k_strings},
                       {"compressed_dim", dim_compressed},
                       {"rounds", rounds}};
  const double eq_rate =
      equal_rounds == 0 ? 0.0
                        : static_cast<double>(equal_errors) /
                              static_cast<double>(equal_rounds);
  const double neq_rate =
      distinct_rounds == 0 ? 0.0
                           : static_cast<double>(distinct_errors) /
                                 static_cast<double>(distinct_rounds);
  report.aggregates = Json{{"max_abs_inner", max_abs_inner},
                           {"max_inner_sq", max_abs_inner * max_abs_inner},
                           {"equal_rounds", equal_rounds},
                           {"equal_error_rate", eq_rate},
                           {"distinct_rounds", distinct_rounds},
                           {"distinct_error_rate", neq_rate}};
  report.bounds = Json{{"worst_distinct_accept",
                        0.5 + 0.5 * max_abs_inner * max_abs_inner}};

  Verdict no_false_diff;
  no_false_diff.name = "identical-accepted";
  no_false_diff.status = (equal_errors == 0) ? "pass" : "fail";
  no_false_diff.details = Json{{"equal_errors", equal_errors}};
  report.verdicts.push_back(no_false_diff);
  return report;
}

ExperimentReport game_experiment(StateFamily family, std::size_t d,
                                 std::size_t r, std::size_t rounds,
                                 Strategy strategy, Adversary adversary,
                                 std::uint64_t seed) {
  RngStream root(seed, 0);
  RngStream setup = substream(root, 0);
  auto [rho, sigma] = make_state_pair(family, d, r, setup);

  GameSpec spec{rho, sigma, rounds, adversary, strategy, std::nullopt};
  RngStream play = substream(root, 1);
  std::vector<GameRoundTrace> trace;
  const GameResult result = equality_game_simulate(spec, play, &trace);

  ExperimentReport report;
  report.experiment_id = "game";
  report.seed = seed;
  report.params =
      Json{{"family", family_name(family)},
           {"d", d},
           {"r", r},
           {"rounds", rounds},
           {"strategy", strategy == Strategy::swap_test ? "swap-test"
                        : strategy == Strategy::optimal_m ? "optimal-m"
                                                          : "custom-m"},
           {"adversary", adversary == Adversary::fixed_u ? "fixed-u" : "haar-u"}};
  report.aggregates = Json{{"success_rate", result.success_rate},
                           {"std_error", result.std_error},
                           {"analytic_success", result.analytic_success},
                           {"bias", result.bias}};
  report.bounds = Json{{"analytic_success", result.analytic_success}};

  Verdict verdict;
  verdict.name = "matches-analytic";
  const double gap = std::abs(result.success_rate - result.analytic_success);
  verdict.status = (gap <= 4.0 * result.std_error + 1e-12) ? "pass" : "fail";
  verdict.details = Json{{"gap", gap}, {"std_error", result.std_error}};
  report.verdicts.push_back(verdict);

  report.csv_header = {"round", "preparation", "outcome", "correct"};
  for (const auto& t : trace) {
    report.trials.push_back(Json{{"round", t.round},
                                 {"preparation", t.preparation},
                                 {"outcome", t.outcome},
                                 {"correct", t.correct}});
    report.csv_rows.push_back({std::to_string(t.round), t.preparation,
                               t.outcome, t.correct ? "true" : "false"});
  }
  return report;
}

}  // namespace qembed
