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

#include "qembed/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qembed/errors.hpp"
#include "qembed/experiments.hpp"

namespace qembed {
namespace {

// Stable substream indices per lemma: single-lemma runs reproduce the same
// records they produce under "all".
enum LemmaIndex : std::uint64_t {
  kTwirl = 0,
  kSecondMoment = 1,
  kFourthMoment = 2,
  kUniformPovm = 3,
  kRandomBasis = 4,
  kFlipBound = 5,
  kAvgContraction = 6,
  kProjSupp = 7,
  kProjConc = 8,
  // Shared by the two moment lemmas so both see the same deltas.
  kMomentCases = 32,
};

HermitianOperator orthogonal_pure_delta(std::size_t d) {
  ComplexMatrix m(d, d);
  m(0, 0) = Complex(1.0, 0.0);
  m(1, 1) = Complex(-1.0, 0.0);
  return HermitianOperator(m);
}

HermitianOperator random_traceless_delta(std::size_t d, RngStream& rng) {
  const DensityMatrix rho = random_density(d, d, rng);
  const DensityMatrix sigma = random_density(d, d, rng);
  return state_difference(rho, sigma);
}

LemmaRecord base_record(const std::string& id, std::uint64_t seed,
                        const RngStream& stream) {
  LemmaRecord record;
  record.lemma_id = id;
  record.seed = seed;
  record.stream_id = stream.stream_id();
  return record;
}

void run_twirl(const VerifyOptions& opt, const RngStream& root,
               std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(200000);
  std::vector<std::size_t> dims;
  if (opt.dim.has_value()) {
    dims.push_back(*opt.dim);
  } else {
    dims = {2, 3};
  }
  const RngStream lemma_root = substream(root, kTwirl);
  for (std::size_t case_index = 0; case_index < dims.size(); ++case_index) {
    const std::size_t d = dims[case_index];
    const RngStream case_root = substream(lemma_root, case_index);
    const HermitianOperator delta = orthogonal_pure_delta(d);
    const MatrixEstimate estimate =
        twirl_estimate(delta, d, samples, case_root, opt.workers);
    const ComplexMatrix closed = twirl_closed_form(delta, d);

    double max_diff = 0.0;
    bool all_within = true;
    for (std::size_t i = 0; i < closed.rows(); ++i)
      for (std::size_t j = 0; j < closed.cols(); ++j) {
        const double diff = std::abs(estimate.mean(i, j) - closed(i, j));
        const double se = estimate.std_error[i * closed.cols() + j];
        max_diff = std::max(max_diff, diff);
        if (diff > std::max(5e-3, 4.0 * se)) all_within = false;
      }

    LemmaRecord record = base_record("twirl", opt.seed, case_root);
    record.params = Json{{"d", d},
                         {"samples", samples},
                         {"state_family", "orthogonal-pure"}};
    record.estimate = max_diff;
    record.std_error = estimate.max_std_error();
    record.bound = 5e-3;
    record.verdict = all_within ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

void run_moments(const VerifyOptions& opt, const RngStream& root, bool fourth,
                 std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(100000);
  const std::size_t cases = 20;
  const RngStream case_pool = substream(root, kMomentCases);
  const char* id = fourth ? "fourth-moment" : "second-moment";

  double worst_exact_over_bound = 0.0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = opt.dim.value_or(2 + (c % 5));
    RngStream case_root = substream(case_pool, c);
    RngStream delta_rng = substream(case_root, 0);
    const HermitianOperator delta = random_traceless_delta(d, delta_rng);
    const RngStream mc_root = substream(case_root, fourth ? 2 : 1);

    const double exact = fourth ? fourth_moment_exact(delta, d)
                                : second_moment_exact(delta, d);
    const MonteCarloEstimate est =
        fourth ? fourth_moment_estimate(delta, d, samples, mc_root, opt.workers)
               : second_moment_estimate(delta, d, samples, mc_root, opt.workers);

    LemmaRecord record = base_record(id, opt.seed, case_root);
    record.params = Json{{"case", c}, {"d", d}, {"samples", samples}};
    record.estimate = est.mean;
    record.std_error = est.std_error;
    record.bound = exact;
    record.verdict =
        (std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-15) ? "pass"
                                                                    : "fail";
    out.push_back(std::move(record));

    if (fourth) {
      const double cap = fourth_moment_bound(delta, d);
      worst_exact_over_bound =
          std::max(worst_exact_over_bound, exact / cap);
    }
  }

  if (fourth) {
    LemmaRecord record = base_record("fourth-moment-vs-cap", opt.seed,
                                     substream(case_pool, cases));
    record.params = Json{{"cases", cases}};
    record.estimate = worst_exact_over_bound;
    record.std_error = 0.0;
    record.bound = 1.0;
    record.verdict = (worst_exact_over_bound <= 1.0 + 1e-12) ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

void run_uniform_povm(const VerifyOptions& opt, const RngStream& root,
                      std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(10000);
  const RngStream lemma_root = substream(root, kUniformPovm);

  {
    // Qubit orthogonal pure pair: the quantity evaluates to exactly 1.
    const RngStream case_root = substream(lemma_root, 0);
    const UniformPovmResult r =
        uniform_povm_quantity(orthogonal_pure_delta(2), 2, samples, case_root,
                              opt.workers);
    LemmaRecord record = base_record("uniform-povm", opt.seed, case_root);
    record.params = Json{{"case", "qubit-orthogonal-pure"},
                         {"d", 2},
                         {"samples", samples}};
    record.estimate = r.q.mean;
    record.std_error = r.q.std_error;
    record.bound = 1.0;
    record.verdict = (std::abs(r.q.mean - 1.0) <= 0.01) ? "pass" : "fail";
    out.push_back(std::move(record));
  }

  static const std::size_t kDims[] = {2, 3, 4, 6, 8, 12, 16};
  const std::size_t cases = 50;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = opt.dim.value_or(kDims[c % 7]);
    RngStream case_root = substream(lemma_root, c + 1);
    RngStream delta_rng = substream(case_root, 0);
    const HermitianOperator delta = random_traceless_delta(d, delta_rng);
    const RngStream mc_root = substream(case_root, 1);
    const UniformPovmResult r =
        uniform_povm_quantity(delta, d, samples, mc_root, opt.workers);

    LemmaRecord record = base_record("uniform-povm", opt.seed, case_root);
    record.params = Json{{"case", c}, {"d", d}, {"samples", samples}};
    record.estimate = r.q.mean;
    record.std_error = r.q.std_error;
    record.bound = Json{{"lower", r.lower_bound},
                        {"upper", r.upper_bound},
                        {"moment_lower", r.moment_lower}};
    record.verdict = (r.sandwich_pass && r.moment_lower_pass) ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

void run_random_basis(const VerifyOptions& opt, const RngStream& root,
                      std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(10000);
  const RngStream lemma_root = substream(root, kRandomBasis);

  {
    // Qubit orthogonal pure pair: expected bias is exactly 1/2.
    const RngStream case_root = substream(lemma_root, 0);
    const MonteCarloEstimate bias = random_basis_bias(
        orthogonal_pure_delta(2), 2, samples, case_root, opt.workers);
    LemmaRecord record = base_record("random-basis", opt.seed, case_root);
    record.params = Json{{"case", "qubit-orthogonal-pure"},
                         {"d", 2},
                         {"samples", samples}};
    record.estimate = bias.mean;
    record.std_error = bias.std_error;
    record.bound = 0.5;
    record.verdict = (std::abs(bias.mean - 0.5) <= 3.0 * bias.std_error + 1e-12)
                         ? "pass"
                         : "fail";
    out.push_back(std::move(record));
  }

  {
    // Agreement with half the uniform-POVM quantity on the same delta.
    const std::size_t d = opt.dim.value_or(4);
    RngStream case_root = substream(lemma_root, 1);
    RngStream delta_rng = substream(case_root, 0);
    const HermitianOperator delta = random_traceless_delta(d, delta_rng);
    const MonteCarloEstimate bias = random_basis_bias(
        delta, d, samples, substream(case_root, 1), opt.workers);
    const UniformPovmResult povm = uniform_povm_quantity(
        delta, d, samples, substream(case_root, 2), opt.workers);
    const double target = povm.q.mean / 2.0;
    const double sigma = std::sqrt(bias.std_error * bias.std_error +
                                   0.25 * povm.q.std_error * povm.q.std_error);
    LemmaRecord record = base_record("random-basis", opt.seed, case_root);
    record.params =
        Json{{"case", "matches-half-uniform-povm"}, {"d", d}, {"samples", samples}};
    record.estimate = bias.mean;
    record.std_error = bias.std_error;
    record.bound = target;
    record.verdict =
        (std::abs(bias.mean - target) <= 3.0 * sigma + 1e-12) ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

void run_flip_bound(const VerifyOptions& opt, const RngStream& root,
                    std::vector<LemmaRecord>& out) {
  const RngStream lemma_root = substream(root, kFlipBound);
  struct DimPair {
    std::size_t d, e;
  };
  std::vector<DimPair> pairs;
  if (opt.dim.has_value()) {
    pairs.push_back({*opt.dim, std::max<std::size_t>(1, *opt.dim / 2)});
  } else {
    pairs = {{4, 2}, {8, 3}, {8, 4}, {16, 4}};
  }
  const std::size_t per_pair = opt.samples.value_or(25);

  std::size_t case_index = 0;
  for (const auto& [d, e] : pairs) {
    RngStream case_root = substream(lemma_root, case_index++);
    const std::size_t env = (d + e - 1) / e;
    double max_flip = 0.0;
    double max_gap = 0.0;
    for (std::size_t k = 0; k < per_pair; ++k) {
      RngStream rng = substream(case_root, k);
      const Isometry v = haar_isometry(d, e * env, rng);
      const KrausChannel ch = embedding_channel(v, d, e);
      const double flip = flip_functional(ch);
      const double gram = flip_functional_gram(ch);
      max_flip = std::max(max_flip, flip);
      max_gap = std::max(max_gap, std::abs(flip - gram));
    }
    const double bound = static_cast<double>(d) * static_cast<double>(e);
    LemmaRecord record = base_record("flip-bound", opt.seed, case_root);
    record.params = Json{{"family", "random-embedding"},
                         {"d", d},
                         {"e", e},
                         {"channels", per_pair}};
    record.estimate = Json{{"max_flip", max_flip}, {"max_two_path_gap", max_gap}};
    record.std_error = 0.0;
    record.bound = bound;
    record.verdict =
        (max_flip <= bound + 1e-6 && max_gap <= 1e-8) ? "pass" : "fail";
    out.push_back(std::move(record));
  }

  for (std::size_t d : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
    const KrausChannel ch = KrausChannel::identity_channel(d);
    const double flip = flip_functional(ch);
    const double expected = static_cast<double>(d) * static_cast<double>(d);
    LemmaRecord record =
        base_record("flip-bound", opt.seed, substream(lemma_root, case_index++));
    record.params = Json{{"family", "identity"}, {"d", d}, {"e", d}};
    record.estimate = flip;
    record.std_error = 0.0;
    record.bound = expected;
    record.verdict = (std::abs(flip - expected) <= 1e-6) ? "pass" : "fail";
    out.push_back(std::move(record));
  }

  for (const auto& [d, e] : pairs) {
    const KrausChannel ch = KrausChannel::depolarizing(d, e);
    const double flip = flip_functional(ch);
    const double closed = static_cast<double>(d) / static_cast<double>(e);
    const double bound = static_cast<double>(d) * static_cast<double>(e);
    LemmaRecord record =
        base_record("flip-bound", opt.seed, substream(lemma_root, case_index++));
    record.params = Json{{"family", "depolarizing"}, {"d", d}, {"e", e}};
    record.estimate = flip;
    record.std_error = 0.0;
    record.bound = bound;
    record.verdict =
        (flip <= bound + 1e-6 && std::abs(flip - closed) <= 1e-8) ? "pass"
                                                                  : "fail";
    out.push_back(std::move(record));
  }
}

void run_avg_contraction(const VerifyOptions& opt, const RngStream& root,
                         std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(10000);
  const RngStream lemma_root = substream(root, kAvgContraction);
  struct DimPair {
    std::size_t d, e;
  };
  std::vector<DimPair> pairs;
  if (opt.dim.has_value()) {
    pairs.push_back({*opt.dim, std::max<std::size_t>(1, *opt.dim / 2)});
  } else {
    pairs = {{8, 2}, {8, 4}, {16, 4}};
  }

  std::size_t case_index = 0;
  for (const auto& [d, e] : pairs) {
    RngStream case_root = substream(lemma_root, case_index++);
    RngStream channel_rng = substream(case_root, 0);
    const std::size_t env = (d + e - 1) / e;
    const Isometry v = haar_isometry(d, e * env, channel_rng);
    const KrausChannel ch = embedding_channel(v, d, e);
    RngStream pair_rng = substream(case_root, 1);
    const auto [rho, sigma] =
        make_state_pair(StateFamily::orthogonal_pure, d, 1, pair_rng);

    const BoundCheck check = avg_contraction_check(
        ch, rho, sigma, samples, substream(case_root, 2), opt.workers);

    LemmaRecord record = base_record("avg-contraction", opt.seed, case_root);
    record.params = Json{{"d", d},
                         {"e", e},
                         {"samples", samples},
                         {"state_family", "orthogonal-pure"}};
    record.estimate = check.estimate.mean;
    record.std_error = check.estimate.std_error;
    record.bound = check.bound_value;
    record.verdict = check.pass ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

void run_projsupp(const VerifyOptions& opt, const RngStream& root,
                  std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(10000);
  const std::size_t dim_a = opt.dim.value_or(4);
  const std::size_t dim_b = 3;
  const std::size_t rank_p = 2;
  const RngStream lemma_root = substream(root, kProjSupp);

  std::vector<double> violations(samples);
  parallel_for(samples, opt.workers, [&](std::size_t i) {
    RngStream rng = substream(lemma_root, i);
    double violation = 0.0;
    projsupp_check(dim_a, dim_b, rank_p, rng, &violation);
    violations[i] = violation;
  });
  double max_violation = violations.empty() ? 0.0 : violations[0];
  for (double v : violations) max_violation = std::max(max_violation, v);

  LemmaRecord record = base_record("proj-supp", opt.seed, lemma_root);
  record.params = Json{{"dim_a", dim_a},
                       {"dim_b", dim_b},
                       {"rank_p", rank_p},
                       {"instances", samples}};
  record.estimate = max_violation;
  record.std_error = 0.0;
  record.bound = 1e-10;
  record.verdict = (max_violation <= 1e-10) ? "pass" : "fail";
  out.push_back(std::move(record));
}

void run_projconc(const VerifyOptions& opt, const RngStream& root,
                  std::vector<LemmaRecord>& out) {
  const std::size_t samples = opt.samples.value_or(10000);
  const std::size_t d = opt.dim.value_or(32);
  const RngStream lemma_root = substream(root, kProjConc);

  struct Case {
    std::size_t t;
    double delta;
    const char* label;
  };
  const Case cases[] = {{std::min<std::size_t>(4, d), 1.0, "main"},
                        {std::min<std::size_t>(4, d), 0.0, "delta-zero"},
                        {d, 1.0, "full-rank"}};
  std::size_t case_index = 0;
  for (const Case& c : cases) {
    const RngStream case_root = substream(lemma_root, case_index++);
    const BoundCheck check =
        projconc_tail(d, c.t, c.delta, samples, case_root, opt.workers);
    LemmaRecord record = base_record("proj-conc", opt.seed, case_root);
    record.params = Json{{"case", c.label},
                         {"d", d},
                         {"t", c.t},
                         {"delta", c.delta},
                         {"samples", samples}};
    record.estimate = check.estimate.mean;
    record.std_error = check.estimate.std_error;
    record.bound = check.bound_value;
    record.verdict = check.pass ? "pass" : "fail";
    out.push_back(std::move(record));
  }
}

}  // namespace

Json lemma_record_to_json(const LemmaRecord& record) {
  Json out = Json::object();
  out["lemma_id"] = record.lemma_id;
  out["params"] = record.params;
  out["seed"] = Json{{"seed", u64_string(record.seed)},
                     {"stream_id", u64_string(record.stream_id)}};
  out["estimate"] = record.estimate;
  out["std_error"] = record.std_error;
  out["bound"] = record.bound;
  out["verdict"] = record.verdict;
  return out;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {
      "twirl",      "second-moment", "fourth-moment",
      "uniform-povm", "random-basis", "flip-bound",
      "avg-contraction", "proj-supp", "proj-conc"};
  return ids;
}

std::vector<LemmaRecord> run_verify(const std::string& lemma,
                                    const VerifyOptions& options) {
  const RngStream root(options.seed, 0);
  std::vector<LemmaRecord> records;

  const bool all = (lemma == "all");
  auto wants = [&](const char* id) { return all || lemma == id; };
  bool matched = false;

  if (wants("twirl")) {
    run_twirl(options, root, records);
    matched = true;
  }
  if (wants("second-moment")) {
    run_moments(options, root, /*fourth=*/false, records);
    matched = true;
  }
  if (wants("fourth-moment")) {
    run_moments(options, root, /*fourth=*/true, records);
    matched = true;
  }
  if (wants("uniform-povm")) {
    run_uniform_povm(options, root, records);
    matched = true;
  }
  if (wants("random-basis")) {
    run_random_basis(options, root, records);
    matched = true;
  }
  if (wants("flip-bound")) {
    run_flip_bound(options, root, records);
    matched = true;
  }
  if (wants("avg-contraction")) {
    run_avg_contraction(options, root, records);
    matched = true;
  }
  if (wants("proj-supp")) {
    run_projsupp(options, root, records);
    matched = true;
  }
  if (wants("proj-conc")) {
    run_projconc(options, root, records);
    matched = true;
  }

  if (!matched) {
    throw ArgumentError("unknown lemma id: " + lemma +
                        " (use one of the documented ids or 'all')");
  }
  return records;
}

}  // namespace qembed
