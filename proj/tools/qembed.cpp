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

// qembed: experiments and verifiers for quantum dimensionality reduction at
// desk scale.  Every run is fully determined by --seed; reports are
// byte-identical across reruns and worker counts.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qembed/errors.hpp"
#include "qembed/experiments.hpp"
#include "qembed/kernels.hpp"
#include "qembed/verify.hpp"

namespace {

using qembed::Json;

struct GlobalOptions {
  std::string seed_text = "42";
  std::string out_path;  // empty: stdout
  std::string format = "json";
  std::size_t workers = qembed::default_workers();
  bool dump = false;
  bool full = false;
  std::string timing = "none";  // "none" keeps reports byte-reproducible
  std::string kernel = "auto";
};

void add_global_flags(CLI::App* cmd, GlobalOptions* g) {
  cmd->add_option("--seed", g->seed_text, "64-bit seed, decimal or 0x-hex");
  cmd->add_option("--out", g->out_path, "write the report to this path");
  cmd->add_option("--format", g->format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--workers", g->workers,
                  "worker threads (never changes results)");
  cmd->add_flag("--dump", g->dump, "dump key operators to stderr");
  cmd->add_flag("--full", g->full, "include per-trial records in JSON");
  cmd->add_option("--timing", g->timing,
                  "wall: record elapsed seconds (breaks byte-reproducibility)")
      ->check(CLI::IsMember({"none", "wall"}));
  cmd->add_option("--kernel", g->kernel, "matrix kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

void emit(const std::string& text, const GlobalOptions& g) {
  if (g.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) throw qembed::ArgumentError("cannot open --out path: " + g.out_path);
  file << text;
}

int finish_report(qembed::ExperimentReport report, const GlobalOptions& g,
                  double elapsed_seconds) {
  if (g.timing == "wall") report.runtime_seconds = elapsed_seconds;
  if (g.format == "csv") {
    emit(report.to_csv(), g);
  } else {
    emit(report.to_json(g.full).dump(2) + "\n", g);
  }
  for (const auto& v : report.verdicts) {
    std::cerr << "[" << v.status << "] " << report.experiment_id << "/"
              << v.name << "\n";
  }
  return report.exit_code();
}

void dump_state_pair(const qembed::DensityMatrix& rho,
                     const qembed::DensityMatrix& sigma) {
  std::cerr << "# rho\n" << rho.matrix().debug_dump();
  std::cerr << "# sigma\n" << sigma.matrix().debug_dump();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum dimensionality-reduction experiments"};
  app.require_subcommand(1);

  GlobalOptions g;

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the identity/inequality verifiers");
  std::string lemma = "all";
  std::size_t verify_dim = 0;
  std::size_t verify_samples = 0;
  verify_cmd->add_option("--lemma", lemma, "lemma id or 'all'");
  verify_cmd->add_option("--dim", verify_dim, "override primary dimension");
  verify_cmd->add_option("--samples", verify_samples, "override sample count");
  add_global_flags(verify_cmd, &g);

  // game
  auto* game_cmd = app.add_subcommand("game", "equality-testing game");
  std::string game_family = "orthogonal-pure";
  std::size_t game_dim = 2, game_rank = 1, game_rounds = 100000;
  std::string game_strategy = "swap-test";
  std::string game_adversary = "fixed-u";
  game_cmd->add_option("--family", game_family, "state family");
  game_cmd->add_option("--dim", game_dim, "state dimension");
  game_cmd->add_option("--rank", game_rank, "state rank r");
  game_cmd->add_option("--rounds", game_rounds, "simulated rounds");
  game_cmd->add_option("--strategy", game_strategy, "swap-test or optimal-m")
      ->check(CLI::IsMember({"swap-test", "optimal-m"}));
  game_cmd->add_option("--adversary", game_adversary, "fixed-u or haar-u")
      ->check(CLI::IsMember({"fixed-u", "haar-u"}));
  add_global_flags(game_cmd, &g);

  // embed
  auto* embed_cmd =
      app.add_subcommand("embed", "trace-norm random-isometry embedding");
  qembed::EmbedParams embed_params;
  embed_params.d = 64;
  embed_params.r = 1;
  embed_params.epsilon = 0.5;
  embed_params.trials = 500;
  std::string embed_family = "orthogonal-pure";
  embed_cmd->add_option("--dim", embed_params.d, "source dimension d");
  embed_cmd->add_option("--rank", embed_params.r, "rank r of rho");
  embed_cmd->add_option("--epsilon", embed_params.epsilon, "distortion epsilon");
  embed_cmd->add_option("--delta", embed_params.delta, "failure probability delta");
  embed_cmd->add_option("--target-dim", embed_params.e,
                        "target dimension e (0: derive the smallest covered)");
  embed_cmd->add_option("--trials", embed_params.trials, "number of trials");
  embed_cmd->add_option("--family", embed_family, "state family");
  add_global_flags(embed_cmd, &g);

  // two-norm
  auto* two_cmd = app.add_subcommand("two-norm", "2-norm contraction average");
  std::size_t two_dim = 16, two_e = 4, two_trials = 10000, two_rank = 1;
  std::string two_family = "orthogonal-pure";
  two_cmd->add_option("--dim", two_dim, "source dimension d");
  two_cmd->add_option("--target-dim", two_e, "target dimension e");
  two_cmd->add_option("--trials", two_trials, "number of samples");
  two_cmd->add_option("--family", two_family, "state family");
  two_cmd->add_option("--rank", two_rank, "state rank r");
  add_global_flags(two_cmd, &g);

  // bounds
  auto* bounds_cmd =
      app.add_subcommand("bounds", "target-dimension lower-bound table");
  std::size_t bounds_dim = 8, bounds_rank = 1;
  double bounds_eps = 0.0, bounds_delta = 0.0;
  std::string bounds_family = "all";
  bounds_cmd->add_option("--dim", bounds_dim, "dimension d");
  bounds_cmd->add_option("--epsilon", bounds_eps, "distortion epsilon");
  bounds_cmd->add_option("--delta", bounds_delta, "failure probability delta");
  bounds_cmd->add_option("--family", bounds_family, "state family or 'all'");
  bounds_cmd->add_option("--rank", bounds_rank, "rank for a single family");
  add_global_flags(bounds_cmd, &g);

  // jl
  auto* jl_cmd = app.add_subcommand("jl", "classical random-projection baseline");
  std::size_t jl_points = 32, jl_dim = 1024, jl_trials = 20;
  double jl_eps = 0.5;
  std::vector<std::size_t> jl_targets = {8, 16, 32, 64};
  jl_cmd->add_option("--points", jl_points, "points per trial");
  jl_cmd->add_option("--dim", jl_dim, "source dimension");
  jl_cmd->add_option("--target-dims", jl_targets, "target dimensions")
      ->delimiter(',');
  jl_cmd->add_option("--epsilon", jl_eps, "distortion epsilon");
  jl_cmd->add_option("--trials", jl_trials, "trials per target dimension");
  add_global_flags(jl_cmd, &g);

  // fingerprint
  auto* fp_cmd = app.add_subcommand("fingerprint", "compressed equality testing");
  std::size_t fp_strings = 64, fp_dim = 32, fp_rounds = 1000;
  fp_cmd->add_option("--strings", fp_strings, "number of distinct tags");
  fp_cmd->add_option("--compressed-dim", fp_dim, "compressed dimension");
  fp_cmd->add_option("--rounds", fp_rounds, "referee rounds");
  add_global_flags(fp_cmd, &g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 3;
  }

  try {
    qembed::kernels::select(g.kernel);
    const std::uint64_t seed = qembed::parse_seed(g.seed_text);
    Timer timer;

    if (*verify_cmd) {
      qembed::VerifyOptions options;
      options.seed = seed;
      options.workers = g.workers;
      if (verify_dim > 0) options.dim = verify_dim;
      if (verify_samples > 0) options.samples = verify_samples;
      const std::vector<qembed::LemmaRecord> records =
          qembed::run_verify(lemma, options);

      bool any_fail = false;
      Json array = Json::array();
      std::vector<std::string> csv;
      csv.push_back(qembed::csv_line({"lemma_id", "params", "seed", "stream_id",
                                      "estimate", "std_error", "bound",
                                      "verdict"}));
      for (const auto& r : records) {
        if (r.verdict == "fail") any_fail = true;
        array.push_back(qembed::lemma_record_to_json(r));
        csv.push_back(qembed::csv_line(
            {r.lemma_id, r.params.dump(), qembed::u64_string(r.seed),
             qembed::u64_string(r.stream_id), r.estimate.dump(),
             r.std_error.dump(), r.bound.dump(), r.verdict}));
        std::cerr << "[" << r.verdict << "] " << r.lemma_id << " "
                  << r.params.dump() << "\n";
      }
      if (g.format == "csv") {
        std::string text;
        for (const auto& line : csv) text += line;
        emit(text, g);
      } else {
        emit(array.dump(2) + "\n", g);
      }
      if (g.timing == "wall") {
        std::cerr << "elapsed: " << timer.seconds() << " s\n";
      }
      return any_fail ? 2 : 0;
    }

    if (*game_cmd) {
      const auto family = qembed::parse_family(game_family);
      const auto strategy = (game_strategy == "swap-test")
                                ? qembed::Strategy::swap_test
                                : qembed::Strategy::optimal_m;
      const auto adversary = (game_adversary == "fixed-u")
                                 ? qembed::Adversary::fixed_u
                                 : qembed::Adversary::haar_u;
      if (g.dump) {
        qembed::RngStream setup = substream(qembed::RngStream(seed, 0), 0);
        const auto [rho, sigma] =
            qembed::make_state_pair(family, game_dim, game_rank, setup);
        dump_state_pair(rho, sigma);
      }
      auto report = qembed::game_experiment(family, game_dim, game_rank,
                                            game_rounds, strategy, adversary,
                                            seed);
      return finish_report(std::move(report), g, timer.seconds());
    }

    if (*embed_cmd) {
      embed_params.family = qembed::parse_family(embed_family);
      if (g.dump) {
        qembed::RngStream setup = substream(qembed::RngStream(seed, 0), 0);
        const auto [rho, sigma] = qembed::make_state_pair(
            embed_params.family, embed_params.d, embed_params.r, setup);
        dump_state_pair(rho, sigma);
      }
      auto report = qembed::embed_experiment(embed_params, seed, g.workers);
      return finish_report(std::move(report), g, timer.seconds());
    }

    if (*two_cmd) {
      auto report = qembed::two_norm_experiment(
          two_dim, two_e, two_trials, qembed::parse_family(two_family),
          two_rank, seed, g.workers);
      return finish_report(std::move(report), g, timer.seconds());
    }

    if (*bounds_cmd) {
      auto report = qembed::bounds_table_experiment(
          bounds_dim, bounds_eps, bounds_delta, bounds_family, bounds_rank,
          seed);
      return finish_report(std::move(report), g, timer.seconds());
    }

    if (*jl_cmd) {
      auto report = qembed::jl_baseline(jl_points, jl_dim, jl_targets, jl_eps,
                                        jl_trials, seed, g.workers);
      return finish_report(std::move(report), g, timer.seconds());
    }

    if (*fp_cmd) {
      auto report =
          qembed::fingerprint_demo(fp_strings, fp_dim, fp_rounds, seed);
      return finish_report(std::move(report), g, timer.seconds());
    }

    std::cerr << "no subcommand\n";
    return 3;
  } catch (const qembed::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const qembed::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
