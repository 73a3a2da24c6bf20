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

#pragma once

#include <functional>
#include <vector>

#include "qembed/complex_matrix.hpp"
#include "qembed/rng.hpp"

namespace qembed {

// Sample mean with std_error = sample standard deviation / sqrt(samples).
struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Entrywise mean of matrix-valued samples; std_error holds the per-entry
// standard error of the complex deviations, row-major.
struct MatrixEstimate {
  ComplexMatrix mean;
  std::vector<double> std_error;
  std::size_t samples = 0;

  double max_std_error() const;
};

enum class BoundDirection { less_equal, greater_equal };

// Pass/fail comparison of a Monte Carlo estimate against an analytic bound,
// with a sigma_margin * std_error statistical allowance (plus a small
// absolute epsilon so exact-equality cases are not lost to round-off).
struct BoundCheck {
  MonteCarloEstimate estimate;
  double bound_value = 0.0;
  BoundDirection direction = BoundDirection::less_equal;
  double sigma_margin = 3.0;
  bool pass = false;
};

BoundCheck check_bound(const MonteCarloEstimate& estimate, double bound_value,
                       BoundDirection direction, double sigma_margin = 3.0);

// Deterministic parallel Monte Carlo.  Sample i draws only from
// substream(root, first_index + i); samples are accumulated in fixed-size
// chunks and the chunk partials reduced pairwise in index order, so the
// result is byte-identical for every worker count.
MonteCarloEstimate monte_carlo_scalar(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers, const std::function<double(RngStream&)>& draw);

MatrixEstimate monte_carlo_matrix(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers,
    const std::function<ComplexMatrix(RngStream&)>& draw);

// Fraction of samples for which the predicate holds, with binomial
// std_error.
MonteCarloEstimate monte_carlo_frequency(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers, const std::function<bool(RngStream&)>& draw);

// Runs fn(i) for i in [0, count) across `workers` threads.  Work is handed
// out in fixed chunks; fn must write only to its own slot of any shared
// output.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

std::size_t default_workers();

}  // namespace qembed
