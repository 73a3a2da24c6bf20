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

#include "qembed/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "qembed/errors.hpp"

namespace qembed {
namespace {

constexpr std::size_t kChunkSize = 512;

double finalize_std_error(double sum, double sum_sq, std::size_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double var_num = sum_sq - static_cast<double>(n) * mean * mean;
  const double variance = std::max(0.0, var_num / static_cast<double>(n - 1));
  return std::sqrt(variance / static_cast<double>(n));
}

// Pairwise in-order reduction of chunk partials.
template <typename T, typename Merge>
T reduce_pairwise(std::vector<T> items, Merge merge) {
  while (items.size() > 1) {
    std::vector<T> next;
    next.reserve((items.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < items.size(); i += 2) {
      next.push_back(merge(std::move(items[i]), std::move(items[i + 1])));
    }
    if (items.size() % 2 == 1) next.push_back(std::move(items.back()));
    items = std::move(next);
  }
  return std::move(items.front());
}

}  // namespace

std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<std::size_t>(hw);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

MonteCarloEstimate monte_carlo_scalar(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers, const std::function<double(RngStream&)>& draw) {
  if (samples < 2) throw ArgumentError("monte_carlo_scalar: samples must be >= 2");

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> partials(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(samples, begin + kChunkSize);
    Partial p;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream stream = substream(root, first_index + i);
      const double x = draw(stream);
      p.sum += x;
      p.sum_sq += x * x;
    }
    partials[c] = p;
  });
  const Partial total =
      reduce_pairwise(std::move(partials), [](Partial a, const Partial& b) {
        a.sum += b.sum;
        a.sum_sq += b.sum_sq;
        return a;
      });

  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = total.sum / static_cast<double>(samples);
  est.std_error = finalize_std_error(total.sum, total.sum_sq, samples);
  return est;
}

MonteCarloEstimate monte_carlo_frequency(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers, const std::function<bool(RngStream&)>& draw) {
  return monte_carlo_scalar(samples, root, first_index, workers,
                            [&](RngStream& stream) {
                              return draw(stream) ? 1.0 : 0.0;
                            });
}

double MatrixEstimate::max_std_error() const {
  double best = 0.0;
  for (double se : std_error) best = std::max(best, se);
  return best;
}

MatrixEstimate monte_carlo_matrix(
    std::size_t samples, const RngStream& root, std::uint64_t first_index,
    std::size_t workers,
    const std::function<ComplexMatrix(RngStream&)>& draw) {
  if (samples < 2) throw ArgumentError("monte_carlo_matrix: samples must be >= 2");

  struct Partial {
    ComplexMatrix sum;
    std::vector<double> sum_abs_sq;
    bool used = false;
  };
  const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> partials(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(samples, begin + kChunkSize);
    Partial p;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream stream = substream(root, first_index + i);
      const ComplexMatrix x = draw(stream);
      if (!p.used) {
        p.sum = ComplexMatrix(x.rows(), x.cols());
        p.sum_abs_sq.assign(x.rows() * x.cols(), 0.0);
        p.used = true;
      }
      p.sum += x;
      const Complex* data = x.data();
      for (std::size_t k = 0; k < p.sum_abs_sq.size(); ++k)
        p.sum_abs_sq[k] += std::norm(data[k]);
    }
    partials[c] = std::move(p);
  });
  const Partial total =
      reduce_pairwise(std::move(partials), [](Partial a, const Partial& b) {
        a.sum += b.sum;
        for (std::size_t k = 0; k < a.sum_abs_sq.size(); ++k)
          a.sum_abs_sq[k] += b.sum_abs_sq[k];
        return a;
      });

  MatrixEstimate est;
  est.samples = samples;
  est.mean = total.sum;
  const double inv_n = 1.0 / static_cast<double>(samples);
  est.mean *= Complex(inv_n, 0.0);
  est.std_error.resize(total.sum_abs_sq.size());
  const Complex* mean_data = est.mean.data();
  for (std::size_t k = 0; k < est.std_error.size(); ++k) {
    const double var_num =
        total.sum_abs_sq[k] - static_cast<double>(samples) * std::norm(mean_data[k]);
    const double variance =
        std::max(0.0, var_num / static_cast<double>(samples - 1));
    est.std_error[k] = std::sqrt(variance * inv_n);
  }
  return est;
}

BoundCheck check_bound(const MonteCarloEstimate& estimate, double bound_value,
                       BoundDirection direction, double sigma_margin) {
  BoundCheck check;
  check.estimate = estimate;
  check.bound_value = bound_value;
  check.direction = direction;
  check.sigma_margin = sigma_margin;
  const double allowance = sigma_margin * estimate.std_error +
                           1e-12 * std::max(1.0, std::abs(bound_value));
  if (direction == BoundDirection::less_equal) {
    check.pass = estimate.mean <= bound_value + allowance;
  } else {
    check.pass = estimate.mean >= bound_value - allowance;
  }
  return check;
}

}  // namespace qembed
