// SPDX-License-Identifier: Apache-2.0
//
// icfade: finite-blocklength bounds for infinite constellations over fading
// Copyright (C) 2026 The icfade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ICFADE_MONTE_CARLO_HPP
#define ICFADE_MONTE_CARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace icfade {

enum class Method { ClosedForm, MonteCarlo };

inline const char* to_string(Method m) {
  return m == Method::ClosedForm ? "closed-form" : "monte-carlo";
}

/// A probability or NLD value together with its Monte-Carlo uncertainty.
/// std_error is zero exactly when the value came from a closed form.
struct BoundEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  Method method = Method::ClosedForm;

  static BoundEstimate closed_form(double v) { return {v, 0.0, 0, Method::ClosedForm}; }
  static BoundEstimate monte_carlo(double v, double se, std::size_t n) {
    return {v, se, n, Method::MonteCarlo};
  }
};

/// Monte-Carlo run parameters. Results depend on (seed, samples, chunk) only;
/// `threads` changes wall time, never output.
struct McConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  std::size_t chunk = 4096;
  unsigned threads = 1;
};

/// Estimators with a standard error reject fewer than 1000 samples.
inline void require_samples(const McConfig& mc, std::size_t minimum = 1000) {
  if (mc.samples < minimum) {
    throw std::invalid_argument("monte carlo needs at least " + std::to_string(minimum) +
                                " samples, got " + std::to_string(mc.samples));
  }
}

inline std::size_t chunk_count(const McConfig& mc) {
  return (mc.samples + mc.chunk - 1) / mc.chunk;
}

/// Runs `fn(chunk_index, begin, count)` for every chunk of [0, mc.samples),
/// possibly on several threads, and returns the per-chunk results in chunk
/// order. Callers reduce the returned vector sequentially.
template <typename Fn>
auto run_chunks(const McConfig& mc, Fn&& fn) {
  using Result = decltype(fn(std::size_t{}, std::size_t{}, std::size_t{}));
  if (mc.chunk == 0) throw std::invalid_argument("monte carlo chunk size must be positive");
  const std::size_t chunks = chunk_count(mc);
  std::vector<Result> out(chunks);
  auto work = [&](std::size_t c) {
    const std::size_t begin = c * mc.chunk;
    const std::size_t count = std::min(mc.chunk, mc.samples - begin);
    out[c] = fn(c, begin, count);
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, mc.threads), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) work(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          work(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

/// Fills one double per sample: `fn(chunk_index, out_span)` writes the
/// samples of that chunk.
template <typename Fn>
std::vector<double> generate_samples(const McConfig& mc, Fn&& fn) {
  std::vector<double> values(mc.samples);
  run_chunks(mc, [&](std::size_t c, std::size_t begin, std::size_t count) {
    fn(c, std::span<double>(values.data() + begin, count));
    return 0;
  });
  return values;
}

/// Sequential sums, used for order-fixed reductions.
struct SumPair {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  void merge(const SumPair& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double m = sum / n;
    return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
  }
  double std_error() const {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Sample mean and its standard error.
inline BoundEstimate mean_estimate(std::span<const double> xs) {
  // Two passes keep the variance well conditioned near 0 and 1.
  const double n = static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  const double m = s / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return BoundEstimate::monte_carlo(m, std::sqrt(var / n), xs.size());
}

/// Mean, variance and third absolute central moment of a sample, with
/// standard errors of the first two.
struct SampleMoments {
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  double third_abs = 0.0;
  double third_abs_se = 0.0;
  std::size_t count = 0;
};

inline SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments r;
  r.count = xs.size();
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples for moments");
  const double n = static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0, m6 = 0.0;
  for (double x : xs) {
    const double d = x - r.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * std::abs(d);
    m4 += d2 * d2;
    m6 += d2 * d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  m6 /= n;
  r.variance = m2 * n / (n - 1.0);
  r.mean_se = std::sqrt(r.variance / n);
  r.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  r.third_abs = m3;
  r.third_abs_se = std::sqrt(std::max(0.0, m6 - m3 * m3) / n);
  return r;
}

}  // namespace icfade

#endif  // ICFADE_MONTE_CARLO_HPP
