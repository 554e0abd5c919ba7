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

#ifndef ICFADE_SIMULATOR_HPP
#define ICFADE_SIMULATOR_HPP

// Desk-scale check of the DT bound: draw cube codebooks from the random
// coding ensemble, send them over the fading channel and decode with the
// threshold rule "lowest index j with i(c_j; y, h) > ln((M - 1) / 2)".
// Tiling into an infinite constellation is never materialized; it enters
// only through tiled_nld and tiled_error_budget.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icfade/achievability.hpp"
#include "icfade/analysis.hpp"
#include "icfade/fading.hpp"
#include "icfade/monte_carlo.hpp"
#include "icfade/rng.hpp"
#include "icfade/special.hpp"

namespace icfade {

inline constexpr std::size_t kMaxCodebookCoordinates = 100'000'000;

/// M codewords with i.i.d. U(-a/2, a/2) coordinates, stored row-major.
/// Codewords come from one sequential stream, so the codebook for M' > M
/// with the same seed starts with the codebook for M.
struct Codebook {
  std::size_t n = 0;
  std::size_t m = 0;
  double a = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> points;

  std::span<const double> codeword(std::size_t j) const {
    return std::span<const double>(points.data() + j * n, n);
  }
};

inline Codebook sample_codebook(std::size_t n, std::size_t m, double a, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("sample_codebook: n and M must be at least 1");
  if (!(a > 0.0)) throw std::invalid_argument("sample_codebook: cube side a must be positive");
  if (m > kMaxCodebookCoordinates / n) {
    throw std::length_error("sample_codebook: M*n exceeds the 1e8 coordinate limit");
  }
  Codebook cb{n, m, a, seed, std::vector<double>(n * m)};
  Rng rng(seed, Stream::Codebook);
  for (double& x : cb.points) x = rng.uniform(-0.5 * a, 0.5 * a);
  return cb;
}

enum class Decoder {
  DtThreshold,           ///< threshold rule, squared-distance fast path
  DtThresholdReference,  ///< threshold rule, full information density per codeword
  MaximumLikelihood,     ///< nearest codeword in the faded domain
};

struct SimOptions {
  Decoder decoder = Decoder::DtThreshold;
  std::size_t chunk = 1024;
  unsigned threads = 1;
};

namespace detail {

// Returns true when the trial is decoded in error.
inline bool decode_trial(const Codebook& cb, std::size_t sent, std::span<const double> y,
                         std::span<const double> h, double sigma, double log_gamma,
                         Decoder decoder) {
  const std::size_t n = cb.n;
  if (decoder == Decoder::MaximumLikelihood) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cb.m; ++j) {
      const double* c = cb.points.data() + j * n;
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double r = y[k] - h[k] * c[k];
        d += r * r;
      }
      if (d < best_d) best_d = d, best = j;
    }
    return best != sent;
  }
  if (decoder == Decoder::DtThresholdReference) {
    for (std::size_t j = 0; j <= sent; ++j) {
      const auto c = cb.codeword(j);
      double info = 0.0;
      for (std::size_t k = 0; k < n; ++k) info += information_density(c[k], y[k], h[k], cb.a, sigma);
      if (info > log_gamma) return j != sent;
    }
    return true;
  }
  // i(c_j; y, h) = base - ||y - h c_j||^2 / (2 sigma^2): the output-density
  // part does not depend on the codeword.
  double base = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    base += std::log(cb.a * h[k] / sigma) - 0.5 * std::log(2.0 * std::numbers::pi) +
            information_density_error_term(y[k], h[k], cb.a, sigma);
  }
  if (base <= log_gamma) return true;  // no codeword can cross
  const double radius2 = 2.0 * sigma * sigma * (base - log_gamma);
  for (std::size_t j = 0; j <= sent; ++j) {
    const double* c = cb.points.data() + j * n;
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = y[k] - h[k] * c[k];
      d += r * r;
    }
    if (d < radius2) return j != sent;
  }
  return true;
}

}  // namespace detail

/// Error rate of one codebook, averaged over uniformly chosen messages,
/// fading and noise. Message, fading and noise have separate streams.
inline BoundEstimate simulate_dt_error(const Codebook& cb, const FadingModel& model,
                                       const ChannelParams& params, std::size_t trials,
                                       std::uint64_t seed, const SimOptions& opt = {}) {
  params.validate();
  if (params.complex) throw std::invalid_argument("simulator: real model only");
  if (trials < 1000) throw std::invalid_argument("simulator: needs at least 1000 trials");
  if (cb.m == 1 && opt.decoder != Decoder::MaximumLikelihood) {
    return BoundEstimate::closed_form(0.0);
  }
  const double sigma = params.sigma();
  const double log_gamma = dt_log_gamma(cb.m);
  const McConfig mc{seed, trials, opt.chunk, opt.threads};
  const auto counts = run_chunks(mc, [&](std::size_t c, std::size_t, std::size_t count) {
    Rng message(seed, Stream::Message, c);
    Rng fading(seed, Stream::Fading, c);
    Rng noise(seed, Stream::Noise, c);
    std::vector<double> y(cb.n), h(cb.n);
    std::size_t errors = 0;
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t sent = message.below(cb.m);
      const auto x = cb.codeword(sent);
      for (std::size_t k = 0; k < cb.n; ++k) {
        h[k] = model.draw(fading);
        y[k] = h[k] * x[k] + sigma * noise.normal();
      }
      errors += detail::decode_trial(cb, sent, y, h, sigma, log_gamma, opt.decoder);
    }
    return errors;
  });
  std::size_t errors = 0;
  for (std::size_t e : counts) errors += e;
  const double p = static_cast<double>(errors) / static_cast<double>(trials);
  return BoundEstimate::monte_carlo(p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)),
                                    trials);
}

/// Simulated error averaged over independently drawn codebooks. The
/// standard error is taken across codebooks, so it covers codebook-to-
/// codebook spread as well as trial noise.
struct EnsembleResult {
  BoundEstimate mean;
  std::vector<BoundEstimate> per_codebook;
};

inline std::uint64_t codebook_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (index + 1);
  return splitmix64(s);
}

inline EnsembleResult simulate_ensemble(std::size_t n, std::size_t m, double a,
                                        const FadingModel& model, const ChannelParams& params,
                                        std::size_t codebooks, std::size_t trials,
                                        std::uint64_t seed, const SimOptions& opt = {}) {
  if (codebooks < 2) throw std::invalid_argument("simulate_ensemble: needs at least 2 codebooks");
  EnsembleResult out;
  std::vector<double> rates;
  for (std::size_t k = 0; k < codebooks; ++k) {
    const Codebook cb = sample_codebook(n, m, a, codebook_seed(seed, k));
    out.per_codebook.push_back(
        simulate_dt_error(cb, model, params, trials, codebook_seed(~seed, k), opt));
    rates.push_back(out.per_codebook.back().value);
  }
  const BoundEstimate across = mean_estimate(rates);
  out.mean = BoundEstimate::monte_carlo(across.value, across.std_error, codebooks * trials);
  return out;
}

/// Replication of a cube code with spacing b between copies.
struct TilingSpec {
  double b = 0.0;           ///< spacing between copies
  double h_min_star = 0.0;  ///< fading below this is declared an error

  void validate() const {
    if (!(b >= 0.0)) throw std::invalid_argument("tiling spacing b must be nonnegative");
    if (!(h_min_star > 0.0)) throw std::invalid_argument("tiling cutoff h_min_star must be positive");
  }
};

/// NLD of the tiled constellation: delta_fc - ln(1 + b/a).
inline double tiled_nld(double delta_fc, double a, double b) {
  if (!(a > 0.0)) throw std::invalid_argument("tiled_nld: a must be positive");
  if (!(b >= 0.0)) throw std::invalid_argument("tiled_nld: b must be nonnegative");
  return delta_fc - std::log1p(b / a);
}

struct TilingErrorBudget {
  double total = 0.0;
  double cross_copy = 0.0;  ///< 2 n Q(h* b / (2 sigma))
  double deep_fade = 0.0;   ///< n Pr{H <= h*}
};

/// Error budget of the tiled constellation built from a cube code with error
/// eps_fc: eps_fc + 2 n Q(h* b / 2 sigma) + n Pr{H <= h*}.
inline TilingErrorBudget tiled_error_budget(double eps_fc, std::size_t n,
                                            const FadingModel& model, const TilingSpec& spec,
                                            double sigma) {
  spec.validate();
  if (!(sigma > 0.0)) throw std::invalid_argument("tiled_error_budget: sigma must be positive");
  if (!(eps_fc >= 0.0)) throw std::invalid_argument("tiled_error_budget: eps_fc must be >= 0");
  const double nn = static_cast<double>(n);
  TilingErrorBudget out;
  out.cross_copy = 2.0 * nn * q_function(spec.h_min_star * spec.b / (2.0 * sigma));
  out.deep_fade = nn * model.cdf(spec.h_min_star);
  out.total = eps_fc + out.cross_copy + out.deep_fade;
  return out;
}

struct TilingSchedule {
  double h_min_star = 0.0;
  double b = 0.0;
  double a = 0.0;
};

/// h* = n^(-2/alpha), b = sigma n^(1 + 2/alpha), a = sigma n^(2 + 2/alpha).
inline TilingSchedule tiling_schedule(std::size_t n, double alpha, double sigma) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tiling_schedule: alpha must be positive");
  const double ln_n = std::log(static_cast<double>(n));
  const double k = std::isinf(alpha) ? 0.0 : 2.0 / alpha;
  return {std::exp(-k * ln_n), sigma * std::exp((1.0 + k) * ln_n),
          sigma * std::exp((2.0 + k) * ln_n)};
}

}  // namespace icfade

#endif  // ICFADE_SIMULATOR_HPP
