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

#ifndef ICFADE_FADING_HPP
#define ICFADE_FADING_HPP

// Unit-power fading laws for the magnitude H >= 0 of a fast-fading
// coefficient: the degenerate no-fading law (H = 1), Rayleigh, and
// Nakagami-m. For Rayleigh and Nakagami-m, H^2 is Gamma(m, 1/m), which
// gives the log-moments in closed form through digamma and trigamma.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icfade/monte_carlo.hpp"
#include "icfade/rng.hpp"
#include "icfade/special.hpp"

namespace icfade {

enum class FadingFamily { AwgnDegenerate, Rayleigh, NakagamiM };

class FadingModel {
 public:
  static FadingModel awgn() { return FadingModel(FadingFamily::AwgnDegenerate, 0.0); }
  static FadingModel rayleigh() { return FadingModel(FadingFamily::Rayleigh, 1.0); }
  static FadingModel nakagami(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("nakagami shape m must be positive, got " + std::to_string(m));
    }
    return FadingModel(FadingFamily::NakagamiM, m);
  }

  /// Parses `awgn`, `rayleigh` or `nakagami:<m>`.
  static FadingModel parse(std::string_view text) {
    if (text == "awgn") return awgn();
    if (text == "rayleigh") return rayleigh();
    constexpr std::string_view prefix = "nakagami:";
    if (text.substr(0, prefix.size()) == prefix) {
      const std::string_view num = text.substr(prefix.size());
      double m = 0.0;
      const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), m);
      if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty()) {
        throw std::invalid_argument("bad nakagami shape in fading spec '" + std::string(text) + "'");
      }
      return nakagami(m);
    }
    throw std::invalid_argument("unknown fading model '" + std::string(text) +
                                "' (expected awgn, rayleigh or nakagami:<m>)");
  }

  FadingFamily family() const { return family_; }

  /// Nakagami shape; 1 for Rayleigh, 0 for the degenerate law.
  double m() const { return m_; }

  bool degenerate() const { return family_ == FadingFamily::AwgnDegenerate; }

  std::string name() const {
    switch (family_) {
      case FadingFamily::AwgnDegenerate:
        return "awgn";
      case FadingFamily::Rayleigh:
        return "rayleigh";
      case FadingFamily::NakagamiM: {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, m_);
        return "nakagami:" + std::string(buf, res.ptr);
      }
    }
    return {};
  }

  /// One draw of H from `rng`.
  double draw(Rng& rng) const {
    switch (family_) {
      case FadingFamily::AwgnDegenerate:
        return 1.0;
      case FadingFamily::Rayleigh:
        return std::sqrt(rng.exponential());
      case FadingFamily::NakagamiM:
        return std::sqrt(rng.gamma(m_) / m_);
    }
    return 1.0;
  }

  /// Density of H. Undefined for the point mass.
  double pdf(double h) const {
    if (degenerate()) throw std::domain_error("the degenerate fading law has no density");
    if (h <= 0.0) return 0.0;
    return std::exp(log_pdf(h));
  }

  double log_pdf(double h) const {
    if (degenerate()) throw std::domain_error("the degenerate fading law has no density");
    if (h <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(2.0) + m_ * std::log(m_) - lgamma(m_) + (2.0 * m_ - 1.0) * std::log(h) -
           m_ * h * h;
  }

  /// Pr{H <= h}.
  double cdf(double h) const {
    if (degenerate()) return h >= 1.0 ? 1.0 : 0.0;
    if (h <= 0.0) return 0.0;
    if (family_ == FadingFamily::Rayleigh) return -std::expm1(-h * h);
    return gamma_p(m_, m_ * h * h);
  }

  friend bool operator==(const FadingModel&, const FadingModel&) = default;

 private:
  FadingModel(FadingFamily f, double m) : family_(f), m_(m) {}

  FadingFamily family_;
  double m_;
};

/// Moments of ln H that drive capacity and dispersion.
struct LogMoments {
  double mean_ln_h = 0.0;       ///< E{ln H}, nats
  double var_half_ln_h2 = 0.0;  ///< Var(ln H) = Var(1/2 ln H^2), nats^2
  std::optional<double> third_abs_central;  ///< E{|ln H - E ln H|^3}
};

inline LogMoments log_moments(const FadingModel& model) {
  if (model.degenerate()) return {0.0, 0.0, 0.0};
  const double m = model.m();
  // ln H^2 = ln G - ln m with G ~ Gamma(m, 1).
  return {0.5 * (digamma(m) - std::log(m)), 0.25 * trigamma(m), std::nullopt};
}

/// Draws `count` fading magnitudes; deterministic in (seed, count).
inline std::vector<double> sample_h(const FadingModel& model, std::uint64_t seed,
                                    std::size_t count) {
  if (count < 1) throw std::invalid_argument("sample_h: count must be at least 1");
  McConfig mc{seed, count, 4096, 1};
  return generate_samples(mc, [&](std::size_t chunk, std::span<double> out) {
    Rng rng(seed, Stream::Fading, chunk);
    for (double& h : out) h = model.draw(rng);
  });
}

/// Exponent alpha with f(h) ~ h^(alpha - 1) near zero; +inf for the point
/// mass at 1.
inline double regularity_exponent(const FadingModel& model) {
  if (model.degenerate()) return std::numeric_limits<double>::infinity();
  return 2.0 * model.m();
}

/// E{|ln H - E ln H|^3} by Monte Carlo (1e7 draws, fixed seed), cached per
/// model. Only used for Berry-Esseen diagnostics.
inline double third_abs_central_ln_h(const FadingModel& model) {
  if (model.degenerate()) return 0.0;
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> cache;
  const auto key = std::make_pair(static_cast<int>(model.family()), model.m());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  constexpr std::uint64_t kSeed = 0x1cfade0003ULL;
  constexpr std::size_t kSamples = 10'000'000;
  const double mean = log_moments(model).mean_ln_h;
  const McConfig mc{kSeed, kSamples, 1 << 16, 1};
  const auto parts = run_chunks(mc, [&](std::size_t c, std::size_t, std::size_t count) {
    Rng rng(kSeed, Stream::Fading, c);
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double d = std::log(model.draw(rng)) - mean;
      s += std::abs(d) * d * d;
    }
    return s;
  });
  double total = 0.0;
  for (double s : parts) total += s;
  const double value = total / static_cast<double>(kSamples);
  std::lock_guard lock(mutex);
  cache.emplace(key, value);
  return value;
}

inline LogMoments log_moments_with_third(const FadingModel& model) {
  LogMoments lm = log_moments(model);
  lm.third_abs_central = third_abs_central_ln_h(model);
  return lm;
}

}  // namespace icfade

#endif  // ICFADE_FADING_HPP
