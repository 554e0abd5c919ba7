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

#ifndef ICFADE_RNG_HPP
#define ICFADE_RNG_HPP

// Random number generation for all Monte-Carlo estimators.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded by SplitMix64.
// A stream is identified by (master seed, stream id, chunk index); the three
// are mixed through SplitMix64 so chunked estimators are reproducible for
// any worker count. Variates are produced by hand-written transforms
// (Box-Muller, Marsaglia-Tsang) instead of <random> distributions, whose
// output is implementation-defined.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace icfade {

/// Algorithm version tag recorded in CSV headers; bump on any change that
/// alters the produced sequence.
inline constexpr const char* kRngAlgorithm = "xoshiro256**/splitmix64/v1";

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream ids keep independent random inputs of one estimator apart, so
/// that e.g. the noise seen by a trial does not depend on how many fading
/// draws preceded it.
enum class Stream : std::uint64_t {
  Fading = 1,
  Noise = 2,
  Input = 3,
  Message = 4,
  Codebook = 5,
  Verify = 6,
  Generic = 7,
};

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t chunk = 0) noexcept {
    std::uint64_t s = seed;
    s ^= splitmix64(s) + static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL;
    s ^= splitmix64(s) + chunk * 0xaef17502108ef2d9ULL;
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on the open interval (lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform_open();
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift; the bias for n << 2^64 is far below MC noise
    // but we reject anyway to stay exact.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next_u64();
      const __uint128_t m = static_cast<__uint128_t>(x) * n;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Unit-mean exponential.
  double exponential() noexcept { return -std::log(uniform_open()); }

  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 draws
  /// Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape) noexcept {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace icfade

#endif  // ICFADE_RNG_HPP
