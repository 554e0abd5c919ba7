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

#ifndef ICFADE_ANALYSIS_HPP
#define ICFADE_ANALYSIS_HPP

// Closed-form layer: Poltyrev capacity of the fading channel with receiver
// CSI, its dispersion, the normal approximation of the optimal NLD at
// finite blocklength, and the dispersion of the power-constrained channel.
//
// Real model: capacity  E{1/2 ln(H^2 / (2 pi e s2))},  V = 1/2 + Var(ln H).
// Complex model (n complex dimensions): capacity E{ln(H^2 / (pi e s2))},
// V = 1 + Var(ln H^2). Real and complex values use different
// normalizations and are only comparable within one model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "icfade/fading.hpp"
#include "icfade/monte_carlo.hpp"
#include "icfade/rng.hpp"
#include "icfade/special.hpp"

namespace icfade {

struct ChannelParams {
  double sigma2 = 1.0;   ///< noise variance per real dimension
  bool complex = false;  ///< use the complex-model formulas

  void validate() const {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
      throw std::invalid_argument("noise variance sigma2 must be positive and finite");
    }
  }
  double sigma() const { return std::sqrt(sigma2); }
};

enum class NldVariant { Plain, ConverseThirdOrder };

/// One point (n, eps) of the optimal-NLD curve.
struct NldQuery {
  std::size_t n = 100;
  double eps = 0.1;
  NldVariant variant = NldVariant::Plain;

  void validate() const {
    if (n < 1) throw std::invalid_argument("blocklength n must be at least 1");
    if (!(eps > 0.0 && eps < 1.0)) {
      throw std::invalid_argument("error probability eps must lie in (0, 1)");
    }
  }
};

inline double poltyrev_capacity(const FadingModel& model, const ChannelParams& params) {
  params.validate();
  const double mean_ln_h = log_moments(model).mean_ln_h;
  if (params.complex) {
    return 2.0 * mean_ln_h - std::log(std::numbers::pi * std::numbers::e * params.sigma2);
  }
  return mean_ln_h - 0.5 * (kLn2PiE + std::log(params.sigma2));
}

inline double dispersion(const FadingModel& model, bool complex = false) {
  const double var = log_moments(model).var_half_ln_h2;
  return complex ? 1.0 + 4.0 * var : 0.5 + var;
}

inline double nld_normal_approx(const FadingModel& model, const ChannelParams& params,
                                const NldQuery& q) {
  q.validate();
  const double n = static_cast<double>(q.n);
  double delta = poltyrev_capacity(model, params);
  // Q^{-1}(1/2) is zero; skip the call so the result is exactly the capacity.
  if (q.eps != 0.5) delta -= std::sqrt(dispersion(model, params.complex) / n) * q_inverse(q.eps);
  if (q.variant == NldVariant::ConverseThirdOrder) delta += std::log(n) / (2.0 * n);
  return delta;
}

struct CapacityLoss {
  double nats = 0.0;
  double db = 0.0;
};

/// Capacity loss relative to the unfaded channel at equal noise variance:
/// -E{ln H} nats, or the tolerable-noise ratio exp(-2 E ln H) in dB.
inline CapacityLoss capacity_loss_vs_awgn(const FadingModel& model) {
  const double nats = -log_moments(model).mean_ln_h;
  return {nats, kNatsToDb * nats};
}

enum class IntegrationMode { MonteCarlo, Quadrature };

struct PowerDispersionOptions {
  IntegrationMode mode = IntegrationMode::MonteCarlo;
  McConfig mc{0x1cfade0001ULL, 1'000'000, 1 << 14, 1};
};

/// Dispersion of the power-constrained fast-fading channel at signal-to-noise
/// ratio `snr` (linear):
///   Var(1/2 ln(1 + snr H^2)) + 1/2 (1 - E^2{1 / (1 + snr H^2)}).
///
/// Monte Carlo by default; Quadrature integrates against the Gamma density of
/// H^2. The no-fading law is always evaluated in closed form.
inline BoundEstimate power_constrained_dispersion(const FadingModel& model, double snr,
                                                  const PowerDispersionOptions& opt = {}) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("snr must be positive");
  if (model.degenerate()) {
    const double w = 1.0 / (1.0 + snr);
    return BoundEstimate::closed_form(0.5 * (1.0 - w * w));
  }

  if (opt.mode == IntegrationMode::Quadrature) {
    const double m = model.m();
    const double log_norm = m * std::log(m) - lgamma(m);
    // x = H^2 ~ Gamma(m, 1/m).
    auto expect = [&](auto&& g) {
      boost::math::quadrature::exp_sinh<double> integrator;
      auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        return g(x) * std::exp(log_norm + (m - 1.0) * std::log(x) - m * x);
      };
      return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity());
    };
    const double l1 = expect([&](double x) { return 0.5 * std::log1p(snr * x); });
    const double l2 = expect([&](double x) {
      const double l = 0.5 * std::log1p(snr * x);
      return l * l;
    });
    const double w = expect([&](double x) { return 1.0 / (1.0 + snr * x); });
    return BoundEstimate::closed_form(l2 - l1 * l1 + 0.5 * (1.0 - w * w));
  }

  const McConfig& mc = opt.mc;
  if (mc.samples < 2) throw std::invalid_argument("power_constrained_dispersion: need samples");
  struct Sums {
    double l = 0, l2 = 0, l3 = 0, l4 = 0, w = 0, w2 = 0, lw = 0, l2w = 0;
  };
  const auto parts = run_chunks(mc, [&](std::size_t c, std::size_t, std::size_t count) {
    Rng rng(mc.seed, Stream::Fading, c);
    Sums s;
    for (std::size_t i = 0; i < count; ++i) {
      const double h = model.draw(rng);
      const double g = snr * h * h;
      const double l = 0.5 * std::log1p(g);
      const double w = 1.0 / (1.0 + g);
      s.l += l;
      s.l2 += l * l;
      s.l3 += l * l * l;
      s.l4 += l * l * l * l;
      s.w += w;
      s.w2 += w * w;
      s.lw += l * w;
      s.l2w += l * l * w;
    }
    return s;
  });
  Sums t;
  for (const Sums& s : parts) {
    t.l += s.l, t.l2 += s.l2, t.l3 += s.l3, t.l4 += s.l4;
    t.w += s.w, t.w2 += s.w2, t.lw += s.lw, t.l2w += s.l2w;
  }
  const double n = static_cast<double>(mc.samples);
  const double el = t.l / n, el2 = t.l2 / n, el3 = t.l3 / n, el4 = t.l4 / n;
  const double ew = t.w / n, ew2 = t.w2 / n, elw = t.lw / n, el2w = t.l2w / n;
  const double value = el2 - el * el + 0.5 * (1.0 - ew * ew);

  // Delta method on (E L, E L^2, E W) with gradient (-2 E L, 1, -E W).
  const double g0 = -2.0 * el, g1 = 1.0, g2 = -ew;
  const double c00 = el2 - el * el, c11 = el4 - el2 * el2, c22 = ew2 - ew * ew;
  const double c01 = el3 - el * el2, c02 = elw - el * ew, c12 = el2w - el2 * ew;
  const double var = g0 * g0 * c00 + g1 * g1 * c11 + g2 * g2 * c22 +
                     2.0 * (g0 * g1 * c01 + g0 * g2 * c02 + g1 * g2 * c12);
  return BoundEstimate::monte_carlo(value, std::sqrt(std::max(0.0, var) / n), mc.samples);
}

}  // namespace icfade

#endif  // ICFADE_ANALYSIS_HPP
