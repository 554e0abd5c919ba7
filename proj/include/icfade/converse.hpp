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

#ifndef ICFADE_CONVERSE_HPP
#define ICFADE_CONVERSE_HPP

// Sphere-packing converse for infinite constellations over fast fading with
// receiver CSI. For NLD delta, the bound is
//
//   P_e >= Pr{ ||z||^2 >= exp(-2 delta) (det H / V_n)^(2/n) },
//
// evaluated by conditioning on the fading draw: given H the probability is
// the exact chi-square tail Q(n/2, t / (2 sigma^2)), so each fading draw
// contributes one bounded, smooth term (Rao-Blackwellization). All products
// and volumes are carried in log domain.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "icfade/analysis.hpp"
#include "icfade/fading.hpp"
#include "icfade/monte_carlo.hpp"
#include "icfade/quadrature.hpp"
#include "icfade/rng.hpp"
#include "icfade/special.hpp"

namespace icfade {

/// ln V_n, V_n the volume of the unit ball in n dimensions.
inline double log_unit_ball_volume(std::size_t n) {
  if (n < 1) throw std::invalid_argument("log_unit_ball_volume: n must be at least 1");
  const double h = 0.5 * static_cast<double>(n);
  return h * std::log(std::numbers::pi) - std::log(h) - lgamma(h);
}

/// Two-term Stirling expansion of ln(V_n)/n: 1/2 ln(2 pi e / n) - ln(n)/(2n).
inline double stirling_vn_expansion(std::size_t n) {
  if (n < 2) throw std::invalid_argument("stirling_vn_expansion: n must be at least 2");
  const double x = static_cast<double>(n);
  return 0.5 * (kLn2PiE - std::log(x)) - std::log(x) / (2.0 * x);
}

enum class SpbEstimator {
  RaoBlackwell,  ///< average of exact conditional chi-square tails
  Indicator,     ///< naive: draw the noise too and average the event indicator
};

struct SpbOptions {
  McConfig mc{0x1cfade0002ULL, 100000, 4096, 1};
  SpbEstimator estimator = SpbEstimator::RaoBlackwell;
  /// Run Monte Carlo even for the degenerate law, which otherwise has a
  /// closed form.
  bool force_monte_carlo = false;
  /// Bisection stops once the NLD bracket is this narrow (nats).
  double tolerance = 1e-4;
};

namespace detail {

inline void check_spb_inputs(const ChannelParams& params, std::size_t n) {
  params.validate();
  if (params.complex) throw std::invalid_argument("sphere-packing bound: real model only");
  if (n < 1) throw std::invalid_argument("sphere-packing bound: n must be at least 1");
}

/// Per fading draw, ln(x_k) + 2 delta where x_k = t_k / (2 sigma^2) is the
/// incomplete-gamma argument at NLD delta.
inline std::vector<double> spb_log_arguments(const FadingModel& model,
                                             const ChannelParams& params, std::size_t n,
                                             const McConfig& mc, Stream stream) {
  const double nn = static_cast<double>(n);
  const double base = -2.0 * log_unit_ball_volume(n) / nn - std::log(2.0 * params.sigma2);
  return generate_samples(mc, [&](std::size_t chunk, std::span<double> out) {
    Rng rng(mc.seed, stream, chunk);
    for (double& v : out) {
      double log_det = 0.0;
      for (std::size_t i = 0; i < n; ++i) log_det += std::log(model.draw(rng));
      v = base + 2.0 * log_det / nn;
    }
  });
}

inline double conditional_tail(double shape, double log_arg) {
  if (log_arg > 709.0) return 0.0;
  return gamma_q(shape, std::exp(log_arg));
}

/// d/d(delta) of the conditional tail; x = exp(log_arg) moves as -2x.
inline double conditional_tail_slope(double shape, double log_arg) {
  if (log_arg > 709.0) return 0.0;
  const double x = std::exp(log_arg);
  return 2.0 * x * boost::math::gamma_p_derivative(shape, x);
}

}  // namespace detail

/// Probability that the noise leaves a ball of the Voronoi-equivalent volume
/// at NLD `delta`. ClosedForm for the degenerate law; Monte Carlo otherwise.
inline BoundEstimate spb_error_prob(const FadingModel& model, const ChannelParams& params,
                                    double delta, std::size_t n, const SpbOptions& opt = {}) {
  detail::check_spb_inputs(params, n);
  const double shape = 0.5 * static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double base = -2.0 * log_unit_ball_volume(n) / nn - std::log(2.0 * params.sigma2);

  if (model.degenerate() && !opt.force_monte_carlo) {
    return BoundEstimate::closed_form(detail::conditional_tail(shape, base - 2.0 * delta));
  }
  require_samples(opt.mc);

  if (opt.estimator == SpbEstimator::RaoBlackwell) {
    const auto args = detail::spb_log_arguments(model, params, n, opt.mc, Stream::Fading);
    std::vector<double> terms(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) {
      terms[k] = detail::conditional_tail(shape, args[k] - 2.0 * delta);
    }
    return mean_estimate(terms);
  }

  // Indicator: ||z||^2 / (2 sigma^2) >= x_k, z drawn from its own stream.
  const McConfig& mc = opt.mc;
  const auto terms = generate_samples(mc, [&](std::size_t chunk, std::span<double> out) {
    Rng fading(mc.seed, Stream::Fading, chunk);
    Rng noise(mc.seed, Stream::Noise, chunk);
    for (double& v : out) {
      double log_det = 0.0;
      for (std::size_t i = 0; i < n; ++i) log_det += std::log(model.draw(fading));
      double chi2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = noise.normal();
        chi2 += z * z;
      }
      const double log_arg = base + 2.0 * log_det / nn - 2.0 * delta;
      v = std::log(0.5 * chi2) >= log_arg ? 1.0 : 0.0;
    }
  });
  return mean_estimate(terms);
}

/// Result of inverting the sphere-packing bound at a target error
/// probability.
struct SpbInversion {
  BoundEstimate nld;          ///< delta with P_SB(delta) = eps, nats
  BoundEstimate fresh_check;  ///< P_SB at the root on an independent fading set
  int widenings = 0;
};

/// Largest NLD the converse allows at error probability `eps`: bisection of
/// the sphere-packing bound in delta over one common fading sample set.
inline SpbInversion spb_optimal_nld(const FadingModel& model, const ChannelParams& params,
                                    std::size_t n, double eps, const SpbOptions& opt = {}) {
  detail::check_spb_inputs(params, n);
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double shape = 0.5 * static_cast<double>(n);
  const bool closed = model.degenerate() && !opt.force_monte_carlo;
  if (!closed) require_samples(opt.mc);

  std::vector<double> args;
  if (closed) {
    const double nn = static_cast<double>(n);
    args.assign(1, -2.0 * log_unit_ball_volume(n) / nn - std::log(2.0 * params.sigma2));
  } else {
    args = detail::spb_log_arguments(model, params, n, opt.mc, Stream::Fading);
  }
  auto prob = [&](double delta) {
    double s = 0.0;
    for (double a : args) s += detail::conditional_tail(shape, a - 2.0 * delta);
    return s / static_cast<double>(args.size());
  };

  const double center =
      nld_normal_approx(model, params, {n, eps, NldVariant::ConverseThirdOrder});
  double half = 10.0 / std::sqrt(static_cast<double>(n));
  double lo = center - half;
  double hi = center + half;
  int widenings = 0;
  // P_SB increases with delta.
  while (!(prob(lo) < eps && prob(hi) > eps)) {
    if (++widenings > 10) {
      throw std::runtime_error("spb_optimal_nld: eps = " + std::to_string(eps) +
                               " not bracketed after 10 widenings");
    }
    half *= 2.0;
    lo = center - half;
    hi = center + half;
  }
  while (hi - lo > opt.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (prob(mid) < eps ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);

  SpbInversion out;
  out.widenings = widenings;
  if (closed) {
    out.nld = BoundEstimate::closed_form(root);
    out.fresh_check = BoundEstimate::closed_form(prob(root));
    return out;
  }
  std::vector<double> terms(args.size());
  double slope = 0.0;
  for (std::size_t k = 0; k < args.size(); ++k) {
    terms[k] = detail::conditional_tail(shape, args[k] - 2.0 * root);
    slope += detail::conditional_tail_slope(shape, args[k] - 2.0 * root);
  }
  slope /= static_cast<double>(args.size());
  const BoundEstimate p = mean_estimate(terms);
  out.nld = BoundEstimate::monte_carlo(root, slope > 0.0 ? p.std_error / slope : 0.0,
                                       opt.mc.samples);

  SpbOptions fresh = opt;
  fresh.mc.seed = opt.mc.seed ^ 0x5eed5eed5eed5eedULL;
  out.fresh_check = spb_error_prob(model, params, root, n, fresh);
  return out;
}

/// Log-density of Y_n = (ln X - ln n) / sqrt(2/n) with X ~ chi^2_n.
inline double log_chi2_log_pdf(std::size_t n, double y) {
  if (n < 1) throw std::invalid_argument("log_chi2_pdf: n must be at least 1");
  const double h = 0.5 * static_cast<double>(n);
  return (h - 0.5) * std::log(h) - lgamma(h) + std::sqrt(h) * y - h * std::exp(y / std::sqrt(h));
}

inline double log_chi2_pdf(std::size_t n, double y) { return std::exp(log_chi2_log_pdf(n, y)); }

/// Integral of |f_{Y_n} - phi| over the real line, by quadrature on
/// [-60, 30] (the mass outside is below 1e-18 for every n >= 1).
inline double log_chi2_normal_l1(std::size_t n) {
  const auto pieces = linspace(-60.0, 30.0, 90);
  return integrate([n](double y) { return std::abs(log_chi2_pdf(n, y) - normal_pdf(y)); },
                   std::span<const double>(pieces), 1e-11);
}

}  // namespace icfade

#endif  // ICFADE_CONVERSE_HPP
