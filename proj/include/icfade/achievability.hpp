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

#ifndef ICFADE_ACHIEVABILITY_HPP
#define ICFADE_ACHIEVABILITY_HPP

// Dependence-testing (DT) achievability for a cube-uniform input
// X ~ U(-a/2, a/2) over Y = H X + Z, Z ~ N(0, sigma^2), with H known at the
// receiver.
//
// Given h, the output density is
//   f(y|h) = (Q(y/s - ah/2s) - Q(y/s + ah/2s)) / (a h),
// and the information density splits as
//   i(x; y, h) = 1/2 ln(a^2 h^2 / (2 pi e s^2)) - (z^2 - s^2) / (2 s^2) + e(y, h)
// with z = y - h x and e(y, h) = -ln(Q(.) - Q(.)) >= 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icfade/analysis.hpp"
#include "icfade/fading.hpp"
#include "icfade/monte_carlo.hpp"
#include "icfade/quadrature.hpp"
#include "icfade/rng.hpp"
#include "icfade/special.hpp"

namespace icfade {

namespace detail {

inline void check_cube(double a, double sigma) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("cube side a must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
}

}  // namespace detail

/// e(y, h) = -ln(Q(y/s - ah/2s) - Q(y/s + ah/2s)), never negative.
inline double information_density_error_term(double y, double h, double a, double sigma) {
  const double half = 0.5 * a * h / sigma;
  const double t = y / sigma;
  return std::max(0.0, -log_normal_mass(t - half, t + half));
}

inline double log_conditional_output_density(double y, double h, double a, double sigma) {
  detail::check_cube(a, sigma);
  if (!(h > 0.0)) throw std::invalid_argument("fading magnitude h must be positive");
  return -std::log(a * h) - information_density_error_term(y, h, a, sigma);
}

/// f(y | h) of the faded cube-uniform input plus Gaussian noise.
inline double conditional_output_density(double y, double h, double a, double sigma) {
  return std::exp(log_conditional_output_density(y, h, a, sigma));
}

/// Gaussian log-density of the noise, ln f(y | h, x).
inline double log_channel_density(double x, double y, double h, double sigma) {
  const double z = (y - h * x) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

/// i(x; y, h) = ln f(y | h, x) - ln f(y | h).
inline double information_density(double x, double y, double h, double a, double sigma) {
  detail::check_cube(a, sigma);
  if (std::abs(x) > 0.5 * a) {
    throw std::invalid_argument("input x lies outside the cube [-a/2, a/2]");
  }
  if (!(h > 0.0)) throw std::invalid_argument("fading magnitude h must be positive");
  const double z = (y - h * x) / sigma;
  return std::log(a * h / sigma) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * z * z +
         information_density_error_term(y, h, a, sigma);
}

/// eta_i(u) = (-1)^i  integral of D(y) ln^i D(y) dy, D(y) = Q(y - u/2) - Q(y + u/2),
/// for i in {1, 2, 3}; adaptive quadrature on the even integrand.
inline double eta(int i, double u) {
  if (i < 1 || i > 3) throw std::invalid_argument("eta: order must be 1, 2 or 3");
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("eta: u must be positive");
  const double c = 0.5 * u;
  auto integrand = [i, c](double y) {
    const double log_d = log_normal_mass(y - c, y + c);
    const double d = std::exp(log_d);
    return d == 0.0 ? 0.0 : d * std::pow(-log_d, i);
  };
  std::vector<double> pts{0.0};
  for (double off : {-8.0, -2.0, 0.0, 2.0, 8.0, 40.0}) {
    const double p = c + off;
    if (p > pts.back()) pts.push_back(p);
  }
  return 2.0 * integrate(integrand, std::span<const double>(pts), 1e-12);
}

/// Small-u closed forms of eta_i with C(u) = 1/2 ln(u^2 / (2 pi e)).
inline double eta_small_u_approx(int i, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("eta_small_u_approx: u must be positive");
  const double c = 0.5 * (2.0 * std::log(u) - kLn2PiE);
  switch (i) {
    case 1:
      return -u * c;
    case 2:
      return u * (c * c + 0.5);
    case 3:
      return -u * (c * c * c + 1.5 * c - 1.0);
    default:
      throw std::invalid_argument("eta_small_u_approx: order must be 1, 2 or 3");
  }
}

/// Per-letter information-density draw: fading, input and noise each from
/// their own generator.
struct LetterSampler {
  FadingModel model;
  double a;
  double sigma;

  double operator()(Rng& fading, Rng& input, Rng& noise) const {
    const double h = model.draw(fading);
    const double x = input.uniform(-0.5 * a, 0.5 * a);
    const double z = sigma * noise.normal();
    const double y = h * x + z;
    const double zn = z / sigma;
    return std::log(a * h / sigma) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * zn * zn +
           information_density_error_term(y, h, a, sigma);
  }
};

/// Samples of the n-letter information density sum_j i(X_j; Y_j, H_j).
inline std::vector<double> information_density_sums(const FadingModel& model, double a,
                                                    double sigma, std::size_t n,
                                                    const McConfig& mc) {
  detail::check_cube(a, sigma);
  const LetterSampler letter{model, a, sigma};
  return generate_samples(mc, [&](std::size_t chunk, std::span<double> out) {
    Rng fading(mc.seed, Stream::Fading, chunk);
    Rng input(mc.seed, Stream::Input, chunk);
    Rng noise(mc.seed, Stream::Noise, chunk);
    for (double& v : out) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += letter(fading, input, noise);
      v = s;
    }
  });
}

struct InfoDensityMoments {
  double mutual_info = 0.0;  ///< I(X; Y, H), nats
  double mutual_info_se = 0.0;
  double variance = 0.0;  ///< Var i(X; Y, H), nats^2
  double variance_se = 0.0;
  double rho3 = 0.0;  ///< E|i - I|^3
  double rho3_se = 0.0;
  double berry_esseen_b = 0.0;  ///< 6 rho3 / variance^(3/2)
  double a_over_sigma = 0.0;
  std::size_t samples = 0;
  /// False when a/sigma < 10, where the large-cube expansions do not apply.
  bool asymptotic_regime = true;
};

/// Monte-Carlo moments of the single-letter information density.
inline InfoDensityMoments info_density_moments(const FadingModel& model, double a, double sigma,
                                               const McConfig& mc) {
  detail::check_cube(a, sigma);
  if (a / sigma < 1.0) throw std::invalid_argument("info_density_moments: needs a/sigma >= 1");
  if (mc.samples < 2) throw std::invalid_argument("info_density_moments: needs samples");
  const auto xs = information_density_sums(model, a, sigma, 1, mc);
  const SampleMoments sm = sample_moments(xs);
  InfoDensityMoments r;
  r.mutual_info = sm.mean;
  r.mutual_info_se = sm.mean_se;
  r.variance = sm.variance;
  r.variance_se = sm.variance_se;
  r.rho3 = sm.third_abs;
  r.rho3_se = sm.third_abs_se;
  r.berry_esseen_b = 6.0 * r.rho3 / std::pow(r.variance, 1.5);
  r.a_over_sigma = a / sigma;
  r.samples = sm.count;
  r.asymptotic_regime = a / sigma >= 10.0;
  return r;
}

/// Either a codebook size M or a target error probability, never both.
struct DtQuery {
  std::size_t n = 1;
  double a = 1.0;
  std::optional<std::uint64_t> m;
  std::optional<double> eps;

  void validate() const {
    if (n < 1) throw std::invalid_argument("DT query: n must be at least 1");
    if (!(a > 0.0)) throw std::invalid_argument("DT query: cube side a must be positive");
    if (m.has_value() == eps.has_value()) {
      throw std::invalid_argument("DT query: set exactly one of M and eps");
    }
    if (m && *m < 1) throw std::invalid_argument("DT query: M must be at least 1");
    if (eps && !(*eps > 0.0 && *eps < 1.0)) {
      throw std::invalid_argument("DT query: eps must lie in (0, 1)");
    }
  }
};

namespace detail {

inline double dt_term(double info_sum, double log_gamma) {
  return info_sum <= log_gamma ? 1.0 : std::exp(log_gamma - info_sum);
}

inline double dt_mean(std::span<const double> sums, double log_gamma) {
  double s = 0.0;
  for (double v : sums) s += dt_term(v, log_gamma);
  return s / static_cast<double>(sums.size());
}

}  // namespace detail

/// E{exp(-[i(x; y, H) - log_gamma]^+)}; the DT bound for M codewords uses
/// log_gamma = ln((M - 1) / 2).
inline BoundEstimate dt_bound_at_threshold(const FadingModel& model, const ChannelParams& params,
                                           std::size_t n, double a, double log_gamma,
                                           const McConfig& mc) {
  params.validate();
  if (params.complex) throw std::invalid_argument("DT bound: real model only");
  require_samples(mc);
  if (log_gamma == -std::numeric_limits<double>::infinity()) return BoundEstimate::closed_form(0.0);
  const auto sums = information_density_sums(model, a, params.sigma(), n, mc);
  std::vector<double> terms(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) terms[k] = detail::dt_term(sums[k], log_gamma);
  return mean_estimate(terms);
}

inline double dt_log_gamma(std::uint64_t m) {
  if (m <= 1) return -std::numeric_limits<double>::infinity();
  return std::log(0.5 * static_cast<double>(m - 1));
}

/// DT upper bound on the ensemble-average error probability of M codewords
/// drawn uniformly from the cube, under the threshold decoder.
inline BoundEstimate dt_bound(const FadingModel& model, const ChannelParams& params,
                              const DtQuery& q, const McConfig& mc) {
  q.validate();
  if (!q.m) throw std::invalid_argument("dt_bound: query needs M");
  if (*q.m == 1) {
    require_samples(mc);
    return BoundEstimate::closed_form(0.0);
  }
  return dt_bound_at_threshold(model, params, q.n, q.a, dt_log_gamma(*q.m), mc);
}

/// Cube side a = sigma n^(2 + 2/alpha), alpha the fading regularity
/// exponent (a = sigma n^2 without fading), clamped to [10, 1e12] sigma.
inline double default_cube_side(const FadingModel& model, double sigma, std::size_t n) {
  const double alpha = regularity_exponent(model);
  const double expo = std::isinf(alpha) ? 2.0 : 2.0 + 2.0 / alpha;
  const double ratio = std::pow(static_cast<double>(n), expo);
  return sigma * std::clamp(ratio, 10.0, 1e12);
}

enum class DtMode { Formula, Search };

inline const char* to_string(DtMode m) { return m == DtMode::Formula ? "formula" : "search"; }

struct DtOptions {
  DtMode mode = DtMode::Search;
  std::optional<double> a;  ///< cube side; default_cube_side when unset
  McConfig mc{0x1cfade0004ULL, 100000, 4096, 1};
};

struct DtAchievability {
  BoundEstimate nld;  ///< (ln M)/n - ln a, nats
  double log_m = 0.0;
  double log_gamma = 0.0;
  double a = 0.0;
  DtMode mode = DtMode::Search;
  std::optional<InfoDensityMoments> moments;  ///< set in formula mode
  double tau = 0.0;                           ///< formula mode only
};

namespace detail {

/// ln floor(2 gamma + 1), exact while 2 gamma + 1 is representable.
inline double log_codebook_size(double log_gamma) {
  if (log_gamma < 50.0) return std::log(std::floor(2.0 * std::exp(log_gamma) + 1.0));
  return std::numbers::ln2 + log_gamma;
}

}  // namespace detail

/// Largest NLD of a cube code certified by the DT bound at error `eps`.
///
/// Formula mode uses the normal-approximation recipe with Berry-Esseen slack:
///   tau = Q^{-1}(eps - (2 ln 2 / sqrt(2 pi Var) + 5 B) / sqrt(n)),
///   ln gamma = n I - tau sqrt(n Var),  M = floor(2 gamma + 1),
/// and throws std::domain_error when the Q^{-1} argument leaves (0, 1).
/// Search mode solves DT(gamma) = eps directly on a common sample set.
inline DtAchievability dt_achievable_nld(const FadingModel& model, const ChannelParams& params,
                                         std::size_t n, double eps, const DtOptions& opt = {}) {
  params.validate();
  if (params.complex) throw std::invalid_argument("DT achievability: real model only");
  if (n < 1) throw std::invalid_argument("DT achievability: n must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  require_samples(opt.mc);
  const double sigma = params.sigma();
  const double a = opt.a.value_or(default_cube_side(model, sigma, n));
  detail::check_cube(a, sigma);
  const double nn = static_cast<double>(n);

  DtAchievability out;
  out.a = a;
  out.mode = opt.mode;

  if (opt.mode == DtMode::Formula) {
    const InfoDensityMoments mom = info_density_moments(model, a, sigma, opt.mc);
    const double slack =
        (2.0 * std::numbers::ln2 / std::sqrt(2.0 * std::numbers::pi * mom.variance) +
         5.0 * mom.berry_esseen_b) /
        std::sqrt(nn);
    const double arg = eps - slack;
    if (!(arg > 0.0 && arg < 1.0)) {
      throw std::domain_error("DT formula mode: eps - Berry-Esseen slack = " + std::to_string(arg) +
                              " leaves (0, 1); n = " + std::to_string(n) +
                              " is too small for the guarantee");
    }
    const double tau = q_inverse(arg);
    const double root_nv = std::sqrt(nn * mom.variance);
    out.tau = tau;
    out.log_gamma = nn * mom.mutual_info - tau * root_nv;
    out.log_m = detail::log_codebook_size(out.log_gamma);
    const double se_var_term = tau * mom.variance_se / (2.0 * std::sqrt(nn * mom.variance));
    out.nld = BoundEstimate::monte_carlo(
        out.log_m / nn - std::log(a),
        std::sqrt(mom.mutual_info_se * mom.mutual_info_se + se_var_term * se_var_term),
        mom.samples);
    out.moments = mom;
    return out;
  }

  const auto sums = information_density_sums(model, a, sigma, n, opt.mc);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double s : sums) lo = std::min(lo, s), hi = std::max(hi, s);
  // At lo - L the bound is at most exp(-L); at hi + L it is at least
  // 1 - exp(-L).
  const double margin = 50.0 + std::abs(std::log(eps)) + std::abs(std::log1p(-eps));
  lo -= margin;
  hi += margin;
  const double tol = 1e-9 * std::max(1.0, nn);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (detail::dt_mean(sums, mid) < eps ? lo : hi) = mid;
  }
  const double log_gamma = 0.5 * (lo + hi);
  std::vector<double> terms(sums.size());
  double slope = 0.0;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    terms[k] = detail::dt_term(sums[k], log_gamma);
    if (sums[k] > log_gamma) slope += terms[k];
  }
  slope /= static_cast<double>(sums.size());
  const BoundEstimate p = mean_estimate(terms);
  out.log_gamma = log_gamma;
  out.log_m = detail::log_codebook_size(log_gamma);
  out.nld = BoundEstimate::monte_carlo(out.log_m / nn - std::log(a),
                                       slope > 0.0 ? p.std_error / slope / nn : 0.0,
                                       opt.mc.samples);
  return out;
}

struct TailBoundCheck {
  /// E{exp(-(S - A)) 1{S > A}}, i.e. the left side multiplied by e^A.
  BoundEstimate lhs;
  /// 2 (ln 2 / sqrt(2 pi) + 12 T / s^2) / s, i.e. the right side times e^A.
  double rhs = 0.0;
  bool holds = false;
  double total_variance = 0.0;  ///< s^2 = n Var(i)
  double total_third = 0.0;     ///< T = n rho3
};

/// Numerical check of the exponential-tail inequality for sums of
/// independent variables,
///   E{e^{-S} 1{S > A}} <= 2 (ln 2 / sqrt(2 pi) + 12 T / s^2) e^{-A} / s,
/// with S the n-letter information density. Both sides are reported scaled
/// by e^A; `holds` allows 3 standard errors of Monte-Carlo slack.
inline TailBoundCheck tail_bound_check(double A, std::size_t n, const FadingModel& model,
                                  const ChannelParams& params, double a, const McConfig& mc) {
  params.validate();
  if (n < 1) throw std::invalid_argument("tail_bound_check: n must be at least 1");
  const double sigma = params.sigma();
  McConfig moment_mc = mc;
  moment_mc.seed = mc.seed ^ 0x3a3a3a3a3a3a3a3aULL;
  const InfoDensityMoments mom = info_density_moments(model, a, sigma, moment_mc);
  const double nn = static_cast<double>(n);
  TailBoundCheck out;
  out.total_variance = nn * mom.variance;
  out.total_third = nn * mom.rho3;
  if (!(out.total_variance > 0.0)) {
    throw std::domain_error("tail_bound_check: information density has zero variance");
  }
  const double s = std::sqrt(out.total_variance);
  out.rhs = 2.0 * (std::numbers::ln2 / std::sqrt(2.0 * std::numbers::pi) +
                   12.0 * out.total_third / out.total_variance) /
            s;
  const auto sums = information_density_sums(model, a, sigma, n, mc);
  std::vector<double> terms(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    terms[k] = sums[k] > A ? std::exp(A - sums[k]) : 0.0;
  }
  out.lhs = mean_estimate(terms);
  out.holds = out.lhs.value <= out.rhs + 3.0 * out.lhs.std_error;
  return out;
}

}  // namespace icfade

#endif  // ICFADE_ACHIEVABILITY_HPP
