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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "icfade/converse.hpp"
#include "icfade/quadrature.hpp"

namespace icfade {
namespace {

const FadingModel kAwgn = FadingModel::awgn();
const FadingModel kRay = FadingModel::rayleigh();

TEST(UnitBall, SmallDimensions) {
  EXPECT_NEAR(log_unit_ball_volume(1), std::log(2.0), 1e-15);
  EXPECT_NEAR(log_unit_ball_volume(2), std::log(std::numbers::pi), 1e-15);
  EXPECT_NEAR(log_unit_ball_volume(3), std::log(4.0 * std::numbers::pi / 3.0), 1e-15);
  EXPECT_THROW(log_unit_ball_volume(0), std::invalid_argument);
}

TEST(UnitBall, StirlingResidualShrinks) {
  const double r100 = std::abs(log_unit_ball_volume(100) / 100.0 - stirling_vn_expansion(100));
  const double r1000 = std::abs(log_unit_ball_volume(1000) / 1000.0 - stirling_vn_expansion(1000));
  // The next term of the expansion is -ln(pi) / (2n).
  EXPECT_LE(r100, 0.6 / 100);
  EXPECT_LE(r1000, 0.6 / 1000);
  EXPECT_NEAR(r1000 * 1000.0, 0.5 * std::log(std::numbers::pi), 1e-3);
  EXPECT_LT(r1000, r100);
  EXPECT_TRUE(std::isfinite(stirling_vn_expansion(2)));
  EXPECT_THROW(stirling_vn_expansion(1), std::invalid_argument);
}

TEST(Spb, AwgnIsClosedFormIncompleteGamma) {
  for (std::size_t n : {1, 2, 16, 100}) {
    for (double delta : {-2.0, -1.5, -1.0}) {
      const BoundEstimate p = spb_error_prob(kAwgn, {1.0}, delta, n);
      EXPECT_EQ(p.method, Method::ClosedForm);
      EXPECT_EQ(p.std_error, 0.0);
      const double nn = static_cast<double>(n);
      const double t = std::exp(-2.0 * delta - 2.0 * log_unit_ball_volume(n) / nn);
      EXPECT_NEAR(p.value, gamma_q(0.5 * nn, 0.5 * t), 1e-13);
    }
  }
}

TEST(Spb, OneDimensionIsATwoSidedNormalTail) {
  for (double delta : {-1.0, 0.0, 0.5}) {
    const double r = 0.5 * std::exp(-delta);
    EXPECT_NEAR(spb_error_prob(kAwgn, {1.0}, delta, 1).value, 2.0 * q_function(r), 1e-14);
  }
}

TEST(Spb, AwgnAtCapacityApproachesOneHalf) {
  const double cap = -0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
  double prev_gap = 1.0;
  for (std::size_t n : {100, 1000, 10000}) {
    const double gap = std::abs(spb_error_prob(kAwgn, {1.0}, cap, n).value - 0.5);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 0.05);
}

TEST(Spb, RayleighAtThirdOrderApproximation) {
  const double delta = nld_normal_approx(kRay, {1.0}, {100, 0.1, NldVariant::ConverseThirdOrder});
  const BoundEstimate p = spb_error_prob(kRay, {1.0}, delta, 100);
  EXPECT_EQ(p.method, Method::MonteCarlo);
  EXPECT_NEAR(p.value, 0.1, 0.03);
  EXPECT_EQ(p.samples, 100000u);
}

TEST(Spb, NondecreasingInDeltaOnCommonNumbers) {
  double prev = 0.0;
  for (double delta = -2.2; delta <= -1.2; delta += 0.05) {
    const double p = spb_error_prob(kRay, {1.0}, delta, 50).value;
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(Spb, RaoBlackwellBeatsIndicator) {
  SpbOptions rb;
  rb.mc.samples = 10000;
  SpbOptions ind = rb;
  ind.estimator = SpbEstimator::Indicator;
  const double delta = nld_normal_approx(kRay, {1.0}, {16, 0.3, NldVariant::Plain});
  const BoundEstimate a = spb_error_prob(kRay, {1.0}, delta, 16, rb);
  const BoundEstimate b = spb_error_prob(kRay, {1.0}, delta, 16, ind);
  EXPECT_LT(a.std_error, b.std_error);
  EXPECT_NEAR(a.value, b.value, 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Spb, ForcedMonteCarloForAwgn) {
  SpbOptions opt;
  opt.force_monte_carlo = true;
  opt.estimator = SpbEstimator::Indicator;
  const BoundEstimate closed = spb_error_prob(kAwgn, {1.0}, -1.6, 16);
  const BoundEstimate mc = spb_error_prob(kAwgn, {1.0}, -1.6, 16, opt);
  EXPECT_EQ(mc.method, Method::MonteCarlo);
  EXPECT_NEAR(mc.value, closed.value, 3.0 * mc.std_error);
}

TEST(Spb, ThreadCountDoesNotChangeResult) {
  SpbOptions one;
  one.mc.samples = 20000;
  SpbOptions many = one;
  many.mc.threads = 3;
  EXPECT_EQ(spb_error_prob(kRay, {1.0}, -1.8, 40, one).value,
            spb_error_prob(kRay, {1.0}, -1.8, 40, many).value);
}

TEST(Spb, RejectsBadInputs) {
  SpbOptions few;
  few.mc.samples = 999;
  EXPECT_THROW(spb_error_prob(kRay, {1.0}, -1.8, 40, few), std::invalid_argument);
  EXPECT_THROW(spb_error_prob(kRay, {1.0}, -1.8, 0), std::invalid_argument);
  EXPECT_THROW(spb_error_prob(kRay, {1.0, true}, -1.8, 10), std::invalid_argument);
}

TEST(Spb, HugeBlocklengthStaysFinite) {
  const BoundEstimate p = spb_error_prob(kAwgn, {1.0}, -1.42, 200000);
  EXPECT_TRUE(std::isfinite(p.value));
  EXPECT_GE(p.value, 0.0);
  EXPECT_LE(p.value, 1.0);
}

TEST(SpbInversion, AwgnAtOneHalf) {
  const SpbInversion r = spb_optimal_nld(kAwgn, {1.0}, 1000, 0.5);
  EXPECT_EQ(r.nld.method, Method::ClosedForm);
  EXPECT_NEAR(r.nld.value, -1.41893853320467, 0.01);
  EXPECT_NEAR(r.fresh_check.value, 0.5, 1e-3);
}

TEST(SpbInversion, RayleighNearThirdOrderApproximation) {
  const SpbInversion r = spb_optimal_nld(kRay, {1.0}, 200, 0.01);
  const double third = nld_normal_approx(kRay, {1.0}, {200, 0.01, NldVariant::ConverseThirdOrder});
  EXPECT_NEAR(r.nld.value, third, 0.02);
  EXPECT_GT(r.nld.std_error, 0.0);
  EXPECT_NEAR(r.fresh_check.value, 0.01, 5.0 * r.fresh_check.std_error + 1e-3);
}

TEST(SpbInversion, PrototypeRootAtN100) {
  // Frozen from an independent numpy implementation of the same estimator
  // (1e5 fading draws, different random numbers): root -1.79627.
  const SpbInversion r = spb_optimal_nld(kRay, {1.0}, 100, 0.1);
  EXPECT_NEAR(r.nld.value, -1.79627, 0.002);
}

TEST(SpbInversion, MonotoneInEps) {
  EXPECT_LT(spb_optimal_nld(kRay, {1.0}, 100, 0.001).nld.value,
            spb_optimal_nld(kRay, {1.0}, 100, 0.1).nld.value);
}

TEST(SpbInversion, RejectsBadEps) {
  EXPECT_THROW(spb_optimal_nld(kRay, {1.0}, 100, 0.0), std::invalid_argument);
  EXPECT_THROW(spb_optimal_nld(kRay, {1.0}, 100, 1.0), std::invalid_argument);
}

TEST(LogChi2, DensityIntegratesToOne) {
  for (std::size_t n : {1, 10, 100}) {
    const double v = integrate([n](double y) { return log_chi2_pdf(n, y); }, linspace(-60.0, 30.0, 90), 1e-11);
    EXPECT_NEAR(v, 1.0, 1e-8) << n;
  }
}

TEST(LogChi2, NormalLimitAtOrigin) {
  EXPECT_NEAR(log_chi2_pdf(10000, 0.0), 0.398935631, 1e-8);
  EXPECT_NEAR(log_chi2_pdf(10000, 0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 0.02 * 0.398942);
  EXPECT_TRUE(std::isfinite(log_chi2_log_pdf(3, 50.0)));
  EXPECT_TRUE(std::isfinite(log_chi2_log_pdf(3, -50.0)));
}

TEST(LogChi2, L1DistanceHalvesPerFourfoldN) {
  const double expected[][2] = {{10, 0.124873644822667}, {40, 0.0606621947694777},
                                {160, 0.0299724835663445}, {640, 0.0149148183510372}};
  double prev = 0.0;
  for (const auto& e : expected) {
    const double l1 = log_chi2_normal_l1(static_cast<std::size_t>(e[0]));
    EXPECT_NEAR(l1, e[1], 1e-10);
    if (prev > 0.0) {
      EXPECT_GE(l1 / prev, 0.40);
      EXPECT_LE(l1 / prev, 0.62);
    }
    prev = l1;
  }
}

}  // namespace
}  // namespace icfade
