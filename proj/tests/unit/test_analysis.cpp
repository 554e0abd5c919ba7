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

#include "icfade/analysis.hpp"

namespace icfade {
namespace {

const FadingModel kAwgn = FadingModel::awgn();
const FadingModel kRay = FadingModel::rayleigh();

TEST(Capacity, ReferenceValues) {
  EXPECT_NEAR(poltyrev_capacity(kAwgn, {1.0 / (2 * std::numbers::pi * std::numbers::e)}), 0.0, 1e-15);
  EXPECT_NEAR(poltyrev_capacity(kAwgn, {1.0}), -1.41893853320467, 1e-13);
  EXPECT_NEAR(poltyrev_capacity(kRay, {1.0}), -1.70754636565544, 1e-13);
}

TEST(Capacity, JensenOrdering) {
  for (double s2 : {0.1, 1.0, 7.0}) {
    const double awgn = poltyrev_capacity(kAwgn, {s2});
    for (double m : {0.5, 1.0, 3.0, 50.0}) {
      EXPECT_LT(poltyrev_capacity(FadingModel::nakagami(m), {s2}), awgn);
    }
  }
}

TEST(Capacity, NoiseScalingShiftsOnlyTheCapacity) {
  for (double c : {0.01, 2.0, 1e3}) {
    EXPECT_NEAR(poltyrev_capacity(kRay, {c * 0.3}) - poltyrev_capacity(kRay, {0.3}),
                -0.5 * std::log(c), 1e-12);
  }
}

TEST(Capacity, RejectsBadNoise) {
  EXPECT_THROW(poltyrev_capacity(kRay, {0.0}), std::invalid_argument);
  EXPECT_THROW(poltyrev_capacity(kRay, {-1.0}), std::invalid_argument);
}

TEST(Dispersion, ReferenceValues) {
  EXPECT_EQ(dispersion(kAwgn), 0.5);
  EXPECT_NEAR(dispersion(kRay), 0.911233516712057, 1e-13);
  EXPECT_NEAR(dispersion(kRay, true), 2.64493406684823, 1e-13);
  const double expected[][2] = {{0.5, 1.73370055013617},  {2, 0.661233516712057},
                                {4, 0.570955738934279},   {8, 0.533284253673508},
                                {16, 0.516123445850810},  {32, 0.507935841630076},
                                {64, 0.503936926516085}};
  for (const auto& e : expected) EXPECT_NEAR(dispersion(FadingModel::nakagami(e[0])), e[1], 1e-12);
}

TEST(Dispersion, ComplexRealConsistency) {
  for (const FadingModel& model : {kAwgn, kRay, FadingModel::nakagami(3.5)}) {
    EXPECT_DOUBLE_EQ(dispersion(model, true), 1.0 + 4.0 * (dispersion(model) - 0.5));
    EXPECT_GE(dispersion(model), 0.5);
  }
  EXPECT_NEAR(poltyrev_capacity(kRay, {1.0, true}),
              2.0 * log_moments(kRay).mean_ln_h - std::log(std::numbers::pi * std::numbers::e), 1e-14);
}

TEST(NormalApprox, ReferenceValues) {
  EXPECT_NEAR(nld_normal_approx(kAwgn, {1.0}, {100, 0.01, NldVariant::ConverseThirdOrder}),
              -1.56041031798805, 1e-12);
  EXPECT_NEAR(nld_normal_approx(kRay, {1.0}, {400, 0.1, NldVariant::Plain}), -1.76871389409322,
              1e-12);
}

TEST(NormalApprox, HalfErrorGivesCapacityExactly) {
  for (const FadingModel& model : {kAwgn, kRay, FadingModel::nakagami(2.0)}) {
    EXPECT_EQ(nld_normal_approx(model, {2.0}, {37, 0.5, NldVariant::Plain}),
              poltyrev_capacity(model, {2.0}));
  }
}

TEST(NormalApprox, IncreasingInEps) {
  double prev = -std::numeric_limits<double>::infinity();
  for (double eps : {1e-6, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.9}) {
    const double d = nld_normal_approx(kRay, {1.0}, {200, eps, NldVariant::Plain});
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(NormalApprox, RejectsBadQueries) {
  EXPECT_THROW(nld_normal_approx(kRay, {1.0}, {0, 0.1, NldVariant::Plain}), std::invalid_argument);
  EXPECT_THROW(nld_normal_approx(kRay, {1.0}, {10, 0.0, NldVariant::Plain}), std::invalid_argument);
  EXPECT_THROW(nld_normal_approx(kRay, {1.0}, {10, 1.0, NldVariant::Plain}), std::invalid_argument);
}

TEST(CapacityLoss, ReferenceValues) {
  const CapacityLoss none = capacity_loss_vs_awgn(kAwgn);
  EXPECT_EQ(none.nats, 0.0);
  EXPECT_EQ(none.db, 0.0);
  const CapacityLoss ray = capacity_loss_vs_awgn(kRay);
  EXPECT_NEAR(ray.nats, 0.288607832450766, 1e-13);
  EXPECT_NEAR(ray.db, 2.50681578134852, 1e-11);
  const CapacityLoss n4 = capacity_loss_vs_awgn(FadingModel::nakagami(4.0));
  EXPECT_GT(n4.nats, 0.0);
  EXPECT_LT(n4.nats, ray.nats);
}

TEST(PowerDispersion, AwgnLimit) {
  const BoundEstimate v = power_constrained_dispersion(kAwgn, 1e8);
  EXPECT_EQ(v.method, Method::ClosedForm);
  EXPECT_NEAR(v.value, 0.5, 1e-3);
}

TEST(PowerDispersion, QuadratureReferenceValues) {
  PowerDispersionOptions q;
  q.mode = IntegrationMode::Quadrature;
  const double expected[][2] = {{0, 0.366260060}, {10, 0.687411083}, {30, 0.897919397}, {50, 0.910878964656805}};
  for (const auto& e : expected) {
    EXPECT_NEAR(power_constrained_dispersion(kRay, std::pow(10.0, e[0] / 10.0), q).value, e[1], 1e-8)
        << e[0] << " dB";
  }
}

TEST(PowerDispersion, MonteCarloAgreesWithQuadrature) {
  PowerDispersionOptions q;
  q.mode = IntegrationMode::Quadrature;
  for (double snr : {1.0, 100.0, 1e5}) {
    const BoundEstimate mc = power_constrained_dispersion(kRay, snr);
    EXPECT_NEAR(mc.value, power_constrained_dispersion(kRay, snr, q).value, 4.0 * mc.std_error);
  }
}

TEST(PowerDispersion, HighSnrLimitAndOrdering) {
  EXPECT_NEAR(power_constrained_dispersion(kRay, 1e5).value, dispersion(kRay), 0.01);
  const BoundEstimate low = power_constrained_dispersion(kRay, 1.0);
  EXPECT_LT(low.value, dispersion(kRay));
  EXPECT_GT(low.std_error, 0.0);
}

TEST(PowerDispersion, IndependentRunsAgree) {
  PowerDispersionOptions a, b;
  b.mc.seed = 777;
  const BoundEstimate x = power_constrained_dispersion(kRay, 1.0, a);
  const BoundEstimate y = power_constrained_dispersion(kRay, 1.0, b);
  EXPECT_NEAR(x.value, y.value, 3.0 * std::hypot(x.std_error, y.std_error));
}

TEST(PowerDispersion, MonotoneOverSnrGridWithCommonNumbers) {
  PowerDispersionOptions opt;
  opt.mc.samples = 200000;
  double prev = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double v = power_constrained_dispersion(kRay, std::pow(10.0, 0.25 * k), opt).value;
    EXPECT_GT(v, prev) << k;
    prev = v;
  }
}

TEST(PowerDispersion, RejectsNonPositiveSnr) {
  EXPECT_THROW(power_constrained_dispersion(kRay, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace icfade
