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

#include "icfade/simulator.hpp"

namespace icfade {
namespace {

const FadingModel kAwgn = FadingModel::awgn();
const FadingModel kRay = FadingModel::rayleigh();

TEST(Codebook, InsideOpenCube) {
  const Codebook cb = sample_codebook(2, 3, 1.0, 77);
  ASSERT_EQ(cb.points.size(), 6u);
  for (double x : cb.points) {
    EXPECT_GT(x, -0.5);
    EXPECT_LT(x, 0.5);
  }
}

TEST(Codebook, DeterministicAndNested) {
  const Codebook a = sample_codebook(5, 100, 3.0, 8);
  EXPECT_EQ(a.points, sample_codebook(5, 100, 3.0, 8).points);
  EXPECT_NE(a.points, sample_codebook(5, 100, 3.0, 9).points);
  const Codebook big = sample_codebook(5, 300, 3.0, 8);
  EXPECT_TRUE(std::equal(a.points.begin(), a.points.end(), big.points.begin()));
}

TEST(Codebook, CoordinatesCentered) {
  const Codebook cb = sample_codebook(10, 100000, 2.0, 3);
  const BoundEstimate m = mean_estimate(cb.points);
  EXPECT_NEAR(m.value, 0.0, 5.0 * m.std_error);
}

TEST(Codebook, Guards) {
  EXPECT_THROW(sample_codebook(1000, 100001, 1.0, 1), std::length_error);
  EXPECT_THROW(sample_codebook(0, 1, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(sample_codebook(1, 0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(sample_codebook(1, 1, 0.0, 1), std::invalid_argument);
}

TEST(Simulate, SingleCodewordNeverErrs) {
  const Codebook cb = sample_codebook(4, 1, 10.0, 1);
  EXPECT_EQ(simulate_dt_error(cb, kRay, {1.0}, 1000, 5).value, 0.0);
}

TEST(Simulate, RejectsFewTrials) {
  const Codebook cb = sample_codebook(4, 4, 10.0, 1);
  EXPECT_THROW(simulate_dt_error(cb, kRay, {1.0}, 999, 5), std::invalid_argument);
}

TEST(Simulate, FastPathMatchesReferenceDecoder) {
  for (const FadingModel& model : {kAwgn, kRay}) {
    const Codebook cb = sample_codebook(4, 64, 12.0, 2);
    SimOptions fast, ref;
    ref.decoder = Decoder::DtThresholdReference;
    const BoundEstimate a = simulate_dt_error(cb, model, {1.0}, 3000, 11, fast);
    const BoundEstimate b = simulate_dt_error(cb, model, {1.0}, 3000, 11, ref);
    EXPECT_EQ(a.value, b.value) << model.name();
    EXPECT_GT(a.value, 0.0);
  }
}

TEST(Simulate, FastDistanceFormMatchesInformationDensity) {
  // i(c; y, h) = base - ||y - h c||^2 / (2 sigma^2) per codeword.
  Rng r(3, Stream::Generic);
  const double a = 20.0, sigma = 1.5;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 6;
    double base = 0.0, d2 = 0.0, direct = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double h = std::sqrt(r.exponential());
      const double x = r.uniform(-0.5 * a, 0.5 * a);
      const double y = h * r.uniform(-0.5 * a, 0.5 * a) + sigma * r.normal();
      base += std::log(a * h / sigma) - 0.5 * std::log(2.0 * std::numbers::pi) +
              information_density_error_term(y, h, a, sigma);
      d2 += (y - h * x) * (y - h * x);
      direct += information_density(x, y, h, a, sigma);
    }
    ASSERT_NEAR(base - d2 / (2.0 * sigma * sigma), direct, 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Simulate, ThreadsDoNotChangeResults) {
  const Codebook cb = sample_codebook(6, 128, 16.0, 4);
  SimOptions one, many;
  many.threads = 3;
  EXPECT_EQ(simulate_dt_error(cb, kRay, {1.0}, 5000, 9, one).value,
            simulate_dt_error(cb, kRay, {1.0}, 5000, 9, many).value);
}

TEST(Simulate, MaximumLikelihoodNoWorseThanThreshold) {
  const Codebook cb = sample_codebook(2, 16, 8.0, 5);
  SimOptions ml;
  ml.decoder = Decoder::MaximumLikelihood;
  const BoundEstimate dt = simulate_dt_error(cb, kRay, {1.0}, 100000, 6);
  const BoundEstimate best = simulate_dt_error(cb, kRay, {1.0}, 100000, 6, ml);
  EXPECT_LE(best.value, dt.value + 3.0 * std::hypot(dt.std_error, best.std_error));
}

TEST(Simulate, EnsembleRespectsDtBound) {
  for (const FadingModel& model : {kAwgn, kRay}) {
    const EnsembleResult ens = simulate_ensemble(8, 256, 32.0, model, {1.0}, 10, 5000, 13);
    DtQuery q;
    q.n = 8;
    q.a = 32.0;
    q.m = 256;
    const BoundEstimate bound = dt_bound(model, {1.0}, q, McConfig{14, 200000, 4096, 1});
    EXPECT_LE(ens.mean.value, bound.value + 3.0 * std::hypot(ens.mean.std_error, bound.std_error))
        << model.name();
    EXPECT_EQ(ens.per_codebook.size(), 10u);
  }
}

TEST(Simulate, MoreCodewordsMoreErrors) {
  const EnsembleResult small = simulate_ensemble(8, 64, 32.0, kAwgn, {1.0}, 5, 5000, 21);
  const EnsembleResult large = simulate_ensemble(8, 1024, 32.0, kAwgn, {1.0}, 5, 5000, 21);
  EXPECT_LT(small.mean.value, large.mean.value);
}

TEST(Simulate, FadingHurts) {
  const EnsembleResult awgn = simulate_ensemble(8, 256, 32.0, kAwgn, {1.0}, 5, 5000, 22);
  const EnsembleResult ray = simulate_ensemble(8, 256, 32.0, kRay, {1.0}, 5, 5000, 22);
  EXPECT_GE(ray.mean.value + 3.0 * std::hypot(ray.mean.std_error, awgn.mean.std_error), awgn.mean.value);
}

TEST(Tiling, Nld) {
  EXPECT_EQ(tiled_nld(-1.5, 10.0, 0.0), -1.5);
  EXPECT_NEAR(tiled_nld(-1.5, 10.0, 10.0), -1.5 - std::log(2.0), 1e-15);
  for (std::size_t n : {10, 100, 1000}) {
    const TilingSchedule s = tiling_schedule(n, 2.0, 1.0);
    const double penalty = -tiled_nld(0.0, s.a, s.b);
    EXPECT_NEAR(penalty, std::log1p(1.0 / static_cast<double>(n)), 1e-12);
    EXPECT_LE(penalty, 1.0 / static_cast<double>(n));
  }
  EXPECT_THROW(tiled_nld(0.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(tiled_nld(0.0, 1.0, -1.0), std::invalid_argument);
}

TEST(Tiling, BudgetLimits) {
  const TilingErrorBudget b = tiled_error_budget(0.01, 100, kRay, {1e12, 1e-9}, 1.0);
  EXPECT_NEAR(b.total, 0.01, 1e-12);
}

TEST(Tiling, RayleighExample) {
  const TilingErrorBudget b = tiled_error_budget(0.01, 100, kRay, {100.0, 0.01}, 1.0);
  EXPECT_LE(b.cross_copy, 200.0 * q_function(0.5));
  EXPECT_NEAR(b.deep_fade, 100.0 * -std::expm1(-1e-4), 1e-15);
  EXPECT_NEAR(b.total, 0.01 + b.cross_copy + b.deep_fade, 1e-15);
}

TEST(Tiling, ScheduleTermsVanishLikeOneOverN) {
  for (std::size_t n : {10, 100, 1000, 10000}) {
    const TilingSchedule s = tiling_schedule(n, 2.0, 1.0);
    const TilingErrorBudget b = tiled_error_budget(0.0, n, kRay, {s.b, s.h_min_star}, 1.0);
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(b.cross_copy, 2.0 * nn * q_function(0.5 * nn), 1e-12 * b.cross_copy + 1e-300);
    EXPECT_LE(nn * b.total, 1.01);
  }
}

TEST(Tiling, RejectsBadSpec) {
  EXPECT_THROW(tiled_error_budget(0.1, 10, kRay, {-1.0, 0.1}, 1.0), std::invalid_argument);
  EXPECT_THROW(tiled_error_budget(0.1, 10, kRay, {1.0, 0.0}, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace icfade
