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

#include "commands.hpp"

#include <cmath>
#include <stdexcept>

#include "icfade/icfade.hpp"

namespace icfade::tools {

namespace {

void write_header(CsvWriter& csv, const FlagList& flags) {
  csv.meta("version", kToolVersion);
  csv.meta("rng", kRngAlgorithm);
  for (const auto& [key, value] : flags) csv.meta(key, value);
}

std::optional<double> cube_side(const RunConfig& cfg) {
  if (cfg.a_over_sigma > 0.0) return cfg.a_over_sigma * std::sqrt(cfg.sigma2);
  return std::nullopt;
}

McConfig mc_for(const RunConfig& cfg, std::uint64_t tag, std::size_t samples) {
  return McConfig{derive_seed(cfg.seed, tag), samples, 4096, cfg.threads};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0xa0761d6478bd642fULL * (tag + 1));
  return splitmix64(s);
}

const std::vector<std::string>& point_columns() {
  static const std::vector<std::string> cols{
      "n",          "eps",           "fading",  "sigma2",     "delta_star", "V",      "nld_plain",
      "nld_converse3", "nld_spb", "nld_spb_se", "nld_dt",     "nld_dt_se", "seed"};
  return cols;
}

std::vector<Cell> point_row(const RunConfig& cfg, std::size_t n, double eps) {
  const FadingModel model = FadingModel::parse(cfg.fading);
  const ChannelParams params{cfg.sigma2, false};
  const double plain = nld_normal_approx(model, params, {n, eps, NldVariant::Plain});
  const double third = nld_normal_approx(model, params, {n, eps, NldVariant::ConverseThirdOrder});

  SpbOptions spb_opt;
  spb_opt.mc = mc_for(cfg, 1, cfg.samples);
  const SpbInversion spb = spb_optimal_nld(model, params, n, eps, spb_opt);

  DtOptions dt_opt;
  dt_opt.mode = DtMode::Search;
  dt_opt.a = cube_side(cfg);
  dt_opt.mc = mc_for(cfg, 2, cfg.samples);
  const DtAchievability dt = dt_achievable_nld(model, params, n, eps, dt_opt);

  return {static_cast<std::uint64_t>(n), eps, model.name(), cfg.sigma2,
          poltyrev_capacity(model, params), dispersion(model), plain, third,
          spb.nld.value, spb.nld.std_error, dt.nld.value, dt.nld.std_error, cfg.seed};
}

void cmd_point(const RunConfig& cfg, const FlagList& flags, std::ostream& out) {
  CsvWriter csv(out);
  write_header(csv, flags);
  csv.columns(point_columns());
  csv.row(point_row(cfg, cfg.n, cfg.eps));
}

void cmd_sweep(const RunConfig& cfg, const FlagList& flags, std::ostream& out) {
  CsvWriter csv(out);
  write_header(csv, flags);
  csv.columns(point_columns());
  for (double eps : cfg.eps_list) {
    for (std::size_t n : cfg.ns) csv.row(point_row(cfg, n, eps));
  }
}

void cmd_figure(const RunConfig& cfg, const FlagList& flags, std::ostream& out) {
  CsvWriter csv(out);
  write_header(csv, flags);
  if (cfg.figure == "fig1") {
    const FadingModel model = FadingModel::parse(cfg.fading);
    PowerDispersionOptions opt;
    opt.mc = McConfig{derive_seed(cfg.seed, 3), cfg.samples, 1 << 14, cfg.threads};
    const double v_inf = dispersion(model);
    csv.columns({"snr_db", "V_power_constrained", "V_power_constrained_se", "V_unconstrained"});
    const auto steps =
        static_cast<std::size_t>(std::floor((cfg.snr_db_max - cfg.snr_db_min) / cfg.snr_db_step + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) {
      const double db = cfg.snr_db_min + static_cast<double>(k) * cfg.snr_db_step;
      // Same seed at every SNR: common random numbers keep the curve smooth.
      const BoundEstimate v = power_constrained_dispersion(model, std::pow(10.0, db / 10.0), opt);
      csv.row({db, v.value, v.std_error, v_inf});
    }
  } else if (cfg.figure == "fig2") {
    csv.columns({"m", "V_nakagami", "V_awgn"});
    for (int k = -4; k <= 24; ++k) {
      const double m = std::exp2(0.25 * k);
      csv.row({m, dispersion(FadingModel::nakagami(m)), dispersion(FadingModel::awgn())});
    }
  } else {
    csv.columns({"u", "eta1", "eta1_approx", "eta2", "eta2_approx", "eta3", "eta3_approx"});
    for (int k = 0; k <= 60; ++k) {
      const double u = std::pow(10.0, -2.0 + 0.05 * k);
      csv.row({u, eta(1, u), eta_small_u_approx(1, u), eta(2, u), eta_small_u_approx(2, u),
               eta(3, u), eta_small_u_approx(3, u)});
    }
  }
}

void cmd_simulate(const RunConfig& cfg, const FlagList& flags, std::ostream& out) {
  const FadingModel model = FadingModel::parse(cfg.fading);
  const ChannelParams params{cfg.sigma2, false};
  const double a = cube_side(cfg).value_or(default_cube_side(model, params.sigma(), cfg.n));
  SimOptions sim;
  sim.threads = cfg.threads;
  const std::uint64_t seed = derive_seed(cfg.seed, 4);
  const EnsembleResult ens = simulate_ensemble(cfg.n, cfg.m_codebook, a, model, params,
                                               cfg.codebooks, cfg.trials, seed, sim);
  DtQuery q;
  q.n = cfg.n;
  q.a = a;
  q.m = cfg.m_codebook;
  const BoundEstimate bound = dt_bound(model, params, q, mc_for(cfg, 5, cfg.samples));

  CsvWriter csv(out);
  write_header(csv, flags);
  csv.meta("cube_side", format_real(a));
  csv.columns({"kind", "index", "seed", "error", "std_error", "samples"});
  for (std::size_t k = 0; k < ens.per_codebook.size(); ++k) {
    const BoundEstimate& e = ens.per_codebook[k];
    csv.row({std::string("codebook"), static_cast<std::uint64_t>(k), codebook_seed(seed, k),
             e.value, e.std_error, static_cast<std::uint64_t>(e.samples)});
  }
  csv.row({std::string("ensemble"), std::uint64_t{0}, seed, ens.mean.value, ens.mean.std_error,
           static_cast<std::uint64_t>(ens.mean.samples)});
  csv.row({std::string("dt_bound"), std::uint64_t{0}, derive_seed(cfg.seed, 5), bound.value,
           bound.std_error, static_cast<std::uint64_t>(bound.samples)});
}

void validate_config(const std::string& command, const RunConfig& cfg) {
  (void)FadingModel::parse(cfg.fading);
  ChannelParams{cfg.sigma2, false}.validate();
  require(cfg.threads >= 1, "threads must be at least 1");
  require(cfg.a_over_sigma == 0.0 || cfg.a_over_sigma >= 1.0,
          "a-over-sigma must be 0 (schedule) or at least 1");
  if (command == "point") {
    NldQuery{cfg.n, cfg.eps, NldVariant::Plain}.validate();
    require(cfg.samples >= 1000, "samples must be at least 1000");
  } else if (command == "sweep") {
    require(!cfg.ns.empty() && !cfg.eps_list.empty(), "sweep needs at least one n and one eps");
    for (double eps : cfg.eps_list) {
      for (std::size_t n : cfg.ns) NldQuery{n, eps, NldVariant::Plain}.validate();
    }
    require(cfg.samples >= 1000, "samples must be at least 1000");
  } else if (command == "figure") {
    require(cfg.figure == "fig1" || cfg.figure == "fig2" || cfg.figure == "fig3",
            "figure must be one of fig1, fig2, fig3");
    if (cfg.figure == "fig1") {
      require(cfg.snr_db_step > 0.0 && cfg.snr_db_min <= cfg.snr_db_max,
              "snr grid needs step > 0 and min <= max");
      require(cfg.samples >= 1000, "samples must be at least 1000");
    }
  } else if (command == "simulate") {
    require(cfg.n >= 1, "n must be at least 1");
    require(cfg.m_codebook >= 1, "m-codebook must be at least 1");
    require(cfg.trials >= 1000, "trials must be at least 1000");
    require(cfg.codebooks >= 2, "codebooks must be at least 2");
    require(cfg.samples >= 1000, "samples must be at least 1000");
  }
}

}  // namespace icfade::tools
