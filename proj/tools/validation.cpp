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

#include "validation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "csv.hpp"
#include "icfade/icfade.hpp"

namespace icfade::tools {

namespace {

struct Ctx {
  const ValidationOptions& opt;
  std::size_t scaled(std::size_t full) const { return opt.quick ? full / 10 : full; }
  double gate() const { return opt.quick ? 5.0 : 3.0; }
  McConfig mc(std::uint64_t tag, std::size_t full, std::size_t chunk = 4096) const {
    return McConfig{derive_seed(opt.seed, 100 + tag), scaled(full), chunk, opt.threads};
  }
};

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Lines of "key=value" joined by spaces.
class Measured {
 public:
  Measured& add(const std::string& key, double v) { return add(key, g(v)); }
  Measured& add(const std::string& key, const std::string& v) {
    text_ += (text_.empty() ? "" : " ") + key + "=" + v;
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

CriterionResult c1_capacity_loss(const Ctx& ctx) {
  const FadingModel ray = FadingModel::rayleigh();
  const CapacityLoss loss = capacity_loss_vs_awgn(ray);
  const auto h = sample_h(ray, derive_seed(ctx.opt.seed, 101), ctx.scaled(10'000'000));
  std::vector<double> ln_h(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) ln_h[i] = std::log(h[i]);
  const BoundEstimate mc = mean_estimate(ln_h);
  const double z = std::abs(-mc.value - loss.nats) / mc.std_error;
  const bool pass = std::abs(loss.nats - 0.2886) <= 0.002 && std::abs(loss.db - 2.507) <= 0.02 &&
                    z <= 5.0;
  Measured m;
  m.add("nats", loss.nats).add("db", loss.db).add("mc_nats", -mc.value).add("mc_z", z);
  return {1, "rayleigh-capacity-loss", pass, m.str()};
}

CriterionResult c2_dispersion(const Ctx& ctx) {
  const FadingModel ray = FadingModel::rayleigh();
  const double v = dispersion(ray);
  const auto h = sample_h(ray, derive_seed(ctx.opt.seed, 102), ctx.scaled(10'000'000));
  std::vector<double> ln_h(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) ln_h[i] = std::log(h[i]);
  const double v_mc = 0.5 + sample_moments(ln_h).variance;
  const double v_awgn = dispersion(FadingModel::awgn());
  const double rel = std::abs(v - v_mc) / v_mc;
  const bool pass = rel <= 0.005 && std::abs(v - 0.9112) <= 0.005 * 0.9112 && v_awgn == 0.5;
  Measured m;
  m.add("V", v).add("V_mc", v_mc).add("rel_err", rel).add("V_awgn", v_awgn);
  return {2, "rayleigh-dispersion", pass, m.str()};
}

CriterionResult c3_fig2(const Ctx&) {
  const double ms[] = {0.5, 1, 2, 4, 8, 16, 32, 64};
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  double v64 = 0.0;
  for (double m : ms) {
    const double v = dispersion(FadingModel::nakagami(m));
    decreasing = decreasing && v < prev;
    prev = v;
    v64 = v;
  }
  const double d1 =
      std::abs(dispersion(FadingModel::nakagami(1.0)) - dispersion(FadingModel::rayleigh()));
  const bool pass = decreasing && d1 <= 1e-9 && std::abs(v64 - 0.5) <= 0.01;
  Measured m;
  m.add("strictly_decreasing", decreasing ? "yes" : "no").add("V1_minus_rayleigh", d1).add("V64", v64);
  return {3, "fig2-nakagami-dispersion", pass, m.str()};
}

CriterionResult c4_fig1(const Ctx& ctx) {
  const FadingModel ray = FadingModel::rayleigh();
  PowerDispersionOptions opt;
  opt.mc = ctx.mc(4, 1'000'000, 1 << 14);
  bool monotone = true;
  double prev = -1.0;
  double last = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double db = 2.5 * k;
    last = power_constrained_dispersion(ray, std::pow(10.0, db / 10.0), opt).value;
    monotone = monotone && last > prev;
    prev = last;
  }
  const bool pass = monotone && std::abs(last - 0.9112) <= 0.01;
  Measured m;
  m.add("monotone", monotone ? "yes" : "no").add("V_50dB", last);
  return {4, "fig1-power-constrained-dispersion", pass, m.str()};
}

CriterionResult c5_spb_awgn(const Ctx& ctx) {
  const FadingModel awgn = FadingModel::awgn();
  const ChannelParams params;
  const std::size_t n = 16;
  bool pass = true;
  Measured m;
  for (double target : {0.9, 0.5, 0.1}) {
    const double delta = spb_optimal_nld(awgn, params, n, target).nld.value;
    const BoundEstimate closed = spb_error_prob(awgn, params, delta, n);
    const double log_t = -2.0 * delta - 2.0 * log_unit_ball_volume(n) / 16.0;
    const double reference = gamma_q(8.0, 0.5 * std::exp(log_t));
    SpbOptions rb;
    rb.mc = ctx.mc(5, 100000);
    rb.force_monte_carlo = true;
    const BoundEstimate rb_mc = spb_error_prob(awgn, params, delta, n, rb);
    SpbOptions ind = rb;
    ind.estimator = SpbEstimator::Indicator;
    const BoundEstimate ind_mc = spb_error_prob(awgn, params, delta, n, ind);
    const double rel = std::abs(closed.value - reference) / reference;
    const double z = std::abs(ind_mc.value - closed.value) / ind_mc.std_error;
    pass = pass && closed.method == Method::ClosedForm && rel <= 1e-12 &&
           std::abs(rb_mc.value - closed.value) <= 1e-12 && z <= ctx.gate();
    m.add("P" + g(target), closed.value).add("indicator_z", z);
  }
  return {5, "spb-awgn-cross-check", pass, m.str()};
}

CriterionResult c6_sandwich(const Ctx& ctx) {
  const FadingModel ray = FadingModel::rayleigh();
  const ChannelParams params;
  const double eps = 0.1;
  bool pass = true;
  double prev_gap = std::numeric_limits<double>::infinity();
  double prev_se = 0.0;
  Measured m;
  for (std::size_t n : {100, 200, 400, 800}) {
    const double nn = static_cast<double>(n);
    SpbOptions so;
    so.mc = ctx.mc(6, 100000);
    const SpbInversion spb = spb_optimal_nld(ray, params, n, eps, so);
    DtOptions dto;
    dto.mc = ctx.mc(16, 100000);
    const DtAchievability dt = dt_achievable_nld(ray, params, n, eps, dto);
    const double plain = nld_normal_approx(ray, params, {n, eps, NldVariant::Plain});
    const double third = nld_normal_approx(ray, params, {n, eps, NldVariant::ConverseThirdOrder});
    const double tol = 5.0 * std::log(nn) / nn;
    const double gap = std::abs(spb.nld.value - third);
    const double slack = ctx.opt.quick ? ctx.gate() * std::hypot(prev_se, spb.nld.std_error) : 0.0;
    pass = pass && dt.nld.value <= spb.nld.value && std::abs(spb.nld.value - plain) <= tol &&
           std::abs(dt.nld.value - plain) <= tol && gap < prev_gap + slack;
    prev_gap = gap;
    prev_se = spb.nld.std_error;
    const std::string s = "n" + std::to_string(n);
    m.add(s + "_dt", dt.nld.value).add(s + "_spb", spb.nld.value).add(s + "_gap3", gap);
  }
  return {6, "nld-sandwich", pass, m.str()};
}

CriterionResult c7_dt_vs_sim(const Ctx& ctx) {
  const ChannelParams params;
  const std::size_t n = 8;
  const std::uint64_t big_m = 4096;
  const double a = 32.0;
  bool pass = true;
  Measured m;
  int tag = 0;
  for (const FadingModel& model : {FadingModel::awgn(), FadingModel::rayleigh()}) {
    SimOptions sim;
    sim.threads = ctx.opt.threads;
    const EnsembleResult ens = simulate_ensemble(n, big_m, a, model, params, 20,
                                                 ctx.scaled(100000),
                                                 derive_seed(ctx.opt.seed, 107 + tag), sim);
    DtQuery q;
    q.n = n;
    q.a = a;
    q.m = big_m;
    const BoundEstimate bound = dt_bound(model, params, q, ctx.mc(17 + tag, 1'000'000));
    const double se = std::hypot(ens.mean.std_error, bound.std_error);
    pass = pass && ens.mean.value <= bound.value + ctx.gate() * se;
    m.add(model.name() + "_sim", ens.mean.value).add(model.name() + "_bound", bound.value)
        .add(model.name() + "_se", se);
    ++tag;
  }
  return {7, "dt-bound-vs-simulation", pass, m.str()};
}

CriterionResult c8_eta(const Ctx&) {
  double worst = 0.0;
  for (double u : {0.125, 0.25, 0.5}) {
    for (int i = 1; i <= 3; ++i) {
      const double exact = eta(i, u);
      worst = std::max(worst, std::abs(exact - eta_small_u_approx(i, u)) / exact);
    }
  }
  bool nondecreasing = true;
  double prev = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double v = eta(1, std::pow(10.0, -2.0 + 3.0 * k / 99.0));
    nondecreasing = nondecreasing && v >= prev;
    prev = v;
  }
  Measured m;
  m.add("max_rel_err", worst).add("eta1_nondecreasing", nondecreasing ? "yes" : "no");
  return {8, "eta-small-u-approximations", worst <= 0.05 && nondecreasing, m.str()};
}

CriterionResult c9_chi2_rate(const Ctx&) {
  bool pass = true;
  double prev = 0.0;
  Measured m;
  for (std::size_t n : {10, 40, 160, 640}) {
    const double l1 = log_chi2_normal_l1(n);
    if (prev > 0.0) {
      const double ratio = l1 / prev;
      pass = pass && ratio >= 0.40 && ratio <= 0.62;
      m.add("ratio_n" + std::to_string(n), ratio);
    } else {
      m.add("l1_n" + std::to_string(n), l1);
    }
    prev = l1;
  }
  return {9, "log-chi2-normal-rate", pass, m.str()};
}

CriterionResult c10_tail_bound(const Ctx& ctx) {
  const ChannelParams params;
  const std::size_t n = 10;
  const double a = 1000.0;
  struct Config {
    FadingModel model;
    double sds;  // A = n I + sds sqrt(n Var)
  };
  const Config configs[] = {{FadingModel::awgn(), 0.0},        {FadingModel::rayleigh(), 1.0},
                            {FadingModel::awgn(), -1.0},       {FadingModel::rayleigh(), 0.0},
                            {FadingModel::nakagami(2.0), 2.0}, {FadingModel::rayleigh(), 8.0}};
  bool pass = true;
  Measured m;
  int k = 0;
  for (const Config& c : configs) {
    const InfoDensityMoments mom = info_density_moments(c.model, a, 1.0, ctx.mc(30 + k, 100000));
    const double nn = static_cast<double>(n);
    const double A = nn * mom.mutual_info + c.sds * std::sqrt(nn * mom.variance);
    const TailBoundCheck chk = tail_bound_check(A, n, c.model, params, a, ctx.mc(40 + k, 1'000'000));
    const bool holds = chk.lhs.value <= chk.rhs + ctx.gate() * chk.lhs.std_error;
    pass = pass && holds;
    m.add("c" + std::to_string(k) + "_lhs", chk.lhs.value).add("c" + std::to_string(k) + "_rhs", chk.rhs);
    ++k;
  }
  return {10, "tail-bound-inequality", pass, m.str()};
}

std::string report_text(const ValidationOptions& opt, const std::vector<int>& ids) {
  std::ostringstream os;
  write_report(run_validation(opt, ids), os);
  return os.str();
}

std::string fig1_text(std::uint64_t seed, std::size_t samples) {
  RunConfig cfg;
  cfg.fading = "rayleigh";
  cfg.figure = "fig1";
  cfg.seed = seed;
  cfg.samples = samples;
  std::ostringstream os;
  cmd_figure(cfg, {{"command", "figure"}, {"seed", std::to_string(seed)}}, os);
  return os.str();
}

CriterionResult c11_determinism(const Ctx& ctx) {
  ValidationOptions quick = ctx.opt;
  quick.quick = true;
  ValidationOptions second = quick;
  if (ctx.opt.corrupt_seed) second.seed = quick.seed + 1;
  const bool report_same =
      report_text(quick, quick.determinism_inner) == report_text(second, quick.determinism_inner);
  const std::size_t samples = ctx.scaled(1'000'000);
  const bool fig_same = fig1_text(quick.seed, samples) == fig1_text(second.seed, samples);
  Measured m;
  m.add("quick_report_identical", report_same ? "yes" : "no")
      .add("fig1_identical", fig_same ? "yes" : "no");
  return {11, "determinism", report_same && fig_same, m.str()};
}

}  // namespace

CriterionResult run_criterion(int id, const ValidationOptions& opt) {
  const Ctx ctx{opt};
  switch (id) {
    case 1: return c1_capacity_loss(ctx);
    case 2: return c2_dispersion(ctx);
    case 3: return c3_fig2(ctx);
    case 4: return c4_fig1(ctx);
    case 5: return c5_spb_awgn(ctx);
    case 6: return c6_sandwich(ctx);
    case 7: return c7_dt_vs_sim(ctx);
    case 8: return c8_eta(ctx);
    case 9: return c9_chi2_rate(ctx);
    case 10: return c10_tail_bound(ctx);
    case 11: return c11_determinism(ctx);
    default: throw std::invalid_argument("no criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_validation(const ValidationOptions& opt,
                                            const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int k = 1; k <= kCriterionCount; ++k) todo.push_back(k);
  }
  std::vector<CriterionResult> out;
  for (int id : todo) {
    try {
      out.push_back(run_criterion(id, opt));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion-" + std::to_string(id), false, std::string("error=") + e.what()});
    }
  }
  return out;
}

void write_report(const std::vector<CriterionResult>& results, std::ostream& out) {
  CsvWriter csv(out);
  csv.columns({"criterion", "status", "name", "measured"});
  for (const CriterionResult& r : results) {
    csv.row({static_cast<std::int64_t>(r.id), std::string(r.pass ? "PASS" : "FAIL"), r.name,
             r.measured});
  }
}

std::string summary_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.name +
         ": " + r.measured;
}

}  // namespace icfade::tools
