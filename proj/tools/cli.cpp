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

#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "validation.hpp"

namespace icfade::tools {

namespace {

struct BadArguments : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadArguments("cannot read config " + path + ": " + std::strerror(errno));
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadArguments(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& c : key) c = c == '_' ? '-' : c;
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

// Moves --config out of the argument list and inserts the file's entries
// right after the command name, skipping keys also given as flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw BadArguments("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty() || rest.empty()) return rest;
  auto given = [&](const std::string& key) {
    for (const std::string& a : rest) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> out{rest.front()};
  for (const auto& [key, value] : read_config(path)) {
    if (!given(key)) out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

FlagList collect_flags(const CLI::App& sub) {
  FlagList flags{{"command", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "out") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    flags.emplace_back(name, value);
  }
  return flags;
}

void add_common(CLI::App& sub, RunConfig& cfg, std::string& out_path) {
  sub.add_option("--fading", cfg.fading, "awgn, rayleigh or nakagami:<m>");
  sub.add_option("--sigma2", cfg.sigma2, "noise variance");
  sub.add_option("--seed", cfg.seed, "master seed");
  sub.add_option("--threads", cfg.threads, "worker threads (results do not depend on it)");
  sub.add_option("--out", out_path, "write CSV here instead of stdout");
}

void add_point_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--samples", cfg.samples, "Monte-Carlo samples per estimator");
  sub.add_option("--a-over-sigma", cfg.a_over_sigma, "cube side over sigma; 0 = n^(2+2/alpha)");
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-blocklength bounds for infinite constellations over fading channels",
               "icfade"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kToolVersion);

  std::map<std::string, RunConfig> cfgs;
  std::string out_path;
  ValidationOptions vopt;
  std::vector<int> criteria;

  RunConfig& point = cfgs["point"];
  CLI::App* point_cmd = app.add_subcommand("point", "all NLD values at one (n, eps)");
  add_common(*point_cmd, point, out_path);
  point_cmd->add_option("--n", point.n, "blocklength");
  point_cmd->add_option("--eps", point.eps, "target error probability");
  add_point_options(*point_cmd, point);

  RunConfig& sweep = cfgs["sweep"];
  sweep.fading = "rayleigh";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "point rows over a grid of n and eps");
  add_common(*sweep_cmd, sweep, out_path);
  sweep_cmd->add_option("--ns", sweep.ns, "blocklengths")->delimiter(',');
  sweep_cmd->add_option("--eps-list", sweep.eps_list, "error probabilities")->delimiter(',');
  add_point_options(*sweep_cmd, sweep);

  RunConfig& fig = cfgs["figure"];
  fig.fading = "rayleigh";
  fig.samples = 1'000'000;
  CLI::App* fig_cmd = app.add_subcommand("figure", "figure data as CSV");
  add_common(*fig_cmd, fig, out_path);
  fig_cmd->add_option("--figure,figure", fig.figure, "fig1, fig2 or fig3")->required();
  fig_cmd->add_option("--samples", fig.samples, "Monte-Carlo samples per SNR (fig1)");
  fig_cmd->add_option("--snr-db-min", fig.snr_db_min, "fig1 grid start, dB");
  fig_cmd->add_option("--snr-db-max", fig.snr_db_max, "fig1 grid end, dB");
  fig_cmd->add_option("--snr-db-step", fig.snr_db_step, "fig1 grid step, dB");

  RunConfig& sim = cfgs["simulate"];
  sim.n = 8;
  sim.a_over_sigma = 32.0;
  sim.samples = 1'000'000;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "DT decoder on random cube codebooks");
  add_common(*sim_cmd, sim, out_path);
  sim_cmd->add_option("--n", sim.n, "blocklength");
  sim_cmd->add_option("--m-codebook", sim.m_codebook, "codewords per codebook");
  sim_cmd->add_option("--a-over-sigma", sim.a_over_sigma, "cube side over sigma");
  sim_cmd->add_option("--trials", sim.trials, "trials per codebook");
  sim_cmd->add_option("--codebooks", sim.codebooks, "independent codebooks");
  sim_cmd->add_option("--samples", sim.samples, "Monte-Carlo samples for the DT bound");

  CLI::App* val_cmd = app.add_subcommand("validate", "run the acceptance criteria");
  val_cmd->add_flag("--quick", vopt.quick, "10x fewer samples, 5-SE gates");
  val_cmd->add_option("--seed", vopt.seed, "master seed");
  val_cmd->add_option("--threads", vopt.threads, "worker threads");
  val_cmd->add_option("--criteria", criteria, "subset of criteria (default all)")->delimiter(',');
  val_cmd->add_option("--out", out_path, "write the report here instead of stdout");
  val_cmd->add_flag("--corrupt-seed", vopt.corrupt_seed)->group("");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "icfade: " << e.what() << '\n';
    return kExitBadArguments;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    if (command != "validate") validate_config(command, cfgs[command]);
    for (int id : criteria) {
      if (id < 1 || id > kCriterionCount) {
        throw std::invalid_argument("criteria must lie in 1.." + std::to_string(kCriterionCount));
      }
    }
    if (vopt.threads < 1) throw std::invalid_argument("threads must be at least 1");
  } catch (const std::exception& e) {
    err << "icfade " << command << ": " << e.what() << '\n';
    return kExitBadArguments;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "icfade " << command << ": cannot open " << out_path << ": " << std::strerror(errno)
          << '\n';
      return kExitValidationFailed;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  try {
    const FlagList flags = collect_flags(*sub);
    if (command == "validate") {
      const auto results = run_validation(vopt, criteria);
      bool all = true;
      for (const CriterionResult& r : results) {
        all = all && r.pass;
        err << summary_line(r) << '\n';
      }
      CsvWriter csv(sink);
      csv.meta("version", kToolVersion);
      for (const auto& [key, value] : flags) csv.meta(key, value);
      write_report(results, sink);
      return all ? kExitOk : kExitValidationFailed;
    }
    if (command == "point") cmd_point(cfgs[command], flags, sink);
    if (command == "sweep") cmd_sweep(cfgs[command], flags, sink);
    if (command == "figure") cmd_figure(cfgs[command], flags, sink);
    if (command == "simulate") cmd_simulate(cfgs[command], flags, sink);
    sink.flush();
    if (!sink) throw std::runtime_error("write failed: " + std::string(std::strerror(errno)));
  } catch (const std::invalid_argument& e) {
    err << "icfade " << command << ": " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "icfade " << command << ": " << e.what() << '\n';
    return kExitValidationFailed;
  }
  return kExitOk;
}

}  // namespace icfade::tools
