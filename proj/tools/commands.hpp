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

#ifndef ICFADE_TOOLS_COMMANDS_HPP
#define ICFADE_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "csv.hpp"

namespace icfade::tools {

inline constexpr const char* kToolVersion = "icfade 0.1.0";

/// Every option of every command. Option names on the command line and keys
/// in a --config file are these field names with '_' written as '-'.
struct RunConfig {
  std::string fading = "awgn";
  double sigma2 = 1.0;
  std::size_t n = 100;
  double eps = 0.01;
  std::vector<std::size_t> ns{100, 200, 400, 800};
  std::vector<double> eps_list{0.1};
  double a_over_sigma = 0.0;  ///< 0 selects the schedule sigma n^(2 + 2/alpha)
  std::uint64_t m_codebook = 4096;
  double snr_db_min = 0.0;
  double snr_db_max = 50.0;
  double snr_db_step = 2.5;
  std::size_t samples = 100000;
  std::size_t trials = 100000;
  std::size_t codebooks = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string figure;
};

/// Metadata written into the `#` block: tool version, RNG, then every flag.
using FlagList = std::vector<std::pair<std::string, std::string>>;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Column names of a point/sweep row.
const std::vector<std::string>& point_columns();

/// All four NLD values at one (n, eps).
std::vector<Cell> point_row(const RunConfig& cfg, std::size_t n, double eps);

void cmd_point(const RunConfig& cfg, const FlagList& flags, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, const FlagList& flags, std::ostream& out);
void cmd_figure(const RunConfig& cfg, const FlagList& flags, std::ostream& out);
void cmd_simulate(const RunConfig& cfg, const FlagList& flags, std::ostream& out);

/// Checks owned by the library modules, run before any work is dispatched.
/// Throws std::invalid_argument.
void validate_config(const std::string& command, const RunConfig& cfg);

}  // namespace icfade::tools

#endif  // ICFADE_TOOLS_COMMANDS_HPP
