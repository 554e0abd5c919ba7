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

#ifndef ICFADE_TOOLS_VALIDATION_HPP
#define ICFADE_TOOLS_VALIDATION_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace icfade::tools {

struct ValidationOptions {
  bool quick = false;  ///< 10x fewer samples, 5-SE gates instead of 3
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Test hook: the second run of the determinism check uses another seed.
  bool corrupt_seed = false;
  /// Criteria re-run by the determinism check.
  std::vector<int> determinism_inner{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const ValidationOptions& opt);

std::vector<CriterionResult> run_validation(const ValidationOptions& opt,
                                            const std::vector<int>& ids = {});

/// CSV report: criterion, status, name, measured.
void write_report(const std::vector<CriterionResult>& results, std::ostream& out);

/// One human-readable line, e.g. "criterion 3 PASS fig2-nakagami: ...".
std::string summary_line(const CriterionResult& r);

}  // namespace icfade::tools

#endif  // ICFADE_TOOLS_VALIDATION_HPP
