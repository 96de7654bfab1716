// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qthermo/json_io.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo {

struct VerifySuiteConfig {
  int num_random_scenarios = 1000;
  std::vector<std::pair<Index, Index>> dims = {{2, 2}, {2, 3}, {3, 2}};
  /// Replaces every check's tolerance when set.
  std::optional<double> tolerance;
  /// Per-check tolerances keyed by check name.
  std::map<std::string, double> tolerance_overrides;
  std::uint64_t seed = 1;
  int steps_per_segment = 500;

  void validate() const;
};

/// One identity or inequality. `worst` is the largest defect seen: |residual|
/// for identities, (bound - value) for inequalities. A sample passes when its
/// defect is at most `tolerance`.
struct CheckSummary {
  std::string name;
  std::string description;
  double tolerance = 0.0;
  long passed = 0;
  long failed = 0;
  double worst = 0.0;
  bool seen = false;
};

struct VerifySummary {
  std::vector<CheckSummary> checks;
  int scenarios = 0;
  bool all_passed() const;
  long total_failed() const;
};

/// Default check names with their tolerances.
std::vector<std::pair<std::string, double>> default_check_tolerances();

VerifySummary run_verify(const VerifySuiteConfig& cfg);
Json verify_summary_json(const VerifySummary& summary);
/// One line per check: name, passed/failed, worst defect, tolerance.
std::string verify_summary_text(const VerifySummary& summary);

}  // namespace qthermo
