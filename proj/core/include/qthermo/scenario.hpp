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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "qthermo/bounds.hpp"
#include "qthermo/dynamics.hpp"
#include "qthermo/entropy_production.hpp"
#include "qthermo/json_io.hpp"
#include "qthermo/qubit_example.hpp"
#include "qthermo/random.hpp"

namespace qthermo {

inline constexpr int kScenarioFormatVersion = 1;

enum class InitialKind { Explicit, ProductGibbs, Product, Perturbed };

const char* to_string(InitialKind kind);
const char* policy_name(const BetaPolicy& policy);

struct Scenario {
  std::string name;
  std::shared_ptr<const HamiltonianSchedule> schedule;
  InitialKind initial_kind;
  BipartiteState initial;
  BetaPolicy policy;
  int steps_per_segment = 100;
  std::uint64_t seed = 0;
  BetaSolveConfig solver;
};

/// Builds a scenario from its JSON document. Matrix fields accept the shared
/// matrix encoding or a random draw {"random": "hermitian" | "density", ...}
/// seeded from the document's "seed". Throws InvalidInput (and the state
/// constructors' errors) on invalid documents.
Scenario parse_scenario(const Json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Parses a file into JSON; InvalidInput on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

struct ScenarioResult {
  Trajectory trajectory;
  EPReport report;
  BoundReport bounds;
};

/// evolve, build_report and compute_bounds. `steps_override` replaces the
/// scenario's steps_per_segment when set.
ScenarioResult run_scenario(const Scenario& scenario, std::optional<int> steps_override = {});

/// Report JSON with a "scenario" metadata block and the bounds under "bounds".
Json scenario_report_json(const Scenario& scenario, const ScenarioResult& result);

/// Random schedule: H_E of spectral norm 1 (two distinct levels guaranteed),
/// `segments` constant pieces of equal length with random H_S of norm 1 and
/// H_SE of norm drawn from [coupling_min, coupling_max].
HamiltonianSchedule random_schedule(Index d_s, Index d_e, int segments, double duration, Rng& rng,
                                    double coupling_min = 0.3, double coupling_max = 1.0);

/// Region-map grid for the two-level example:
/// {"spec_version": 1, "name", "epsilon", "beta0", "policy", "initial": {"p", "a_abs"},
///  "s": {"min", "max", "steps"}, "b": {"max", "steps"}}.
qubit::RegionGrid parse_region_grid(const Json& doc);
/// Grid parameters, ball centre and radius, mismatch count.
Json region_metadata_json(const std::string& name, const qubit::RegionMap& map);

}  // namespace qthermo
