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

#include "qthermo/scenario.hpp"

#include <fstream>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

class MatrixReader {
 public:
  explicit MatrixReader(std::uint64_t seed) : rng_(seed) {}

  CMatrix read(const Json& j, Index expected_dim, const std::string& where) {
    CMatrix m;
    if (j.is_object() && j.contains("random")) {
      m = draw(j, expected_dim, where);
    } else {
      try {
        m = matrix_from_json(j);
      } catch (const Error& e) {
        fail(ErrorKind::InvalidInput, where + ": " + e.what());
      }
    }
    if (m.rows() != expected_dim) {
      fail(ErrorKind::InvalidInput, where + ": expected dimension " + std::to_string(expected_dim) +
                                        ", got " + std::to_string(m.rows()));
    }
    return m;
  }

  HermitianMatrix hermitian(const Json& j, Index dim, const std::string& where) {
    return HermitianMatrix(read(j, dim, where));
  }

  DensityMatrix density(const Json& j, Index dim, const std::string& where) {
    return DensityMatrix(HermitianMatrix(read(j, dim, where)));
  }

 private:
  CMatrix draw(const Json& j, Index expected_dim, const std::string& where) {
    const std::string kind = require_string(j, "random", where);
    if (kind == "hermitian") {
      double scale = 1.0;
      if (j.contains("scale")) scale = require_number(j, "scale", where);
      if (!(scale >= 0.0)) fail(ErrorKind::InvalidInput, where + ": scale must be non-negative");
      return random_hermitian(expected_dim, rng_, scale).matrix();
    }
    if (kind == "density") {
      int rank = 0;
      if (j.contains("rank")) rank = require_int(j, "rank", where);
      if (rank < 0) fail(ErrorKind::InvalidInput, where + ": rank must be non-negative");
      return random_density(expected_dim, rng_, rank).matrix();
    }
    fail(ErrorKind::InvalidInput, where + ": unknown random kind \"" + kind + "\"");
  }

  Rng rng_;
};

Index positive_dim(const Json& doc, const char* key) {
  const int d = require_int(doc, key, "scenario");
  if (d < 1) fail(ErrorKind::InvalidInput, std::string("scenario: ") + key + " must be positive");
  return d;
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, where + " must be an array of numbers");
  std::vector<double> out;
  for (const Json& x : j) {
    if (!x.is_number()) fail(ErrorKind::InvalidInput, where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

BetaPolicy parse_policy(const Json& j) {
  const std::string kind = require_string(j, "kind", "policy");
  if (kind == "constant") return ConstantBeta{require_number(j, "beta", "policy")};
  if (kind == "energy_matching") return EnergyMatching{};
  if (kind == "tabulated") {
    try {
      return TabulatedBeta(number_array(require_field(j, "times", "policy"), "policy.times"),
                           number_array(require_field(j, "betas", "policy"), "policy.betas"));
    } catch (const Error& e) {
      fail(ErrorKind::InvalidInput, std::string("policy: ") + e.what());
    }
  }
  fail(ErrorKind::InvalidInput, "policy: unknown kind \"" + kind + "\"");
}

BetaSolveConfig parse_solver(const Json& doc) {
  BetaSolveConfig cfg;
  if (!doc.contains("beta_solver")) return cfg;
  const Json& j = doc.at("beta_solver");
  if (j.contains("abs_tol")) cfg.abs_tol = require_number(j, "abs_tol", "beta_solver");
  if (j.contains("max_iter")) cfg.max_iter = require_int(j, "max_iter", "beta_solver");
  if (j.contains("beta_clamp")) cfg.beta_clamp = require_number(j, "beta_clamp", "beta_solver");
  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorKind::InvalidInput, e.what());
  }
  return cfg;
}

}  // namespace

const char* to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Explicit: return "explicit";
    case InitialKind::ProductGibbs: return "product_gibbs";
    case InitialKind::Product: return "product";
    case InitialKind::Perturbed: return "perturbed";
  }
  return "unknown";
}

const char* policy_name(const BetaPolicy& policy) {
  if (std::holds_alternative<ConstantBeta>(policy)) return "constant";
  if (std::holds_alternative<EnergyMatching>(policy)) return "energy_matching";
  return "tabulated";
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) fail(ErrorKind::InvalidInput, "scenario: top level must be an object");
  const int version = require_int(doc, "spec_version", "scenario");
  if (version != kScenarioFormatVersion) {
    fail(ErrorKind::InvalidInput, "scenario: unsupported spec_version " + std::to_string(version));
  }
  const std::string name = require_string(doc, "name", "scenario");
  const Index d_s = positive_dim(doc, "d_S");
  const Index d_e = positive_dim(doc, "d_E");
  if (d_e < 2) fail(ErrorKind::InvalidInput, "scenario: d_E must be at least 2");

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    const Json& s = doc.at("seed");
    const bool non_negative = s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0);
    if (!non_negative) fail(ErrorKind::InvalidInput, "scenario: seed must be a non-negative integer");
    seed = s.get<std::uint64_t>();
  }
  MatrixReader reader(seed);

  EnvHamiltonian h_env(reader.hermitian(require_field(doc, "h_env", "scenario"), d_e, "h_env"));

  const Json& segs = require_field(doc, "segments", "scenario");
  if (!segs.is_array() || segs.empty()) {
    fail(ErrorKind::InvalidInput, "scenario: segments must be a non-empty array");
  }
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Json& s = segs[i];
    const std::string where = "segments[" + std::to_string(i) + "]";
    Segment seg{require_number(s, "t_start", where), require_number(s, "t_end", where),
                reader.hermitian(require_field(s, "h_sys", where), d_s, where + ".h_sys"),
                reader.hermitian(require_field(s, "h_int", where), d_s * d_e, where + ".h_int"),
                std::nullopt, std::nullopt};
    if (s.contains("h_sys_end")) seg.h_sys_end = reader.hermitian(s.at("h_sys_end"), d_s, where + ".h_sys_end");
    if (s.contains("h_int_end")) {
      seg.h_int_end = reader.hermitian(s.at("h_int_end"), d_s * d_e, where + ".h_int_end");
    }
    segments.push_back(std::move(seg));
  }
  auto schedule = std::make_shared<const HamiltonianSchedule>(h_env, d_s, std::move(segments));

  const Json& init = require_field(doc, "initial", "scenario");
  const std::string kind = require_string(init, "kind", "initial");
  std::optional<BipartiteState> initial;
  InitialKind initial_kind{};
  if (kind == "explicit") {
    initial_kind = InitialKind::Explicit;
    initial.emplace(d_s, d_e, reader.density(require_field(init, "state", "initial"), d_s * d_e, "initial.state"));
  } else if (kind == "product_gibbs") {
    initial_kind = InitialKind::ProductGibbs;
    DensityMatrix rho_s = reader.density(require_field(init, "rho_sys", "initial"), d_s, "initial.rho_sys");
    const double beta = require_number(init, "beta", "initial");
    initial.emplace(BipartiteState::product(rho_s, gibbs_state({ExtendedReal(beta), h_env})));
  } else if (kind == "product") {
    initial_kind = InitialKind::Product;
    DensityMatrix rho_s = reader.density(require_field(init, "rho_sys", "initial"), d_s, "initial.rho_sys");
    DensityMatrix rho_e = reader.density(require_field(init, "rho_env", "initial"), d_e, "initial.rho_env");
    initial.emplace(BipartiteState::product(rho_s, rho_e));
  } else if (kind == "perturbed") {
    initial_kind = InitialKind::Perturbed;
    DensityMatrix rho_s = reader.density(require_field(init, "rho_sys", "initial"), d_s, "initial.rho_sys");
    const double beta = require_number(init, "beta", "initial");
    HermitianMatrix chi = reader.hermitian(require_field(init, "chi", "initial"), d_s * d_e, "initial.chi");
    initial.emplace(make_perturbed_initial(rho_s, beta, chi, h_env).state());
  } else {
    fail(ErrorKind::InvalidInput, "initial: unknown kind \"" + kind + "\"");
  }

  BetaPolicy policy = parse_policy(require_field(doc, "policy", "scenario"));
  const int steps = require_int(doc, "steps_per_segment", "scenario");
  if (steps < 1) fail(ErrorKind::InvalidInput, "scenario: steps_per_segment must be positive");

  return Scenario{name,  std::move(schedule), initial_kind, std::move(*initial), std::move(policy),
                  steps, seed,                parse_solver(doc)};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  try {
    return parse_scenario(read_json_file(path));
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

ScenarioResult run_scenario(const Scenario& scenario, std::optional<int> steps_override) {
  const int steps = steps_override.value_or(scenario.steps_per_segment);
  if (steps < 1) fail(ErrorKind::InvalidInput, "steps must be positive");
  Trajectory traj = evolve(scenario.initial, *scenario.schedule, steps, scenario.solver);
  EPReport report = build_report(traj, scenario.policy);
  const bool product =
      scenario.initial_kind == InitialKind::ProductGibbs || scenario.initial_kind == InitialKind::Product;
  BoundReport bounds = compute_bounds(traj.initial(), traj.final(), report.beta0, report.beta_tau,
                                      traj.h_env(), product);
  return ScenarioResult{std::move(traj), report, bounds};
}

Json scenario_report_json(const Scenario& scenario, const ScenarioResult& result) {
  Json j = report_to_json(result.report, &result.bounds);
  const auto& traj = result.trajectory;
  j["scenario"] = Json{{"name", scenario.name},
                       {"spec_version", kScenarioFormatVersion},
                       {"d_S", scenario.schedule->d_s()},
                       {"d_E", scenario.schedule->d_e()},
                       {"duration", scenario.schedule->duration()},
                       {"segments", scenario.schedule->segments().size()},
                       {"steps_per_segment", (traj.size() - 1) / scenario.schedule->segments().size()},
                       {"initial_kind", to_string(scenario.initial_kind)},
                       {"policy", policy_name(scenario.policy)},
                       {"seed", scenario.seed},
                       {"unitarity_defect", traj.propagator().unitarity_defect()}};
  return j;
}

HamiltonianSchedule random_schedule(Index d_s, Index d_e, int segments, double duration, Rng& rng,
                                    double coupling_min, double coupling_max) {
  if (segments < 1 || !(duration > 0.0)) {
    fail(ErrorKind::InvalidInput, "random_schedule: need segments >= 1 and duration > 0");
  }
  EnvHamiltonian h_env(random_hermitian(d_e, rng, 1.0));
  std::vector<Segment> segs;
  for (int i = 0; i < segments; ++i) {
    const double t0 = duration * i / segments;
    const double t1 = i + 1 == segments ? duration : duration * (i + 1) / segments;
    const double g = uniform(rng, coupling_min, coupling_max);
    segs.push_back(Segment{t0, t1, random_hermitian(d_s, rng, 1.0), random_hermitian(d_s * d_e, rng, g),
                           std::nullopt, std::nullopt});
  }
  return HamiltonianSchedule(std::move(h_env), d_s, std::move(segs));
}

qubit::RegionGrid parse_region_grid(const Json& doc) {
  if (!doc.is_object()) fail(ErrorKind::InvalidInput, "grid: top level must be an object");
  const int version = require_int(doc, "spec_version", "grid");
  if (version != kScenarioFormatVersion) {
    fail(ErrorKind::InvalidInput, "grid: unsupported spec_version " + std::to_string(version));
  }
  qubit::RegionGrid g;
  if (doc.contains("epsilon")) g.epsilon = require_number(doc, "epsilon", "grid");
  g.beta0 = require_number(doc, "beta0", "grid");
  const Json& pol = require_field(doc, "policy", "grid");
  const std::string kind = require_string(pol, "kind", "grid.policy");
  if (kind == "constant") {
    g.tau_policy = ConstantBeta{require_number(pol, "beta", "grid.policy")};
  } else if (kind == "energy_matching") {
    g.tau_policy = EnergyMatching{};
  } else {
    fail(ErrorKind::InvalidInput, "grid.policy: kind must be constant or energy_matching");
  }
  const Json& init = require_field(doc, "initial", "grid");
  g.initial.longitudinal = require_number(init, "p", "grid.initial");
  const double a_abs = require_number(init, "a_abs", "grid.initial");
  if (a_abs < 0.0) fail(ErrorKind::InvalidInput, "grid.initial: a_abs must be non-negative");
  g.initial.coherence = Complex(a_abs, 0.0);
  const Json& s = require_field(doc, "s", "grid");
  if (s.contains("min")) g.s_min = require_number(s, "min", "grid.s");
  if (s.contains("max")) g.s_max = require_number(s, "max", "grid.s");
  g.s_steps = require_int(s, "steps", "grid.s");
  const Json& b = require_field(doc, "b", "grid");
  if (b.contains("max")) g.b_max = require_number(b, "max", "grid.b");
  g.b_steps = require_int(b, "steps", "grid.b");
  g.validate();
  return g;
}

Json region_metadata_json(const std::string& name, const qubit::RegionMap& map) {
  const qubit::RegionGrid& g = map.grid;
  const bool matching = std::holds_alternative<EnergyMatching>(g.tau_policy);
  Json policy = matching ? Json{{"kind", "energy_matching"}}
                         : Json{{"kind", "constant"}, {"beta", std::get<ConstantBeta>(g.tau_policy).beta}};
  long feasible = 0;
  long holds = 0;
  for (const auto& r : map.rows) {
    feasible += r.feasible;
    holds += r.holds;
  }
  return Json{{"name", name},
              {"spec_version", kScenarioFormatVersion},
              {"epsilon", g.epsilon},
              {"beta0", g.beta0},
              {"policy", std::move(policy)},
              {"initial", {{"p", g.initial.longitudinal}, {"a_abs", std::abs(g.initial.coherence)}}},
              {"s", {{"min", g.s_min}, {"max", g.s_max}, {"steps", g.s_steps}}},
              {"b", {{"max", g.b_max}, {"steps", g.b_steps}}},
              {"boundary", matching ? "horizontal_line" : "ball"},
              {"ball_center", matching ? Json(nullptr) : Json(map.ball_center)},
              {"ball_radius", map.ball_radius},
              {"rows", map.rows.size()},
              {"feasible_cells", feasible},
              {"holding_cells", holds},
              {"boundary_mismatches", map.boundary_mismatches},
              {"columns", {"s", "b_abs", "rhs", "holds", "feasible", "ball_check"}}};
}

}  // namespace qthermo
