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

#include "qthermo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qthermo/bounds.hpp"
#include "qthermo/entropy_production.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/random.hpp"
#include "qthermo/scenario.hpp"

namespace qthermo {

namespace {

struct CheckDef {
  const char* name;
  const char* description;
  double tolerance;
};

constexpr CheckDef kChecks[] = {
    {"marginal_form", "unified EP: marginal form vs joint relative entropies", 1e-9},
    {"drift_split", "EP = Clausius EP + temperature-drift correction (quadrature)", 1e-6},
    {"energy_matching_reduction", "EP at (beta*_0, beta*_tau) equals the energy-matching EP", 1e-8},
    {"pythagorean", "D(rho_E||gamma(b)) = D(rho_E||gamma(b*)) + D(gamma(b*)||gamma(b))", 1e-8},
    {"mismatch_split", "EP = energy-matching EP + D_gamma(tau) - D_gamma(0)", 1e-8},
    {"minimality", "energy-matching EP <= EP(beta*_0, beta_tau) for random beta_tau", 1e-9},
    {"entropy_form", "energy-matching EP: entropy form vs Clausius quadrature along beta*", 1e-6},
    {"divergence_bound", "Lambda_S = -D(rho_SE || rho_S (x) gamma(beta*_0))", 1e-9},
    {"chain_star", "energy-matching EP >= Lambda_S", 1e-8},
    {"chain_trace", "Lambda_S >= Lambda_T", 1e-9},
    {"chain_product", "Lambda_S >= Lambda'_T on product states", 1e-9},
    {"general_policy_bound", "EP >= Lambda_S - D_gamma(beta_0)", 1e-8},
    {"second_law", "product-Gibbs start, beta_tau = beta_0: EP >= 0", 1e-9},
    {"sufficient_general_sound", "general sufficient condition holds => EP >= 0", 1e-9},
    {"sufficient_product_sound", "product sufficient condition holds => EP >= 0", 1e-9},
    {"unitarity", "propagator unitarity defect", 1e-9},
    {"entropy_conservation", "|S(rho_SE(tau)) - S(rho_SE(0))|", 1e-8},
};

class Recorder {
 public:
  explicit Recorder(const VerifySuiteConfig& cfg) {
    for (const CheckDef& d : kChecks) {
      CheckSummary c;
      c.name = d.name;
      c.description = d.description;
      c.tolerance = d.tolerance;
      if (auto it = cfg.tolerance_overrides.find(c.name); it != cfg.tolerance_overrides.end()) {
        c.tolerance = it->second;
      }
      if (cfg.tolerance) c.tolerance = *cfg.tolerance;
      summary_.checks.push_back(std::move(c));
    }
  }

  void record(const char* name, double defect) {
    auto it = std::find_if(summary_.checks.begin(), summary_.checks.end(),
                           [&](const CheckSummary& c) { return c.name == name; });
    CheckSummary& c = *it;
    if (!std::isfinite(defect) || defect > c.tolerance) {
      ++c.failed;
    } else {
      ++c.passed;
    }
    if (!c.seen || !(defect <= c.worst)) c.worst = defect;
    c.seen = true;
  }

  VerifySummary& summary() { return summary_; }

 private:
  VerifySummary summary_;
};

BipartiteState random_initial(int kind, Index d_s, Index d_e, const EnvHamiltonian& h_env,
                              double beta, Rng& rng) {
  switch (kind) {
    case 0:
      return BipartiteState::product(random_density(d_s, rng), gibbs_state({ExtendedReal(beta), h_env}));
    case 1:
      return BipartiteState::product(random_density(d_s, rng), random_density(d_e, rng));
    default:
      return BipartiteState(d_s, d_e, random_density(d_s * d_e, rng));
  }
}

void run_one(const VerifySuiteConfig& cfg, int index, Recorder& rec) {
  std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(index)};
  Rng rng(seq);
  const auto [d_s, d_e] = cfg.dims[static_cast<std::size_t>(index) % cfg.dims.size()];
  const HamiltonianSchedule schedule = random_schedule(d_s, d_e, 2, 1.0, rng);
  const EnvHamiltonian& h_env = schedule.h_env();
  const int kind = index % 3;
  const double gibbs_beta = uniform(rng, -1.5, 1.5);
  const BipartiteState initial = random_initial(kind, d_s, d_e, h_env, gibbs_beta, rng);
  const TabulatedBeta table({0.0, 0.4, 0.6, 1.0}, {uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5),
                                                  uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)});

  const Trajectory traj = evolve(initial, schedule, cfg.steps_per_segment);
  const EPReport r = build_report(traj, table);
  const BipartiteState& fin = traj.final();
  const DensityMatrix rho_e = initial.environment();

  rec.record("marginal_form",
             std::abs(r.delta_sigma - delta_sigma_joint(initial, fin, r.beta0, r.beta_tau, h_env)));
  rec.record("drift_split", r.residual_drift_split);
  const double at_star = delta_sigma(initial, fin, r.beta_star0, r.beta_star_tau, h_env);
  rec.record("energy_matching_reduction", std::abs(at_star - r.delta_sigma_star));

  const ExtendedReal beta(uniform(rng, -2.0, 2.0));
  const ExtendedReal star = effective_beta(rho_e, h_env);
  const double lhs = relative_entropy(rho_e, gibbs_state({beta, h_env})).value();
  const double rhs = relative_entropy(rho_e, gibbs_state({star, h_env})).value() +
                     relative_entropy(gibbs_state({star, h_env}), gibbs_state({beta, h_env})).value();
  rec.record("pythagorean", std::abs(lhs - rhs));
  rec.record("mismatch_split", r.residual_mismatch_split);

  const double probe = delta_sigma(initial, fin, r.beta_star0, ExtendedReal(uniform(rng, -3.0, 3.0)), h_env);
  rec.record("minimality", r.delta_sigma_star - probe);
  if (r.delta_sigma_star_quadrature) {
    rec.record("entropy_form", std::abs(r.delta_sigma_star - *r.delta_sigma_star_quadrature));
  }

  const bool product = kind != 2;
  const BoundReport b = compute_bounds(initial, fin, r.beta0, r.beta_tau, h_env, product);
  rec.record("divergence_bound", std::abs(b.lambda_S + reference_divergence(initial, r.beta_star0, h_env)));
  rec.record("chain_star", b.lambda_S - r.delta_sigma_star);
  rec.record("chain_trace", b.lambda_T - b.lambda_S);
  if (b.lambda_T_prod) rec.record("chain_product", *b.lambda_T_prod - b.lambda_S);
  rec.record("general_policy_bound", (b.lambda_S - b.d_gamma_0) - r.delta_sigma);
  if (kind == 0) {
    const ExtendedReal b0(gibbs_beta);
    rec.record("second_law", -delta_sigma(initial, fin, b0, b0, h_env));
  }
  if (b.general.holds) rec.record("sufficient_general_sound", -r.delta_sigma);
  if (b.product && b.product->holds) rec.record("sufficient_product_sound", -r.delta_sigma);
  rec.record("unitarity", traj.propagator().unitarity_defect());
  rec.record("entropy_conservation",
             std::abs(von_neumann_entropy(fin.state()) - von_neumann_entropy(initial.state())));
}

}  // namespace

void VerifySuiteConfig::validate() const {
  if (num_random_scenarios < 1) fail(ErrorKind::InvalidInput, "verify: num_random_scenarios must be >= 1");
  if (dims.empty()) fail(ErrorKind::InvalidInput, "verify: dims must not be empty");
  for (const auto& [d_s, d_e] : dims) {
    if (d_s < 1 || d_e < 2 || d_s * d_e > 64) {
      fail(ErrorKind::InvalidInput, "verify: dims need d_S >= 1, d_E >= 2, d_S*d_E <= 64");
    }
  }
  if (steps_per_segment < 1) fail(ErrorKind::InvalidInput, "verify: steps_per_segment must be >= 1");
  if (tolerance && !(*tolerance >= 0.0)) fail(ErrorKind::InvalidInput, "verify: tolerance must be >= 0");
  for (const auto& [name, tol] : tolerance_overrides) {
    const bool known = std::any_of(std::begin(kChecks), std::end(kChecks),
                                   [&](const CheckDef& d) { return name == d.name; });
    if (!known) fail(ErrorKind::InvalidInput, "verify: unknown check \"" + name + "\"");
    if (!(tol >= 0.0)) fail(ErrorKind::InvalidInput, "verify: tolerance must be >= 0");
  }
}

bool VerifySummary::all_passed() const { return total_failed() == 0; }

long VerifySummary::total_failed() const {
  long n = 0;
  for (const CheckSummary& c : checks) n += c.failed;
  return n;
}

std::vector<std::pair<std::string, double>> default_check_tolerances() {
  std::vector<std::pair<std::string, double>> out;
  for (const CheckDef& d : kChecks) out.emplace_back(d.name, d.tolerance);
  return out;
}

VerifySummary run_verify(const VerifySuiteConfig& cfg) {
  cfg.validate();
  Recorder rec(cfg);
  for (int i = 0; i < cfg.num_random_scenarios; ++i) run_one(cfg, i, rec);
  rec.summary().scenarios = cfg.num_random_scenarios;
  return rec.summary();
}

Json verify_summary_json(const VerifySummary& summary) {
  Json checks = Json::array();
  for (const CheckSummary& c : summary.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"description", c.description},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed},
                          {"failed", c.failed},
                          {"worst", c.seen && std::isfinite(c.worst) ? Json(c.worst) : Json(nullptr)}});
  }
  return Json{{"scenarios", summary.scenarios},
              {"all_passed", summary.all_passed()},
              {"total_failed", summary.total_failed()},
              {"checks", std::move(checks)}};
}

std::string verify_summary_text(const VerifySummary& summary) {
  std::ostringstream os;
  char line[256];
  for (const CheckSummary& c : summary.checks) {
    std::snprintf(line, sizeof line, "%-4s %-26s passed=%-6ld failed=%-6ld worst=%-12.4e tol=%.1e\n",
                  c.failed == 0 ? "ok" : "FAIL", c.name.c_str(), c.passed, c.failed,
                  c.seen ? c.worst : 0.0, c.tolerance);
    os << line;
  }
  os << (summary.all_passed() ? "all checks passed" : "FAILURES: " + std::to_string(summary.total_failed()))
     << " over " << summary.scenarios << " scenarios\n";
  return os.str();
}

}  // namespace qthermo
