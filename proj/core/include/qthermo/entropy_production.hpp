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

#include <optional>
#include <variant>
#include <vector>

#include "qthermo/dynamics.hpp"
#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

struct ConstantBeta {
  double beta = 0.0;
};

/// beta_t follows the trajectory's cached energy-matching beta*.
struct EnergyMatching {};

/// Piecewise-linear beta(t) through (times[i], betas[i]).
class TabulatedBeta {
 public:
  TabulatedBeta(std::vector<double> times, std::vector<double> betas);

  double at(double t) const;
  /// Slope of the piece containing t (right-continuous; left piece at the
  /// last node).
  double slope(double t) const;

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& betas() const { return betas_; }

 private:
  std::size_t piece(double t) const;

  std::vector<double> times_;
  std::vector<double> betas_;
};

using BetaPolicy = std::variant<ConstantBeta, EnergyMatching, TabulatedBeta>;

/// beta_t of the policy at trajectory grid point k.
ExtendedReal policy_beta(const BetaPolicy& policy, const Trajectory& traj, std::size_t k);

/// Unified entropy production
///   D(sigma_SE || sigma_S (x) gamma(beta_tau)) - D(rho_SE || rho_S (x) gamma(beta_0)),
/// evaluated as dI + D(sigma_E || gamma(beta_tau)) - D(rho_E || gamma(beta_0)).
/// Infinite betas are rejected (InvalidInput).
double delta_sigma(const BipartiteState& initial, const BipartiteState& final_state,
                   ExtendedReal beta0, ExtendedReal beta_tau, const EnvHamiltonian& h_env);

/// Same quantity from the joint relative entropies directly.
double delta_sigma_joint(const BipartiteState& initial, const BipartiteState& final_state,
                         ExtendedReal beta0, ExtendedReal beta_tau, const EnvHamiltonian& h_env);

/// D(rho_SE || rho_S (x) gamma_E(beta)); throws DomainError when infinite.
double reference_divergence(const BipartiteState& rho, ExtendedReal beta,
                            const EnvHamiltonian& h_env);

/// Clausius-type entropy production dS_S + int beta_t d/dt tr[rho_E H_E] dt.
/// Closed form for a constant beta, trapezoidal quadrature otherwise.
double delta_sigma_clausius(const Trajectory& traj, const BetaPolicy& policy);

/// int beta_dot (E_gamma(beta*_t) - E_gamma(beta_t)) dt. The matched-energy
/// term uses trapezoidal quadrature; for a tabulated beta the Gibbs term is
/// ln Z(beta_tau) - ln Z(beta_0). Exactly zero for a constant beta.
double delta_D(const Trajectory& traj, const BetaPolicy& policy);

/// dS_S + dS_E + dS_gamma from the endpoint states (no quadrature).
double delta_sigma_star(const Trajectory& traj);

/// Entropy-production rate
///   dS(rho_S)/dt - beta dQ/dt + beta_dot (E_gamma(beta*) - E_gamma(beta)).
/// dS(rho_S)/dt is a symmetric difference over +-h of auxiliary evolution
/// under h_total, h = fd_scale / max(1, ||h_total||). fd_scale <= 0 selects
/// the default 1e-6.
double ep_rate(const BipartiteState& rho, const HermitianMatrix& h_total,
               const EnvHamiltonian& h_env, double beta, double beta_dot,
               double fd_scale = 0.0);

/// The three terms of ep_rate, for diagnostics.
struct RateTerms {
  double entropy_term;   // dS(rho_S)/dt
  double heat_term;      // -beta dQ/dt
  double beta_dot_term;  // beta_dot (E_gamma(beta*) - E_gamma(beta))
  double total() const { return entropy_term + heat_term + beta_dot_term; }
};
RateTerms ep_rate_terms(const BipartiteState& rho, const HermitianMatrix& h_total,
                        const EnvHamiltonian& h_env, double beta, double beta_dot,
                        double fd_scale = 0.0);

struct EPReport {
  double beta0 = 0.0;
  double beta_tau = 0.0;
  ExtendedReal beta_star0;
  ExtendedReal beta_star_tau;

  double delta_sigma = 0.0;       // unified definition
  double delta_sigma_cl = 0.0;    // Clausius-type
  double delta_D = 0.0;           // temperature-drift correction
  double delta_sigma_star = 0.0;  // energy-matching entropy production
  // Clausius quadrature along beta*_t; empty when some beta*_t is infinite.
  std::optional<double> delta_sigma_star_quadrature;
  double d_gamma_0 = 0.0;         // D(gamma(beta*_0) || gamma(beta_0))
  double d_gamma_tau = 0.0;       // D(gamma(beta*_tau) || gamma(beta_tau))
  double delta_I = 0.0;
  double delta_S_S = 0.0;
  double delta_S_E = 0.0;
  double delta_S_gamma = 0.0;
  // dS_S + beta_tau tr[sigma_E H_E] - beta_0 tr[rho_E H_E]; reported, no sign claims.
  double endpoint_candidate = 0.0;

  double residual_drift_split = 0.0;  // |dSigma - dSigma_CL - dD|
  double residual_mismatch_split = 0.0;  // |dSigma - dSigma* - D_gamma(tau) + D_gamma(0)|
};

EPReport build_report(const Trajectory& traj, const BetaPolicy& policy);

}  // namespace qthermo
