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

#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

/// -p ln p - (1-p) ln(1-p); DomainError outside [0, 1].
double binary_entropy(double p);

/// Lambda_S = S(rho_SE) - S(rho_S) - S(gamma_E(beta*_0)) = -D(rho_SE || rho_S (x) gamma_E(beta*_0)).
double lambda_S(const BipartiteState& initial, const EnvHamiltonian& h_env);

/// delta_T = T(rho_SE, rho_S (x) gamma_E(beta*_0)).
double reference_trace_distance(const BipartiteState& initial, const EnvHamiltonian& h_env);

/// -delta_T ln(d_S d_E - 1) - H2(delta_T).
double lambda_T(const BipartiteState& initial, const EnvHamiltonian& h_env);
double lambda_T_from_distance(double delta_t, Index dim);

/// Product-state variant with delta_T = T(rho_E, gamma_E(beta*_0)) and
/// ln(d_E - 1) in place of ln(d_S d_E - 1).
double lambda_T_prod(const DensityMatrix& rho_sys, const DensityMatrix& rho_env,
                     const EnvHamiltonian& h_env);

/// D_gamma(beta_0) = D(gamma_E(beta*_0) || gamma_E(beta_0)) for the initial
/// environment state.
double gibbs_mismatch(const DensityMatrix& rho_env, double beta0, const EnvHamiltonian& h_env);

struct SufficientCondition {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// T(sigma_SE, sigma_S (x) gamma(beta_tau))^2 >= (D_gamma(beta_0) - Lambda_T) / 2.
SufficientCondition sufficient_nonneg_general(const BipartiteState& final_state, double beta_tau,
                                              const BipartiteState& initial, double beta0,
                                              const EnvHamiltonian& h_env);

/// T(sigma_E, gamma(beta_tau))^2 >= (D_gamma(beta_0) - Lambda'_T) / 2 for a
/// product initial state rho_S (x) rho_E.
SufficientCondition sufficient_nonneg_product(const DensityMatrix& final_env, double beta_tau,
                                              const DensityMatrix& rho_sys,
                                              const DensityMatrix& rho_env, double beta0,
                                              const EnvHamiltonian& h_env);

/// rho_SE = rho_S (x) gamma_E(beta) + chi with tr_E chi = 0 and tr_S chi
/// free of diagonal entries in the H_E eigenbasis. Constraints are checked,
/// never repaired.
class PerturbedInitial {
 public:
  const DensityMatrix& rho_sys() const { return rho_sys_; }
  double beta() const { return beta_; }
  const HermitianMatrix& chi() const { return chi_; }
  const BipartiteState& state() const { return state_; }
  /// ||chi||_1 / 2
  double predicted_trace_distance() const;

 private:
  friend PerturbedInitial make_perturbed_initial(const DensityMatrix&, double,
                                                 const HermitianMatrix&, const EnvHamiltonian&);
  PerturbedInitial(DensityMatrix rho_sys, double beta, HermitianMatrix chi, BipartiteState state)
      : rho_sys_(std::move(rho_sys)), beta_(beta), chi_(std::move(chi)), state_(std::move(state)) {}

  DensityMatrix rho_sys_;
  double beta_;
  HermitianMatrix chi_;
  BipartiteState state_;
};

/// Throws InvalidPerturbation on constraint violation (tolerance 1e-11) and
/// InvalidState when the realized operator is not a density matrix.
PerturbedInitial make_perturbed_initial(const DensityMatrix& rho_sys, double beta,
                                        const HermitianMatrix& chi, const EnvHamiltonian& h_env);

struct BoundReport {
  double lambda_S = 0.0;
  double lambda_T = 0.0;
  std::optional<double> lambda_T_prod;
  double delta_T = 0.0;
  double d_gamma_0 = 0.0;
  SufficientCondition general;
  std::optional<SufficientCondition> product;
};

/// All bounds for one initial/final pair. The product-state entries are
/// filled only when `initial_is_product` is set; the factors are then the
/// marginals of `initial`.
BoundReport compute_bounds(const BipartiteState& initial, const BipartiteState& final_state,
                           double beta0, double beta_tau, const EnvHamiltonian& h_env,
                           bool initial_is_product);

}  // namespace qthermo
