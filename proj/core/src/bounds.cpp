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

#include "qthermo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kChiTol = 1e-11;

ExtendedReal initial_beta_star(const DensityMatrix& rho_env, const EnvHamiltonian& h_env) {
  return effective_beta(rho_env, h_env);
}

// Trace distances are in [0, 1]; clip rounding excursions before H2.
double clip_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorKind::DomainError, "binary_entropy: p = " + std::to_string(p) + " outside [0, 1]");
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

double lambda_S(const BipartiteState& initial, const EnvHamiltonian& h_env) {
  const ExtendedReal beta_star = initial_beta_star(initial.environment(), h_env);
  return von_neumann_entropy(initial.state()) - von_neumann_entropy(initial.system()) -
         gibbs_entropy({beta_star, h_env});
}

double reference_trace_distance(const BipartiteState& initial, const EnvHamiltonian& h_env) {
  const ExtendedReal beta_star = initial_beta_star(initial.environment(), h_env);
  const DensityMatrix reference = tensor_product(initial.system(), gibbs_state({beta_star, h_env}));
  return clip_unit(trace_distance(initial.state(), reference));
}

double lambda_T_from_distance(double delta_t, Index dim) {
  if (dim < 2) fail(ErrorKind::InvalidInput, "lambda_T: dimension must be at least 2");
  return -delta_t * std::log(double(dim - 1)) - binary_entropy(delta_t);
}

double lambda_T(const BipartiteState& initial, const EnvHamiltonian& h_env) {
  return lambda_T_from_distance(reference_trace_distance(initial, h_env), initial.state().dim());
}

double lambda_T_prod(const DensityMatrix& rho_sys, const DensityMatrix& rho_env,
                     const EnvHamiltonian& h_env) {
  (void)rho_sys;
  const ExtendedReal beta_star = initial_beta_star(rho_env, h_env);
  const double delta = clip_unit(trace_distance(rho_env, gibbs_state({beta_star, h_env})));
  return lambda_T_from_distance(delta, rho_env.dim());
}

double gibbs_mismatch(const DensityMatrix& rho_env, double beta0, const EnvHamiltonian& h_env) {
  const ExtendedReal beta_star = initial_beta_star(rho_env, h_env);
  const ExtendedReal d =
      relative_entropy(gibbs_state({beta_star, h_env}), gibbs_state({beta0, h_env}));
  if (!d.is_finite()) fail(ErrorKind::DomainError, "gibbs_mismatch: infinite divergence");
  return d.value();
}

SufficientCondition sufficient_nonneg_general(const BipartiteState& final_state, double beta_tau,
                                              const BipartiteState& initial, double beta0,
                                              const EnvHamiltonian& h_env) {
  const DensityMatrix reference =
      tensor_product(final_state.system(), gibbs_state({beta_tau, h_env}));
  const double dist = clip_unit(trace_distance(final_state.state(), reference));
  SufficientCondition c;
  c.lhs = dist * dist;
  c.rhs = 0.5 * (gibbs_mismatch(initial.environment(), beta0, h_env) - lambda_T(initial, h_env));
  c.holds = c.lhs >= c.rhs;
  return c;
}

SufficientCondition sufficient_nonneg_product(const DensityMatrix& final_env, double beta_tau,
                                              const DensityMatrix& rho_sys,
                                              const DensityMatrix& rho_env, double beta0,
                                              const EnvHamiltonian& h_env) {
  const double dist = clip_unit(trace_distance(final_env, gibbs_state({beta_tau, h_env})));
  SufficientCondition c;
  c.lhs = dist * dist;
  c.rhs = 0.5 * (gibbs_mismatch(rho_env, beta0, h_env) - lambda_T_prod(rho_sys, rho_env, h_env));
  c.holds = c.lhs >= c.rhs;
  return c;
}

// ---------------------------------------------------------------------------
// PerturbedInitial

double PerturbedInitial::predicted_trace_distance() const { return 0.5 * trace_norm(chi_); }

PerturbedInitial make_perturbed_initial(const DensityMatrix& rho_sys, double beta,
                                        const HermitianMatrix& chi, const EnvHamiltonian& h_env) {
  const Index d_s = rho_sys.dim();
  const Index d_e = h_env.dim();
  if (chi.dim() != d_s * d_e) {
    fail(ErrorKind::InvalidPerturbation, "chi: expected dimension " + std::to_string(d_s * d_e));
  }
  const HermitianMatrix chi_s = partial_trace(chi, d_s, d_e, Subsystem::S);
  if (max_abs(chi_s.matrix()) > kChiTol) {
    fail(ErrorKind::InvalidPerturbation, "chi: tr_E chi must vanish");
  }
  const HermitianMatrix chi_e = partial_trace(chi, d_s, d_e, Subsystem::E);
  const CMatrix& v = h_env.spectrum().vectors;
  const CMatrix in_energy_basis = v.adjoint() * chi_e.matrix() * v;
  if (in_energy_basis.diagonal().cwiseAbs().maxCoeff() > kChiTol) {
    fail(ErrorKind::InvalidPerturbation,
         "chi: tr_S chi must have zero diagonal in the H_E eigenbasis");
  }
  const HermitianMatrix base =
      tensor_product(rho_sys.hermitian(), gibbs_state({beta, h_env}).hermitian());
  DensityMatrix realized(base + chi);  // InvalidState when not PSD
  BipartiteState state(d_s, d_e, std::move(realized));
  return PerturbedInitial(rho_sys, beta, chi, std::move(state));
}

// ---------------------------------------------------------------------------

BoundReport compute_bounds(const BipartiteState& initial, const BipartiteState& final_state,
                           double beta0, double beta_tau, const EnvHamiltonian& h_env,
                           bool initial_is_product) {
  BoundReport b;
  const DensityMatrix rho_s = initial.system();
  const DensityMatrix rho_e = initial.environment();
  b.lambda_S = lambda_S(initial, h_env);
  b.delta_T = reference_trace_distance(initial, h_env);
  b.lambda_T = lambda_T_from_distance(b.delta_T, initial.state().dim());
  b.d_gamma_0 = gibbs_mismatch(rho_e, beta0, h_env);
  b.general = sufficient_nonneg_general(final_state, beta_tau, initial, beta0, h_env);
  if (initial_is_product) {
    b.lambda_T_prod = lambda_T_prod(rho_s, rho_e, h_env);
    b.product = sufficient_nonneg_product(final_state.environment(), beta_tau, rho_s, rho_e,
                                          beta0, h_env);
  }
  return b;
}

}  // namespace qthermo
