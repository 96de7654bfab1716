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

#include "qthermo/entropy_production.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double finite_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, const char* what) {
  const ExtendedReal d = relative_entropy(rho, sigma);
  if (!d.is_finite()) fail(ErrorKind::DomainError, std::string(what) + ": relative entropy is infinite");
  return d.value();
}

void require_finite_beta(const ExtendedReal& beta, const char* what) {
  if (!beta.is_finite()) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": infinite inverse temperature " +
                                      beta.to_string() + " is not supported");
  }
}

void check_span(const BetaPolicy& policy, const Trajectory& traj) {
  if (const auto* tab = std::get_if<TabulatedBeta>(&policy)) {
    const double tau = traj.times().back();
    const double slack = 1e-12 * std::max(1.0, tau);
    if (tab->times().front() > slack || tab->times().back() < tau - slack) {
      fail(ErrorKind::InvalidInput, "tabulated beta does not cover [0, " + std::to_string(tau) + "]");
    }
  }
}

double system_entropy_change(const Trajectory& traj) {
  return von_neumann_entropy(traj.final().system()) - von_neumann_entropy(traj.initial().system());
}

}  // namespace

// ---------------------------------------------------------------------------
// TabulatedBeta

TabulatedBeta::TabulatedBeta(std::vector<double> times, std::vector<double> betas)
    : times_(std::move(times)), betas_(std::move(betas)) {
  if (times_.size() < 2 || times_.size() != betas_.size()) {
    fail(ErrorKind::InvalidInput, "TabulatedBeta: need >= 2 nodes and matching lengths");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(betas_[i])) {
      fail(ErrorKind::InvalidInput, "TabulatedBeta: non-finite node");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      fail(ErrorKind::InvalidInput, "TabulatedBeta: times must be strictly ascending");
    }
  }
}

std::size_t TabulatedBeta::piece(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t idx = it == times_.begin() ? 0 : std::size_t(it - times_.begin()) - 1;
  return std::min(idx, times_.size() - 2);
}

double TabulatedBeta::at(double t) const {
  const std::size_t i = piece(t);
  const double frac = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return betas_[i] + frac * (betas_[i + 1] - betas_[i]);
}

double TabulatedBeta::slope(double t) const {
  const std::size_t i = piece(t);
  return (betas_[i + 1] - betas_[i]) / (times_[i + 1] - times_[i]);
}

ExtendedReal policy_beta(const BetaPolicy& policy, const Trajectory& traj, std::size_t k) {
  return std::visit(
      Overloaded{
          [](const ConstantBeta& c) { return ExtendedReal(c.beta); },
          [&](const EnergyMatching&) { return traj.beta_star().at(k); },
          [&](const TabulatedBeta& tab) { return ExtendedReal(tab.at(traj.times().at(k))); },
      },
      policy);
}

// ---------------------------------------------------------------------------
// Entropy production

double reference_divergence(const BipartiteState& rho, ExtendedReal beta,
                            const EnvHamiltonian& h_env) {
  const DensityMatrix reference = tensor_product(rho.system(), gibbs_state({beta, h_env}));
  return finite_divergence(rho.state(), reference, "reference_divergence");
}

double delta_sigma(const BipartiteState& initial, const BipartiteState& final_state,
                   ExtendedReal beta0, ExtendedReal beta_tau, const EnvHamiltonian& h_env) {
  require_finite_beta(beta0, "delta_sigma");
  require_finite_beta(beta_tau, "delta_sigma");
  if (initial.d_s() != final_state.d_s() || initial.d_e() != final_state.d_e() ||
      initial.d_e() != h_env.dim()) {
    fail(ErrorKind::InvalidInput, "delta_sigma: dimension mismatch");
  }
  const double d_i = mutual_information(final_state) - mutual_information(initial);
  const double d_final =
      finite_divergence(final_state.environment(), gibbs_state({beta_tau, h_env}), "delta_sigma");
  const double d_initial =
      finite_divergence(initial.environment(), gibbs_state({beta0, h_env}), "delta_sigma");
  return d_i + d_final - d_initial;
}

double delta_sigma_joint(const BipartiteState& initial, const BipartiteState& final_state,
                         ExtendedReal beta0, ExtendedReal beta_tau, const EnvHamiltonian& h_env) {
  require_finite_beta(beta0, "delta_sigma_joint");
  require_finite_beta(beta_tau, "delta_sigma_joint");
  return reference_divergence(final_state, beta_tau, h_env) -
         reference_divergence(initial, beta0, h_env);
}

double delta_sigma_clausius(const Trajectory& traj, const BetaPolicy& policy) {
  check_span(policy, traj);
  const double ds_s = system_entropy_change(traj);
  if (const auto* c = std::get_if<ConstantBeta>(&policy)) {
    return ds_s + c->beta * (traj.env_energy().back() - traj.env_energy().front());
  }
  double integral = 0.0;
  const auto& t = traj.times();
  double beta_left = policy_beta(policy, traj, 0).value();
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double beta_right = policy_beta(policy, traj, k + 1).value();
    integral += 0.5 * (t[k + 1] - t[k]) *
                (beta_left * traj.rate_start()[k] + beta_right * traj.rate_end()[k]);
    beta_left = beta_right;
  }
  return ds_s + integral;
}

double delta_D(const Trajectory& traj, const BetaPolicy& policy) {
  check_span(policy, traj);
  if (std::holds_alternative<ConstantBeta>(policy)) return 0.0;

  const EnvHamiltonian& h_env = traj.h_env();
  const auto& t = traj.times();
  auto matched_energy = [&](std::size_t k) { return gibbs_energy({traj.beta_star()[k], h_env}); };

  double integral = 0.0;
  if (std::holds_alternative<EnergyMatching>(policy)) {
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const double b0 = traj.beta_star()[k].value();
      const double b1 = traj.beta_star()[k + 1].value();
      const double slope = (b1 - b0) / (t[k + 1] - t[k]);
      const double g0 = matched_energy(k) - gibbs_energy({b0, h_env});
      const double g1 = matched_energy(k + 1) - gibbs_energy({b1, h_env});
      integral += 0.5 * (t[k + 1] - t[k]) * slope * (g0 + g1);
    }
    return integral;
  }

  // Tabulated: int beta_dot E_gamma(beta) dt = -[ln Z] in closed form. The
  // matched-energy part is split at the table nodes and interpolated linearly.
  const auto& tab = std::get<TabulatedBeta>(policy);
  std::vector<double> cuts;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double e0 = matched_energy(k);
    const double e1 = matched_energy(k + 1);
    auto matched_at = [&](double s) { return e0 + (e1 - e0) * (s - t[k]) / (t[k + 1] - t[k]); };

    cuts.clear();
    cuts.push_back(t[k]);
    for (double node : tab.times()) {
      if (node > t[k] && node < t[k + 1]) cuts.push_back(node);
    }
    cuts.push_back(t[k + 1]);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c];
      const double b = cuts[c + 1];
      integral += 0.5 * (b - a) * tab.slope(0.5 * (a + b)) * (matched_at(a) + matched_at(b));
    }
  }
  return integral + log_partition({tab.at(t.back()), h_env}) -
         log_partition({tab.at(t.front()), h_env});
}

double delta_sigma_star(const Trajectory& traj) {
  const EnvHamiltonian& h_env = traj.h_env();
  const double s_gamma_tau = gibbs_entropy({traj.beta_star().back(), h_env});
  const double s_gamma_0 = gibbs_entropy({traj.beta_star().front(), h_env});
  const double s_env_tau = von_neumann_entropy(traj.final().environment());
  const double s_env_0 = von_neumann_entropy(traj.initial().environment());
  const double ds_gamma = (s_gamma_tau - s_env_tau) - (s_gamma_0 - s_env_0);
  return system_entropy_change(traj) + (s_env_tau - s_env_0) + ds_gamma;
}

RateTerms ep_rate_terms(const BipartiteState& rho, const HermitianMatrix& h_total,
                        const EnvHamiltonian& h_env, double beta, double beta_dot,
                        double fd_scale) {
  if (!std::isfinite(beta) || !std::isfinite(beta_dot)) {
    fail(ErrorKind::InvalidInput, "ep_rate: beta and beta_dot must be finite");
  }
  if (fd_scale <= 0.0) fd_scale = 1e-6;
  const double norm = eig_hermitian(h_total).values.cwiseAbs().maxCoeff();
  const double h = fd_scale / std::max(1.0, norm);

  const BipartiteState forward = conjugate(unitary_step(h_total, h), rho);
  const BipartiteState backward = conjugate(unitary_step(h_total, -h), rho);
  RateTerms terms{};
  terms.entropy_term = (von_neumann_entropy(forward.system()) -
                        von_neumann_entropy(backward.system())) / (2.0 * h);
  // -beta dQ/dt with dQ/dt = -d/dt tr[rho_E H_E]
  terms.heat_term = beta * env_energy_rate(rho, h_total, h_env.matrix());
  if (beta_dot != 0.0) {
    const ExtendedReal beta_star = effective_beta(rho.environment(), h_env);
    terms.beta_dot_term =
        beta_dot * (gibbs_energy({beta_star, h_env}) - gibbs_energy({beta, h_env}));
  }
  return terms;
}

double ep_rate(const BipartiteState& rho, const HermitianMatrix& h_total,
               const EnvHamiltonian& h_env, double beta, double beta_dot, double fd_scale) {
  return ep_rate_terms(rho, h_total, h_env, beta, beta_dot, fd_scale).total();
}

EPReport build_report(const Trajectory& traj, const BetaPolicy& policy) {
  check_span(policy, traj);
  const EnvHamiltonian& h_env = traj.h_env();
  const BipartiteState& rho = traj.initial();
  const BipartiteState& sigma = traj.final();
  const std::size_t last = traj.size() - 1;

  EPReport r;
  const ExtendedReal b0 = policy_beta(policy, traj, 0);
  const ExtendedReal bt = policy_beta(policy, traj, last);
  require_finite_beta(b0, "build_report");
  require_finite_beta(bt, "build_report");
  r.beta0 = b0.value();
  r.beta_tau = bt.value();
  r.beta_star0 = traj.beta_star().front();
  r.beta_star_tau = traj.beta_star().back();

  const DensityMatrix rho_e = rho.environment();
  const DensityMatrix sigma_e = sigma.environment();
  r.delta_S_S = system_entropy_change(traj);
  r.delta_S_E = von_neumann_entropy(sigma_e) - von_neumann_entropy(rho_e);
  r.delta_I = mutual_information(sigma) - mutual_information(rho);

  r.delta_sigma = delta_sigma(rho, sigma, b0, bt, h_env);
  r.delta_sigma_cl = delta_sigma_clausius(traj, policy);
  r.delta_D = delta_D(traj, policy);
  r.delta_sigma_star = delta_sigma_star(traj);
  const bool all_finite = std::all_of(traj.beta_star().begin(), traj.beta_star().end(),
                                      [](const ExtendedReal& b) { return b.is_finite(); });
  if (all_finite) r.delta_sigma_star_quadrature = delta_sigma_clausius(traj, EnergyMatching{});

  r.d_gamma_0 = finite_divergence(gibbs_state({r.beta_star0, h_env}), gibbs_state({b0, h_env}),
                                  "build_report");
  r.d_gamma_tau = finite_divergence(gibbs_state({r.beta_star_tau, h_env}),
                                    gibbs_state({bt, h_env}), "build_report");
  r.delta_S_gamma = (gibbs_entropy({r.beta_star_tau, h_env}) - von_neumann_entropy(sigma_e)) -
                    (gibbs_entropy({r.beta_star0, h_env}) - von_neumann_entropy(rho_e));
  r.endpoint_candidate =
      r.delta_S_S + r.beta_tau * traj.env_energy().back() - r.beta0 * traj.env_energy().front();

  r.residual_drift_split = std::abs(r.delta_sigma - r.delta_sigma_cl - r.delta_D);
  r.residual_mismatch_split =
      std::abs(r.delta_sigma - r.delta_sigma_star - r.d_gamma_tau + r.d_gamma_0);
  return r;
}

}  // namespace qthermo
