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

#include <memory>

#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo {

/// S(rho) = -sum lambda ln lambda, eigenvalues clipped to [0, 1] and values
/// below tol::kEntropyZero taken as exact zeros.
double von_neumann_entropy(const DensityMatrix& rho);

/// D(rho || sigma); +inf when rho has weight outside the support of sigma.
ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// I = S(rho_S) + S(rho_E) - S(rho_SE).
double mutual_information(const BipartiteState& rho);

/// The fixed environment Hamiltonian H_E with its spectrum cached.
/// Requires at least two distinct eigenvalues.
class EnvHamiltonian {
 public:
  explicit EnvHamiltonian(HermitianMatrix h);

  Index dim() const { return h_.dim(); }
  const HermitianMatrix& matrix() const { return h_; }
  const Eigensystem& spectrum() const { return *spectrum_; }
  double min_energy() const { return spectrum_->values(0); }
  double max_energy() const { return spectrum_->values(dim() - 1); }

  /// Diagonal of rho_E in the energy eigenbasis.
  RVector populations(const DensityMatrix& rho_e) const;
  /// tr[rho_E H_E]
  double energy(const DensityMatrix& rho_e) const;

 private:
  HermitianMatrix h_;
  std::shared_ptr<const Eigensystem> spectrum_;
};

struct GibbsSpec {
  ExtendedReal beta;
  EnvHamiltonian h_env;
};

/// e^{-beta H_E}/Z. At beta = +inf (-inf) the maximally mixed state on the
/// ground (top) eigenspace.
DensityMatrix gibbs_state(const GibbsSpec& spec);
double gibbs_energy(const GibbsSpec& spec);
double gibbs_variance(const GibbsSpec& spec);
/// ln Z(beta); finite beta only.
double log_partition(const GibbsSpec& spec);
/// S(gamma_E(beta)) from the spectrum, no matrix construction.
double gibbs_entropy(const GibbsSpec& spec);

struct BetaSolveConfig {
  double abs_tol = 1e-12;
  int max_iter = 200;
  double beta_clamp = 1e6;

  void validate() const;
};

/// Energy-matching inverse temperature: the unique beta with
/// tr[gamma_E(beta) H_E] = tr[rho_E H_E].
///
/// Returns +inf / -inf when the energy sits at the bottom / top of the
/// spectrum within abs_tol or when |beta| would exceed beta_clamp. Throws
/// InfeasibleEnergy when the energy lies outside [e_min, e_max] by more than
/// abs_tol and ConvergenceError when max_iter is exhausted.
ExtendedReal effective_beta(const DensityMatrix& rho_e, const EnvHamiltonian& h_env,
                            const BetaSolveConfig& cfg = {});

}  // namespace qthermo
