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

#include "qthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <limits>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double entropy_of_spectrum(const RVector& values) {
  double s = 0.0;
  for (Index i = 0; i < values.size(); ++i) {
    const double p = std::clamp(values(i), 0.0, 1.0);
    if (p > tol::kEntropyZero) s -= p * std::log(p);
  }
  return s;
}

// Eigenvalues within this distance of the extreme one share its eigenspace.
double degeneracy_tol(const RVector& values) {
  return 1e-12 * std::max(1.0, values.cwiseAbs().maxCoeff());
}

// Weights of the Gibbs distribution, normalized by their own sum, together
// with the log of that sum and the reference energy that was subtracted.
struct GibbsWeights {
  RVector weights;  // sum to 1
  double shift;
  double log_sum;  // ln sum exp(-beta (lambda - shift))
};

GibbsWeights gibbs_weights(const RVector& values, const ExtendedReal& beta) {
  const Index n = values.size();
  GibbsWeights out{RVector::Zero(n), 0.0, 0.0};
  if (!beta.is_finite()) {
    const bool ground = beta.is_pos_inf();
    const double edge = ground ? values(0) : values(n - 1);
    const double dtol = degeneracy_tol(values);
    Index count = 0;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(values(i) - edge) <= dtol) {
        out.weights(i) = 1.0;
        ++count;
      }
    }
    out.weights /= double(count);
    out.shift = edge;
    out.log_sum = std::log(double(count));
    return out;
  }
  const double b = beta.value();
  // Subtract the dominant eigenvalue so every exponent is <= 0.
  out.shift = b >= 0.0 ? values(0) : values(n - 1);
  double z = 0.0;
  for (Index i = 0; i < n; ++i) {
    out.weights(i) = std::exp(-b * (values(i) - out.shift));
    z += out.weights(i);
  }
  out.weights /= z;
  out.log_sum = std::log(z);
  return out;
}

struct GapMoments {
  double mean;
  double variance;
};

// Mean and variance of gaps x >= 0 (x(0) == 0) under weights exp(-beta x).
GapMoments gap_moments(const RVector& x, double beta) {
  double z = 0.0;
  double m = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double w = std::exp(-beta * x(i));
    z += w;
    m += w * x(i);
  }
  m /= z;
  double v = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double d = x(i) - m;
    v += std::exp(-beta * x(i)) * d * d;
  }
  return {m, v / z};
}

// Solves mean_beta(x) = target for beta >= 0, where 0 < target <= mean_0(x).
// Newton on ln(mean) - ln(target), safeguarded by bisection. Working with the
// logarithm of the gap keeps relative precision when the excited population
// is exponentially small. Returns +inf past the clamp.
double solve_positive_branch(const RVector& x, double target, const BetaSolveConfig& cfg) {
  const double log_target = std::log(target);
  auto residual = [&](double beta) {
    const GapMoments mom = gap_moments(x, beta);
    return std::pair{std::log(mom.mean) - log_target, mom};
  };

  auto [g0, m0] = residual(0.0);
  if (std::abs(g0) <= 8 * kEps) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  while (residual(hi).first > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > cfg.beta_clamp) return std::numeric_limits<double>::infinity();
  }

  double beta = 0.5 * (lo + hi);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const auto [g, mom] = residual(beta);
    if (std::abs(g) <= 8 * kEps) return beta;
    if (g > 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    if (hi - lo <= 4 * kEps * std::max(1.0, hi)) return beta;
    // d/dbeta ln(mean) = -variance / mean
    const double slope = -mom.variance / mom.mean;
    double next = beta - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    beta = next;
  }
  fail(ErrorKind::ConvergenceError,
       "effective_beta: no convergence in " + std::to_string(cfg.max_iter) + " iterations");
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(rho.spectrum().values);
}

ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    fail(ErrorKind::InvalidInput, "relative_entropy: dimension mismatch");
  }
  const double supp = support_tolerance();
  const Eigensystem& sig = sigma.spectrum();
  // Weight of rho along each eigenvector of sigma.
  const RVector weights =
      (sig.vectors.adjoint() * rho.matrix() * sig.vectors).diagonal().real();

  double cross = 0.0;  // tr[rho ln sigma]
  for (Index j = 0; j < sig.values.size(); ++j) {
    const double mu = sig.values(j);
    if (mu <= supp) {
      if (weights(j) > supp) return ExtendedReal::pos_inf();
      continue;
    }
    cross += weights(j) * std::log(std::min(mu, 1.0));
  }
  return -von_neumann_entropy(rho) - cross;
}

double mutual_information(const BipartiteState& rho) {
  return von_neumann_entropy(rho.system()) + von_neumann_entropy(rho.environment()) -
         von_neumann_entropy(rho.state());
}

// ---------------------------------------------------------------------------
// EnvHamiltonian

EnvHamiltonian::EnvHamiltonian(HermitianMatrix h)
    : h_(std::move(h)), spectrum_(std::make_shared<const Eigensystem>(eig_hermitian(h_))) {
  const RVector& v = spectrum_->values;
  if (v(v.size() - 1) - v(0) <= degeneracy_tol(v)) {
    fail(ErrorKind::InvalidInput, "EnvHamiltonian: H_E needs at least two distinct eigenvalues");
  }
}

RVector EnvHamiltonian::populations(const DensityMatrix& rho_e) const {
  if (rho_e.dim() != dim()) {
    fail(ErrorKind::InvalidInput, "EnvHamiltonian::populations: dimension mismatch");
  }
  const CMatrix& v = spectrum_->vectors;
  RVector p(dim());
  for (Index i = 0; i < dim(); ++i) {
    p(i) = (v.col(i).adjoint() * rho_e.matrix() * v.col(i))(0, 0).real();
  }
  return p;
}

double EnvHamiltonian::energy(const DensityMatrix& rho_e) const {
  return trace_product(rho_e.hermitian(), h_);
}

// ---------------------------------------------------------------------------
// Gibbs family

DensityMatrix gibbs_state(const GibbsSpec& spec) {
  const Eigensystem& es = spec.h_env.spectrum();
  const GibbsWeights gw = gibbs_weights(es.values, spec.beta);
  return DensityMatrix::from_trusted(es.vectors * gw.weights.cast<Complex>().asDiagonal() *
                                     es.vectors.adjoint());
}

double gibbs_energy(const GibbsSpec& spec) {
  const RVector& values = spec.h_env.spectrum().values;
  const GibbsWeights gw = gibbs_weights(values, spec.beta);
  return gw.shift + gw.weights.dot((values.array() - gw.shift).matrix());
}

double gibbs_variance(const GibbsSpec& spec) {
  const RVector& values = spec.h_env.spectrum().values;
  const GibbsWeights gw = gibbs_weights(values, spec.beta);
  const double mean = gibbs_energy(spec);
  return gw.weights.dot((values.array() - mean).square().matrix());
}

double log_partition(const GibbsSpec& spec) {
  const GibbsWeights gw = gibbs_weights(spec.h_env.spectrum().values, spec.beta);
  return -spec.beta.value() * gw.shift + gw.log_sum;
}

double gibbs_entropy(const GibbsSpec& spec) {
  const RVector& values = spec.h_env.spectrum().values;
  const GibbsWeights gw = gibbs_weights(values, spec.beta);
  if (!spec.beta.is_finite()) return gw.log_sum;
  // S = beta (E - shift) + ln sum exp(-beta (lambda - shift))
  const double excess = gw.weights.dot((values.array() - gw.shift).matrix());
  return spec.beta.value() * excess + gw.log_sum;
}

void BetaSolveConfig::validate() const {
  if (!(abs_tol > 0.0) || max_iter < 1 || !(beta_clamp > 0.0)) {
    fail(ErrorKind::InvalidInput,
         "BetaSolveConfig: need abs_tol > 0, max_iter >= 1, beta_clamp > 0");
  }
}

ExtendedReal effective_beta(const DensityMatrix& rho_e, const EnvHamiltonian& h_env,
                            const BetaSolveConfig& cfg) {
  cfg.validate();
  const RVector& values = h_env.spectrum().values;
  const Index n = values.size();
  RVector p = h_env.populations(rho_e);
  p /= p.sum();
  const double e_min = values(0);
  const double e_max = values(n - 1);

  const RVector x_lo = (values.array() - e_min).matrix();
  const RVector x_hi = (e_max - values.array()).matrix().reverse();
  const double lo_gap = x_lo.dot(p);                // E - e_min
  const double hi_gap = (e_max - values.array()).matrix().dot(p);  // e_max - E

  if (lo_gap < -cfg.abs_tol || hi_gap < -cfg.abs_tol) {
    fail(ErrorKind::InfeasibleEnergy, "effective_beta: energy " + std::to_string(e_min + lo_gap) +
                                          " outside [" + std::to_string(e_min) + ", " +
                                          std::to_string(e_max) + "]");
  }
  if (lo_gap <= cfg.abs_tol) return ExtendedReal::pos_inf();
  if (hi_gap <= cfg.abs_tol) return ExtendedReal::neg_inf();

  double beta = 0.0;
  if (lo_gap <= x_lo.mean()) {
    beta = solve_positive_branch(x_lo, lo_gap, cfg);
  } else {
    beta = -solve_positive_branch(x_hi, hi_gap, cfg);
  }
  const ExtendedReal result = ExtendedReal::from_double(beta);
  if (result.is_finite()) {
    const double mismatch = gibbs_energy({result, h_env}) - (e_min + lo_gap);
    if (std::abs(mismatch) > cfg.abs_tol) {
      std::ostringstream msg;
      msg << "effective_beta: energy residual " << mismatch << " above tolerance at beta " << beta
          << " (target energy " << e_min + lo_gap << ")";
      fail(ErrorKind::ConvergenceError, msg.str());
    }
  }
  return result;
}

}  // namespace qthermo
