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

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "qthermo/extended_real.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {
namespace {

using testing::density;
using testing::diag;
using testing::seeded;

EnvHamiltonian two_level(double eps) { return EnvHamiltonian(HermitianMatrix(diag({0.0, eps}))); }

EnvHamiltonian random_env(Rng& rng, Index d) { return EnvHamiltonian(random_hermitian(d, rng, 1.0)); }

std::vector<double> spectrum_of(const EnvHamiltonian& h) {
  const RVector& v = h.spectrum().values;
  return std::vector<double>(v.data(), v.data() + v.size());
}

// ---------------------------------------------------------------------------
// ExtendedReal

TEST(ExtendedReal, TagsAndOrdering) {
  const ExtendedReal a(1.5);
  EXPECT_TRUE(a.is_finite());
  EXPECT_EQ(a.value(), 1.5);
  EXPECT_TRUE(ExtendedReal::pos_inf() > a);
  EXPECT_TRUE(ExtendedReal::neg_inf() < a);
  EXPECT_EQ(ExtendedReal::from_double(INFINITY), ExtendedReal::pos_inf());
  EXPECT_EQ(ExtendedReal::from_double(-INFINITY), ExtendedReal::neg_inf());
  EXPECT_EQ(ExtendedReal::pos_inf().to_string(), "inf");
  EXPECT_EQ(ExtendedReal::neg_inf().to_string(), "-inf");
  EXPECT_QERROR(ExtendedReal::pos_inf().value(), ErrorKind::DomainError);
  EXPECT_QERROR(ExtendedReal(std::nan("")), ErrorKind::InvalidInput);
  EXPECT_QERROR(ExtendedReal::from_double(std::nan("")), ErrorKind::InvalidInput);
}

// ---------------------------------------------------------------------------
// von_neumann_entropy

TEST(Entropy, PureStateIsZero) {
  Rng rng = seeded(201);
  EXPECT_NEAR(von_neumann_entropy(random_density(3, rng, 1)), 0.0, 1e-12);
}

TEST(Entropy, MaximallyMixed) {
  for (Index d = 1; d <= 8; ++d) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d)), std::log(double(d)), 1e-14);
  }
}

TEST(Entropy, TwoLevelDiagonal) {
  EXPECT_NEAR(von_neumann_entropy(density(diag({0.75, 0.25}))),
              0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0), 1e-15);
}

TEST(Entropy, MatchesLogmOracleOnFullRankStates) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(202, c);
    const DensityMatrix rho = random_density(2 + c % 6, rng);
    EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy(rho.matrix()), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// relative_entropy

TEST(RelativeEntropy, SelfIsZero) {
  Rng rng = seeded(203);
  const DensityMatrix rho = random_density(4, rng);
  EXPECT_NEAR(relative_entropy(rho, rho).value(), 0.0, 1e-12);
}

TEST(RelativeEntropy, PureAgainstMaximallyMixed) {
  EXPECT_NEAR(relative_entropy(density(diag({1, 0})), DensityMatrix::maximally_mixed(2)).value(),
              std::log(2.0), 1e-15);
}

TEST(RelativeEntropy, DisjointSupportIsInfinite) {
  EXPECT_TRUE(relative_entropy(density(diag({1, 0})), density(diag({0, 1}))).is_pos_inf());
}

TEST(RelativeEntropy, RankDeficientSigmaWithContainedSupport) {
  EXPECT_NEAR(relative_entropy(density(diag({1, 0, 0})), density(diag({0.5, 0.5, 0}))).value(),
              std::log(2.0), 1e-14);
}

TEST(RelativeEntropy, DimensionMismatch) {
  EXPECT_QERROR(relative_entropy(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3)),
                ErrorKind::InvalidInput);
}

TEST(RelativeEntropy, KleinAndLogmOracle) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(204, c);
    const Index n = 2 + c % 6;
    const DensityMatrix rho = random_density(n, rng);
    const DensityMatrix sigma = random_density(n, rng);
    const double d = relative_entropy(rho, sigma).value();
    EXPECT_GE(d, -1e-10);
    EXPECT_NEAR(d, oracle::relative_entropy(rho.matrix(), sigma.matrix()), 1e-9);
  }
}

TEST(RelativeEntropy, SupportToleranceIsConfigurable) {
  const double old = support_tolerance();
  EXPECT_EQ(old, 1e-12);
  set_support_tolerance(1e-6);
  EXPECT_EQ(support_tolerance(), 1e-6);
  set_support_tolerance(old);
  EXPECT_QERROR(set_support_tolerance(-1.0), ErrorKind::InvalidInput);
}

// ---------------------------------------------------------------------------
// mutual_information

TEST(MutualInformation, ProductIsZero) {
  Rng rng = seeded(205);
  const BipartiteState prod = BipartiteState::product(random_density(3, rng), random_density(2, rng));
  EXPECT_NEAR(mutual_information(prod), 0.0, 1e-10);
}

TEST(MutualInformation, BellState) {
  CVector psi = CVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(mutual_information(BipartiteState(2, 2, DensityMatrix::pure(psi))), 2.0 * std::log(2.0), 1e-12);
}

TEST(MutualInformation, ClassicallyCorrelated) {
  EXPECT_NEAR(mutual_information(BipartiteState(2, 2, density(diag({0.5, 0, 0, 0.5})))), std::log(2.0), 1e-14);
}

TEST(MutualInformation, EqualsDivergenceFromProductOfMarginals) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(206, c);
    const Index ds = 1 + c % 3;
    const Index de = 2 + c % 3;
    const BipartiteState rho(ds, de, random_density(ds * de, rng));
    const double i = mutual_information(rho);
    EXPECT_GE(i, -1e-10);
    const DensityMatrix prod = tensor_product(rho.system(), rho.environment());
    EXPECT_NEAR(i, relative_entropy(rho.state(), prod).value(), 1e-9);
  }
}

// ---------------------------------------------------------------------------
// EnvHamiltonian / Gibbs states

TEST(EnvHamiltonian, RequiresTwoDistinctLevels) {
  EXPECT_QERROR(EnvHamiltonian(HermitianMatrix::identity(3)), ErrorKind::InvalidInput);
  EXPECT_NO_THROW(EnvHamiltonian(HermitianMatrix(diag({0, 0, 1}))));
}

TEST(Gibbs, InfiniteTemperatureIsMaximallyMixed) {
  Rng rng = seeded(207);
  const EnvHamiltonian h = random_env(rng, 4);
  EXPECT_LE(max_abs(gibbs_state({0.0, h}).matrix() - 0.25 * CMatrix::Identity(4, 4)), 1e-15);
}

TEST(Gibbs, TwoLevelClosedForm) {
  const double eps = 1.3;
  for (double beta : {-4.0, -0.3, 0.0, 0.7, 5.0}) {
    const double z = 1.0 + std::exp(-beta * eps);
    EXPECT_LE(max_abs(gibbs_state({beta, two_level(eps)}).matrix() - diag({1.0 / z, std::exp(-beta * eps) / z})),
              1e-15);
  }
}

TEST(Gibbs, ZeroTemperatureIsGroundProjector) {
  EXPECT_LE(max_abs(gibbs_state({ExtendedReal::pos_inf(), two_level(1.0)}).matrix() - diag({1, 0})), 0.0);
  EXPECT_LE(max_abs(gibbs_state({ExtendedReal::neg_inf(), two_level(1.0)}).matrix() - diag({0, 1})), 0.0);
}

TEST(Gibbs, DegenerateExtremeEigenspaceAtInfiniteBeta) {
  const EnvHamiltonian h(HermitianMatrix(diag({0, 0, 1})));
  EXPECT_LE(max_abs(gibbs_state({ExtendedReal::pos_inf(), h}).matrix() - diag({0.5, 0.5, 0})), 1e-15);
  EXPECT_NEAR(gibbs_entropy({ExtendedReal::pos_inf(), h}), std::log(2.0), 1e-15);
}

TEST(Gibbs, NoOverflowAtLargeBeta) {
  const EnvHamiltonian h(HermitianMatrix(diag({-300, 0, 400})));
  for (double beta : {-50.0, 50.0}) {
    const DensityMatrix g = gibbs_state({beta, h});
    EXPECT_NEAR(g.hermitian().trace(), 1.0, 1e-15);
    EXPECT_TRUE(std::isfinite(log_partition({beta, h})));
  }
}

TEST(Gibbs, FullRankCommutesAndMatchesOracle) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(208, c);
    const EnvHamiltonian h = random_env(rng, 2 + c % 7);
    const double beta = uniform(rng, -5.0, 5.0);
    const DensityMatrix g = gibbs_state({beta, h});
    EXPECT_GT(g.spectrum().values(0), 0.0);
    const CMatrix comm = g.matrix() * h.matrix().matrix() - h.matrix().matrix() * g.matrix();
    EXPECT_LE(max_abs(comm), 1e-11);
    const std::vector<double> e = spectrum_of(h);
    EXPECT_NEAR(gibbs_energy({beta, h}), oracle::gibbs_mean(e, beta), 1e-12);
    EXPECT_NEAR(gibbs_entropy({beta, h}), oracle::shannon(oracle::gibbs_populations(e, beta)), 1e-12);
    EXPECT_NEAR(gibbs_entropy({beta, h}), von_neumann_entropy(g), 1e-10);
    double z = 0.0;
    for (double x : e) z += std::exp(-beta * x);
    EXPECT_NEAR(log_partition({beta, h}), std::log(z), 1e-12);
  }
}

TEST(Gibbs, LogPartitionRejectsInfiniteBeta) {
  EXPECT_QERROR(log_partition({ExtendedReal::pos_inf(), two_level(1.0)}), ErrorKind::DomainError);
}

TEST(GibbsEnergy, TwoLevelLimits) {
  const double eps = 2.0;
  EXPECT_NEAR(gibbs_energy({0.0, two_level(eps)}), eps / 2.0, 1e-15);
  EXPECT_NEAR(gibbs_energy({ExtendedReal::pos_inf(), two_level(eps)}), 0.0, 0.0);
  EXPECT_NEAR(gibbs_energy({ExtendedReal::neg_inf(), two_level(eps)}), eps, 0.0);
  EXPECT_NEAR(gibbs_energy({60.0, two_level(eps)}), 0.0, 1e-40);
}

TEST(GibbsEnergy, StrictlyDecreasingAndSlopeIsMinusVariance) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(209, c);
    const EnvHamiltonian h = random_env(rng, 2 + c % 7);
    const double beta = uniform(rng, -3.0, 3.0);
    const double step = 1e-4;
    const double fd = (gibbs_energy({beta + step, h}) - gibbs_energy({beta - step, h})) / (2 * step);
    const double var = gibbs_variance({beta, h});
    EXPECT_GT(var, 0.0);
    EXPECT_NEAR(fd, -var, 1e-6 * var);
    EXPECT_GT(gibbs_energy({beta, h}), gibbs_energy({beta + 0.01, h}));
  }
}

// ---------------------------------------------------------------------------
// effective_beta

// Spectral width 0.75 keeps |beta| * width <= 15 on [-20, 20]; beyond that the
// edge populations of a rotated Gibbs matrix fall below double resolution.
TEST(EffectiveBeta, FixedPointOfGibbs) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(210, c);
    const HermitianMatrix raw = random_hermitian(2 + c % 7, rng);
    const RVector ev = eig_hermitian(raw).values;
    const EnvHamiltonian h((0.75 / (ev(ev.size() - 1) - ev(0))) * raw);
    const double beta = uniform(rng, -20.0, 20.0);
    const ExtendedReal got = effective_beta(gibbs_state({beta, h}), h);
    ASSERT_TRUE(got.is_finite());
    EXPECT_NEAR(got.value(), beta, 1e-9) << "case " << c;
  }
}

TEST(EffectiveBeta, FixedPointInEnergyBasis) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(215, c);
    std::vector<double> levels(2 + c % 7);
    for (double& e : levels) e = uniform(rng, -0.5, 0.5);
    const EnvHamiltonian h(HermitianMatrix::diagonal(levels));
    const double beta = uniform(rng, -20.0, 20.0);
    const ExtendedReal got = effective_beta(gibbs_state({beta, h}), h);
    ASSERT_TRUE(got.is_finite());
    EXPECT_NEAR(got.value(), beta, 1e-9) << "case " << c;
  }
}

TEST(EffectiveBeta, MaximallyMixedGivesZero) {
  Rng rng = seeded(211);
  const EnvHamiltonian h = random_env(rng, 5);
  EXPECT_NEAR(effective_beta(DensityMatrix::maximally_mixed(5), h).value(), 0.0, 1e-9);
}

TEST(EffectiveBeta, TwoLevelClosedForm) {
  const double eps = 0.8;
  for (double q : {0.01, 0.2, 0.5, 0.73, 0.999}) {
    const double expected = std::log((1.0 - q) / q) / eps;
    EXPECT_NEAR(effective_beta(density(diag({1.0 - q, q})), two_level(eps)).value(), expected, 1e-9);
  }
}

TEST(EffectiveBeta, OffDiagonalsDoNotShiftBeta) {
  CMatrix m(2, 2);
  m << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  EXPECT_NEAR(effective_beta(density(m), two_level(1.0)).value(), std::log(0.7 / 0.3), 1e-9);
}

TEST(EffectiveBeta, EdgesGiveInfinities) {
  EXPECT_TRUE(effective_beta(density(diag({1, 0})), two_level(1.0)).is_pos_inf());
  EXPECT_TRUE(effective_beta(density(diag({0, 1})), two_level(1.0)).is_neg_inf());
}

TEST(EffectiveBeta, BeyondClampReportsInfinity) {
  BetaSolveConfig cfg;
  cfg.beta_clamp = 10.0;
  const ExtendedReal b = effective_beta(gibbs_state({15.0, two_level(1.0)}), two_level(1.0), cfg);
  EXPECT_TRUE(b.is_pos_inf());
  const ExtendedReal n = effective_beta(gibbs_state({-15.0, two_level(1.0)}), two_level(1.0), cfg);
  EXPECT_TRUE(n.is_neg_inf());
}

TEST(EffectiveBeta, InfeasibleEnergy) {
  // Trusted construction skips the PSD check.
  CMatrix m = diag({1.0 + 1e-9, -1e-9});
  EXPECT_QERROR(effective_beta(DensityMatrix::from_trusted(m), two_level(1.0)), ErrorKind::InfeasibleEnergy);
}

TEST(EffectiveBeta, IterationBudget) {
  BetaSolveConfig cfg;
  cfg.max_iter = 1;
  EXPECT_QERROR(effective_beta(gibbs_state({3.3, two_level(1.0)}), two_level(1.0), cfg),
                ErrorKind::ConvergenceError);
}

TEST(EffectiveBeta, ConfigValidation) {
  BetaSolveConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_QERROR(cfg.validate(), ErrorKind::InvalidInput);
  cfg = {};
  cfg.max_iter = 0;
  EXPECT_QERROR(cfg.validate(), ErrorKind::InvalidInput);
  cfg = {};
  cfg.beta_clamp = -1.0;
  EXPECT_QERROR(cfg.validate(), ErrorKind::InvalidInput);
}

TEST(EffectiveBeta, EnergyResidualWithinTolerance) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(212, c);
    const EnvHamiltonian h = random_env(rng, 2 + c % 7);
    const DensityMatrix rho = random_density(h.dim(), rng, 1 + c % 3);
    const ExtendedReal b = effective_beta(rho, h);
    ASSERT_TRUE(b.is_finite());
    EXPECT_LE(std::abs(gibbs_energy({b, h}) - h.energy(rho)), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Identities

TEST(ThermoIdentities, PythagoreanAndEntropyDifference) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(213, c);
    const EnvHamiltonian h = random_env(rng, 2 + c % 7);
    const DensityMatrix rho = random_density(h.dim(), rng);
    const ExtendedReal star = effective_beta(rho, h);
    const ExtendedReal beta(uniform(rng, -4.0, 4.0));
    const DensityMatrix g_star = gibbs_state({star, h});
    const DensityMatrix g = gibbs_state({beta, h});
    const double lhs = relative_entropy(rho, g).value();
    const double rhs = relative_entropy(rho, g_star).value() + relative_entropy(g_star, g).value();
    EXPECT_NEAR(lhs, rhs, 1e-8);
    EXPECT_NEAR(relative_entropy(rho, g_star).value(), von_neumann_entropy(g_star) - von_neumann_entropy(rho),
                1e-9);
  }
}

TEST(ThermoIdentities, JointDivergenceSplitsIntoCorrelationsAndEnvironment) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(214, c);
    const Index ds = 1 + c % 3;
    const EnvHamiltonian h = random_env(rng, 2 + c % 3);
    const BipartiteState rho(ds, h.dim(), random_density(ds * h.dim(), rng));
    const ExtendedReal beta(uniform(rng, -2.0, 2.0));
    const DensityMatrix ref = tensor_product(rho.system(), gibbs_state({beta, h}));
    EXPECT_NEAR(relative_entropy(rho.state(), ref).value(),
                mutual_information(rho) + relative_entropy(rho.environment(), gibbs_state({beta, h})).value(), 1e-9);
  }
}

TEST(ThermoIdentities, JointDivergenceMinimizedAtEffectiveBeta) {
  for (int c = 0; c < 20; ++c) {
    Rng rng = seeded(215, c);
    const EnvHamiltonian h = random_env(rng, 3);
    const BipartiteState rho(2, 3, random_density(6, rng));
    const double star = effective_beta(rho.environment(), h).value();
    const double step = 0.01;
    double best = INFINITY;
    double arg = 0.0;
    for (int k = -200; k <= 200; ++k) {
      const double beta = star + 0.37 * step + k * step;
      const double d =
          relative_entropy(rho.state(), tensor_product(rho.system(), gibbs_state({beta, h}))).value();
      if (d < best) best = d, arg = beta;
    }
    EXPECT_LE(std::abs(arg - star), step);
  }
}

}  // namespace
}  // namespace qthermo
