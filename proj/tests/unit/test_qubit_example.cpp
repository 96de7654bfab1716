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
#include <sstream>

#include "test_util.hpp"
#include "qthermo/bounds.hpp"
#include "qthermo/entropy_production.hpp"
#include "qthermo/qubit_example.hpp"

namespace qthermo::qubit {
namespace {

using qthermo::testing::seeded;

EnvPoint random_point(Rng& rng) {
  // Uniform in the ball by rejection.
  for (;;) {
    const double z = uniform(rng, -1, 1);
    const double x = uniform(rng, -1, 1);
    const double y = uniform(rng, -1, 1);
    if (z * z + x * x + y * y <= 1.0) return {z, Complex(x, y)};
  }
}

TEST(QubitExample, HamiltonianIsGroundStateFirst) {
  const EnvHamiltonian h = two_level_hamiltonian(2.0);
  EXPECT_EQ(h.min_energy(), 0.0);
  EXPECT_EQ(h.max_energy(), 2.0);
  EXPECT_EQ(h.matrix()(0, 0), Complex(0.0));
  EXPECT_QERROR(two_level_hamiltonian(0.0), ErrorKind::InvalidInput);
  EXPECT_QERROR(two_level_hamiltonian(-1.0), ErrorKind::InvalidInput);
}

TEST(RofBeta, LimitsAndSign) {
  EXPECT_EQ(r_of_beta(0.0, 1.0), 0.0);
  EXPECT_EQ(r_of_beta(ExtendedReal::pos_inf(), 1.0), 1.0);
  EXPECT_EQ(r_of_beta(ExtendedReal::neg_inf(), 1.0), -1.0);
  EXPECT_LT(r_of_beta(-0.5, 1.0), 0.0);
  EXPECT_NEAR(r_of_beta(60.0, 1.0), 1.0, 1e-15);
}

TEST(RofBeta, MatchesGibbsDiagonal) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(601, c);
    const double eps = uniform(rng, 0.1, 3.0);
    const double beta = uniform(rng, -10, 10);
    const CMatrix g = gibbs_state({beta, two_level_hamiltonian(eps)}).matrix();
    const double r = r_of_beta(beta, eps);
    EXPECT_NEAR(g(0, 0).real(), 0.5 * (1 + r), 1e-12);
    EXPECT_NEAR(g(1, 1).real(), 0.5 * (1 - r), 1e-12);
  }
}

TEST(RofBeta, StrictlyIncreasingAndInvertible) {
  double prev = -2.0;
  for (int i = -100; i <= 100; ++i) {
    const double beta = 0.1 * i;
    const double r = r_of_beta(beta, 1.3);
    EXPECT_GT(r, prev);
    prev = r;
    EXPECT_NEAR(beta_of_r(r, 1.3).value(), beta, 1e-9);
  }
  EXPECT_TRUE(beta_of_r(1.0, 1.0).is_pos_inf());
  EXPECT_TRUE(beta_of_r(-1.0, 1.0).is_neg_inf());
  EXPECT_QERROR(beta_of_r(1.5, 1.0), ErrorKind::DomainError);
}

TEST(RofBeta, EffectiveBetaConsistencyIgnoresCoherence) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = seeded(602, c);
    const double eps = uniform(rng, 0.2, 2.0);
    EnvPoint pt = random_point(rng);
    pt.longitudinal = std::clamp(pt.longitudinal, -0.999, 0.999);
    if (!pt.feasible()) pt.coherence = 0.0;
    const ExtendedReal b = effective_beta(pt.density(), two_level_hamiltonian(eps));
    EXPECT_NEAR(r_of_beta(b, eps), pt.longitudinal, 1e-9);
  }
}

TEST(EnvPoint, FeasibilityAndDensity) {
  EXPECT_TRUE((EnvPoint{0.6, Complex(0.0, 0.8)}.feasible()));
  EXPECT_FALSE((EnvPoint{0.6, Complex(0.81, 0.0)}.feasible()));
  EXPECT_QERROR((EnvPoint{1.0, Complex(0.1, 0.0)}.density()), ErrorKind::InvalidInput);
  const DensityMatrix rho = EnvPoint{0.2, Complex(0.3, -0.1)}.density();
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 1) - Complex(0.15, -0.05)), 0.0, 1e-15);
}

TEST(ExampleDistances, TrivialCases) {
  const ExampleDistances d0 = example_distances({0.3, 0.0}, {r_of_beta(0.7, 1.0), 0.0}, 0.7, 1.0);
  EXPECT_EQ(d0.delta_T, 0.0);
  EXPECT_NEAR(d0.dist_final, 0.0, 1e-15);
}

TEST(ExampleDistances, ClosedFormsMatchGenericTraceDistance) {
  const int n = 10000;
  double worst = 0.0;
  for (int c = 0; c < n; ++c) {
    Rng rng = seeded(603, c);
    const double eps = uniform(rng, 0.2, 3.0);
    const EnvHamiltonian h = two_level_hamiltonian(eps);
    EnvPoint init = random_point(rng);
    init.longitudinal = std::clamp(init.longitudinal, -0.999, 0.999);
    if (!init.feasible()) init.coherence = 0.0;
    const EnvPoint fin = random_point(rng);
    const double beta_tau = uniform(rng, -5, 5);
    const ExampleDistances d = example_distances(init, fin, beta_tau, eps);
    const DensityMatrix rho_e = init.density();
    const double generic_initial = trace_distance(rho_e, gibbs_state({effective_beta(rho_e, h), h}));
    const double generic_final = trace_distance(fin.density(), gibbs_state({beta_tau, h}));
    worst = std::max({worst, std::abs(d.delta_T - generic_initial), std::abs(d.dist_final - generic_final)});
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(GibbsMismatch, MatchesGeneric) {
  for (int c = 0; c < 100; ++c) {
    Rng rng = seeded(604, c);
    const double eps = uniform(rng, 0.2, 3.0);
    EnvPoint pt = random_point(rng);
    pt.longitudinal = std::clamp(pt.longitudinal, -0.99, 0.99);
    if (!pt.feasible()) pt.coherence = 0.0;
    const double beta0 = uniform(rng, -3, 3);
    EXPECT_NEAR(gibbs_mismatch(pt.longitudinal, beta0, eps),
                qthermo::gibbs_mismatch(pt.density(), beta0, two_level_hamiltonian(eps)), 1e-10);
  }
}

TEST(RegionCondition, ZeroRhsHoldsAwayFromCentre) {
  const double beta = 0.8;
  const EnvPoint init{r_of_beta(beta, 1.0), 0.0};
  const RegionTerms t = region_terms(init, {0.1, Complex(0.2, 0.0)}, beta, 0.5, 1.0);
  EXPECT_NEAR(t.rhs, 0.0, 1e-12);
  EXPECT_TRUE(t.holds);
  EXPECT_TRUE(region_condition(init, {r_of_beta(0.5, 1.0), Complex(0.0, 0.01)}, beta, 0.5, 1.0));
}

TEST(RegionCondition, EnergyMatchingWithFullCoherenceIsVacuous) {
  const EnvPoint init{0.0, Complex(1.0, 0.0)};
  for (double s : {-0.9, 0.0, 0.5}) {
    for (double b : {0.0, 0.3, 0.43}) {
      const EnvPoint fin{s, Complex(b, 0.0)};
      const RegionTerms t = region_terms(init, fin, 0.0, beta_of_r(s, 1.0), 1.0);
      EXPECT_NEAR(t.rhs, 2 * std::log(2.0), 1e-12);
      EXPECT_FALSE(t.holds);
    }
  }
}

TEST(RegionCondition, AgreesWithGenericProductConditionAndIsSound) {
  int holds = 0;
  for (int c = 0; c < 500; ++c) {
    Rng rng = seeded(605, c);
    const double eps = uniform(rng, 0.5, 2.0);
    const EnvHamiltonian h = two_level_hamiltonian(eps);
    const double beta0 = uniform(rng, -1, 1);
    const double p = r_of_beta(beta0 + uniform(rng, -0.3, 0.3), eps);
    const double a = uniform(rng, 0.0, std::sqrt(1 - p * p)) * (c % 4 == 0 ? 0.0 : 1.0);
    const EnvPoint init{p, Complex(a, 0.0)};
    const DensityMatrix rho_s = random_density(2, rng);
    const BipartiteState rho = BipartiteState::product(rho_s, init.density());
    const BipartiteState sigma = conjugate(haar_unitary(4, rng), rho);
    const CMatrix se = sigma.environment().matrix();
    const EnvPoint fin{(se(0, 0) - se(1, 1)).real(), 2.0 * se(0, 1)};
    const double beta_tau = uniform(rng, -2, 2);
    const RegionTerms t = region_terms(init, fin, beta0, beta_tau, eps);
    const SufficientCondition generic =
        sufficient_nonneg_product(sigma.environment(), beta_tau, rho_s, init.density(), beta0, h);
    EXPECT_NEAR(t.lhs, 4 * generic.lhs, 1e-9);
    EXPECT_NEAR(t.rhs, 4 * generic.rhs, 1e-9);
    if (t.holds) {
      ++holds;
      EXPECT_GE(delta_sigma(rho, sigma, beta0, beta_tau, h), -1e-9);
    }
  }
  EXPECT_GT(holds, 20);
}

// ---------------------------------------------------------------------------
// Region maps

RegionGrid constant_grid() {
  RegionGrid g;
  g.beta0 = 0.5;
  g.tau_policy = ConstantBeta{0.5};
  g.initial = {0.4, Complex(0.1, 0.0)};
  g.s_steps = 201;
  g.b_steps = 101;
  return g;
}

TEST(RegionMap, Validation) {
  RegionGrid g = constant_grid();
  g.s_steps = 0;
  EXPECT_QERROR(emit_region_map(g), ErrorKind::InvalidInput);
  g = constant_grid();
  g.b_max = 0.0;
  EXPECT_QERROR(emit_region_map(g), ErrorKind::InvalidInput);
  g = constant_grid();
  g.initial = {0.9, Complex(0.9, 0.0)};
  EXPECT_QERROR(emit_region_map(g), ErrorKind::InvalidInput);
}

TEST(RegionMap, ZeroRhsGridIsAllTrue) {
  RegionGrid g = constant_grid();
  g.initial = {r_of_beta(g.beta0, g.epsilon), 0.0};
  const RegionMap map = emit_region_map(g);
  EXPECT_NEAR(map.ball_radius, 0.0, 1e-7);
  for (const RegionRow& r : map.rows) {
    if (r.feasible) EXPECT_TRUE(r.holds) << r.s << " " << r.b_abs;
    else EXPECT_FALSE(r.holds);
  }
}

TEST(RegionMap, ConstantPolicyBoundaryIsTheBall) {
  const RegionGrid g = constant_grid();
  const RegionMap map = emit_region_map(g);
  ASSERT_EQ(map.rows.size(), 201u * 101u);
  const double radius = std::sqrt(2 * binary_entropy(0.05) + 2 * gibbs_mismatch(0.4, 0.5, 1.0));
  const double centre = std::tanh(0.25);
  EXPECT_NEAR(map.ball_radius, radius, 1e-12);
  EXPECT_NEAR(map.ball_center, centre, 1e-15);
  const double cell = std::hypot(2.0 / 200, 1.0 / 100);
  int inside = 0;
  int outside = 0;
  for (const RegionRow& r : map.rows) {
    if (!r.feasible) continue;
    const double dist = std::hypot(r.s - centre, r.b_abs) - radius;
    if (dist < -cell) {
      EXPECT_FALSE(r.holds);
      ++inside;
    } else if (dist > cell) {
      EXPECT_TRUE(r.holds);
      ++outside;
    }
  }
  EXPECT_GT(inside, 50);
  EXPECT_GT(outside, 50);
  EXPECT_EQ(map.boundary_mismatches, 0);
}

TEST(RegionMap, EnergyMatchingBoundaryIsHorizontal) {
  RegionGrid g = constant_grid();
  g.tau_policy = EnergyMatching{};
  g.initial = {std::tanh(0.25), Complex(0.2, 0.0)};
  g.beta0 = 0.5;
  const RegionMap map = emit_region_map(g);
  const double line = std::sqrt(2 * binary_entropy(0.1));
  EXPECT_NEAR(map.ball_radius, line, 1e-9);
  const double db = 1.0 / 100;
  for (const RegionRow& r : map.rows) {
    if (!r.feasible) continue;
    if (r.b_abs < line - db) EXPECT_FALSE(r.holds) << r.s << " " << r.b_abs;
    if (r.b_abs > line + db) EXPECT_TRUE(r.holds) << r.s << " " << r.b_abs;
  }
  EXPECT_EQ(map.boundary_mismatches, 0);
}

TEST(RegionMap, CsvLayout) {
  RegionGrid g = constant_grid();
  g.s_steps = 3;
  g.b_steps = 2;
  std::ostringstream os;
  write_region_csv(os, emit_region_map(g));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "s,b_abs,rhs,holds,feasible,ball_check");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

}  // namespace
}  // namespace qthermo::qubit
