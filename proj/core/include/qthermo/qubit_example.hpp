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

#include <iosfwd>
#include <variant>
#include <vector>

#include "qthermo/entropy_production.hpp"
#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/thermo.hpp"

// Two-level environment with H_E = diag(0, epsilon), ground state first.
// Environment states are written (1/2)[[1 + z, c], [c*, 1 - z]] with z the
// longitudinal coordinate and c the complex coherence.
namespace qthermo::qubit {

struct EnvPoint {
  double longitudinal = 0.0;
  Complex coherence = 0.0;

  bool feasible() const;  // z^2 + |c|^2 <= 1
  DensityMatrix density() const;
};

EnvHamiltonian two_level_hamiltonian(double epsilon);

/// Population asymmetry of gamma_E(beta): tanh(beta epsilon / 2); +-1 at +-inf.
double r_of_beta(ExtendedReal beta, double epsilon);
/// Inverse of r_of_beta; +-inf at r = +-1.
ExtendedReal beta_of_r(double r, double epsilon);

struct ExampleDistances {
  double delta_T;     // |c_initial| / 2
  double dist_final;  // sqrt((s - r(beta_tau))^2 + |c_final|^2) / 2
};

ExampleDistances example_distances(const EnvPoint& initial, const EnvPoint& final_point,
                                   ExtendedReal beta_tau, double epsilon);

/// D(gamma(beta*_0) || gamma(beta_0)) where r(beta*_0) = p.
double gibbs_mismatch(double p, double beta0, double epsilon);

struct RegionTerms {
  double lhs;  // (s - r(beta_tau))^2 + |b|^2
  double rhs;  // 2 H2(|a|/2) + 2 D_gamma(beta_0)
  bool holds;
};

RegionTerms region_terms(const EnvPoint& initial, const EnvPoint& final_point, double beta0,
                         ExtendedReal beta_tau, double epsilon);
bool region_condition(const EnvPoint& initial, const EnvPoint& final_point, double beta0,
                      ExtendedReal beta_tau, double epsilon);

/// beta_tau policy for a region map: a constant, or beta*_tau of each cell.
using TauPolicy = std::variant<ConstantBeta, EnergyMatching>;

struct RegionGrid {
  double epsilon = 1.0;
  double beta0 = 0.0;
  TauPolicy tau_policy = ConstantBeta{0.0};
  EnvPoint initial;
  double s_min = -1.0;
  double s_max = 1.0;
  int s_steps = 101;
  double b_max = 1.0;
  int b_steps = 101;

  void validate() const;
  double s_at(int i) const;
  double b_at(int j) const;
};

struct RegionRow {
  double s;
  double b_abs;
  double rhs;
  bool holds;
  bool feasible;
  /// Geometric form of the condition: outside the ball of radius sqrt(rhs)
  /// centred at r(beta_tau) (constant policy), or above |b| = sqrt(rhs)
  /// (energy matching).
  bool ball_check;
};

struct RegionMap {
  RegionGrid grid;
  double ball_center = 0.0;  // r(beta_tau); unused for energy matching
  double ball_radius = 0.0;  // sqrt(rhs)
  std::vector<RegionRow> rows;
  /// Feasible cells where holds != ball_check farther than one cell from the
  /// boundary.
  int boundary_mismatches = 0;
};

RegionMap emit_region_map(const RegionGrid& grid);

/// Columns s, b_abs, rhs, holds, feasible, ball_check.
void write_region_csv(std::ostream& os, const RegionMap& map);

}  // namespace qthermo::qubit
