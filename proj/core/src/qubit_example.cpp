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

#include "qthermo/qubit_example.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "qthermo/bounds.hpp"
#include "qthermo/errors.hpp"

namespace qthermo::qubit {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorKind::InvalidInput, "two-level example: epsilon must be positive and finite");
  }
}

// sum q ln(q / r) over two outcomes, 0 ln 0 = 0.
double binary_divergence(double q, double r) {
  double d = 0.0;
  for (const auto& [a, b] : {std::pair{q, r}, std::pair{1.0 - q, 1.0 - r}}) {
    if (a <= 0.0) continue;
    if (b <= 0.0) return INFINITY;
    d += a * std::log(a / b);
  }
  return d;
}

}  // namespace

bool EnvPoint::feasible() const {
  return longitudinal * longitudinal + std::norm(coherence) <= 1.0 + 1e-12;
}

DensityMatrix EnvPoint::density() const {
  if (!feasible()) fail(ErrorKind::InvalidInput, "EnvPoint outside the Bloch ball");
  CMatrix m(2, 2);
  m << 1.0 + longitudinal, coherence, std::conj(coherence), 1.0 - longitudinal;
  return DensityMatrix(HermitianMatrix(0.5 * m));
}

EnvHamiltonian two_level_hamiltonian(double epsilon) {
  require_epsilon(epsilon);
  const double diag[] = {0.0, epsilon};
  return EnvHamiltonian(HermitianMatrix::diagonal(diag));
}

double r_of_beta(ExtendedReal beta, double epsilon) {
  require_epsilon(epsilon);
  if (beta.is_pos_inf()) return 1.0;
  if (beta.is_neg_inf()) return -1.0;
  return std::tanh(0.5 * beta.value() * epsilon);
}

ExtendedReal beta_of_r(double r, double epsilon) {
  require_epsilon(epsilon);
  if (!(r >= -1.0 && r <= 1.0)) fail(ErrorKind::DomainError, "beta_of_r: r outside [-1, 1]");
  if (r == 1.0) return ExtendedReal::pos_inf();
  if (r == -1.0) return ExtendedReal::neg_inf();
  return 2.0 * std::atanh(r) / epsilon;
}

ExampleDistances example_distances(const EnvPoint& initial, const EnvPoint& final_point,
                                   ExtendedReal beta_tau, double epsilon) {
  const double dz = final_point.longitudinal - r_of_beta(beta_tau, epsilon);
  return {0.5 * std::abs(initial.coherence),
          0.5 * std::sqrt(dz * dz + std::norm(final_point.coherence))};
}

double gibbs_mismatch(double p, double beta0, double epsilon) {
  return binary_divergence(0.5 * (1.0 + p), 0.5 * (1.0 + r_of_beta(beta0, epsilon)));
}

RegionTerms region_terms(const EnvPoint& initial, const EnvPoint& final_point, double beta0,
                         ExtendedReal beta_tau, double epsilon) {
  const double dz = final_point.longitudinal - r_of_beta(beta_tau, epsilon);
  RegionTerms t{};
  t.lhs = dz * dz + std::norm(final_point.coherence);
  t.rhs = 2.0 * binary_entropy(std::min(0.5 * std::abs(initial.coherence), 1.0)) +
          2.0 * gibbs_mismatch(initial.longitudinal, beta0, epsilon);
  t.holds = t.lhs >= t.rhs;
  return t;
}

bool region_condition(const EnvPoint& initial, const EnvPoint& final_point, double beta0,
                      ExtendedReal beta_tau, double epsilon) {
  return region_terms(initial, final_point, beta0, beta_tau, epsilon).holds;
}

// ---------------------------------------------------------------------------
// Region maps

void RegionGrid::validate() const {
  require_epsilon(epsilon);
  if (!std::isfinite(beta0)) fail(ErrorKind::InvalidInput, "region grid: beta0 must be finite");
  if (s_steps < 2 || b_steps < 2) {
    fail(ErrorKind::InvalidInput, "region grid: resolutions must be at least 2");
  }
  if (!(s_max > s_min) || !(b_max > 0.0)) {
    fail(ErrorKind::InvalidInput, "region grid: need s_min < s_max and b_max > 0");
  }
  if (!initial.feasible()) fail(ErrorKind::InvalidInput, "region grid: initial point infeasible");
  if (const auto* c = std::get_if<ConstantBeta>(&tau_policy); c && !std::isfinite(c->beta)) {
    fail(ErrorKind::InvalidInput, "region grid: constant beta must be finite");
  }
}

double RegionGrid::s_at(int i) const { return s_min + (s_max - s_min) * i / (s_steps - 1); }
double RegionGrid::b_at(int j) const { return b_max * j / (b_steps - 1); }

RegionMap emit_region_map(const RegionGrid& grid) {
  grid.validate();
  RegionMap map;
  map.grid = grid;
  const bool matching = std::holds_alternative<EnergyMatching>(grid.tau_policy);
  const double ds = (grid.s_max - grid.s_min) / (grid.s_steps - 1);
  const double db = grid.b_max / (grid.b_steps - 1);
  const double cell = std::hypot(ds, db);

  map.rows.reserve(std::size_t(grid.s_steps) * std::size_t(grid.b_steps));
  for (int i = 0; i < grid.s_steps; ++i) {
    for (int j = 0; j < grid.b_steps; ++j) {
      RegionRow row{};
      row.s = grid.s_at(i);
      row.b_abs = grid.b_at(j);
      const EnvPoint point{row.s, Complex(row.b_abs, 0.0)};
      row.feasible = point.feasible();

      ExtendedReal beta_tau = matching ? beta_of_r(std::clamp(row.s, -1.0, 1.0), grid.epsilon)
                                       : ExtendedReal(std::get<ConstantBeta>(grid.tau_policy).beta);
      const RegionTerms terms = region_terms(grid.initial, point, grid.beta0, beta_tau, grid.epsilon);
      row.rhs = terms.rhs;
      row.holds = row.feasible && terms.holds;

      const double radius = std::sqrt(terms.rhs);
      double signed_distance = 0.0;  // > 0 outside the excluded region
      if (matching) {
        signed_distance = row.b_abs - radius;
      } else {
        map.ball_center = r_of_beta(beta_tau, grid.epsilon);
        signed_distance = std::hypot(row.s - map.ball_center, row.b_abs) - radius;
      }
      map.ball_radius = radius;
      row.ball_check = signed_distance >= 0.0;
      if (row.feasible && row.holds != row.ball_check && std::abs(signed_distance) > cell) {
        ++map.boundary_mismatches;
      }
      map.rows.push_back(row);
    }
  }
  return map;
}

void write_region_csv(std::ostream& os, const RegionMap& map) {
  const auto old_precision = os.precision(17);
  os << "s,b_abs,rhs,holds,feasible,ball_check\n";
  for (const RegionRow& r : map.rows) {
    os << r.s << ',' << r.b_abs << ',' << r.rhs << ',' << (r.holds ? 1 : 0) << ','
       << (r.feasible ? 1 : 0) << ',' << (r.ball_check ? 1 : 0) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace qthermo::qubit
