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
#include <memory>
#include <optional>
#include <vector>

#include "qthermo/extended_real.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

/// One piece of the schedule on [t_start, t_end]. Without the `_end`
/// matrices the Hamiltonian is constant on the segment; with them each term
/// is linearly interpolated from its start value to its end value.
struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  HermitianMatrix h_sys;
  HermitianMatrix h_int;
  std::optional<HermitianMatrix> h_sys_end;
  std::optional<HermitianMatrix> h_int_end;

  bool time_dependent() const { return h_sys_end.has_value() || h_int_end.has_value(); }
};

/// H(t) = H_S(t) (x) I + I (x) H_E + H_SE(t) over contiguous segments
/// covering [0, tau].
class HamiltonianSchedule {
 public:
  HamiltonianSchedule(EnvHamiltonian h_env, Index d_s, std::vector<Segment> segments);

  Index d_s() const { return d_s_; }
  Index d_e() const { return h_env_.dim(); }
  double duration() const { return segments_.back().t_end; }
  const EnvHamiltonian& h_env() const { return h_env_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Total Hamiltonian of segment `index` at time t (t inside that segment).
  HermitianMatrix total(std::size_t index, double t) const;
  /// Total Hamiltonian at t, right-continuous at segment boundaries (left
  /// limit at t = tau).
  HermitianMatrix total_at(double t) const;
  std::size_t segment_index(double t) const;

 private:
  EnvHamiltonian h_env_;
  Index d_s_;
  std::vector<Segment> segments_;
  HermitianMatrix env_part_;  // I (x) H_E
};

/// Evolved states on the substep grid with cached thermodynamic observables.
class Trajectory {
 public:
  const std::vector<double>& times() const { return times_; }
  const std::vector<BipartiteState>& states() const { return states_; }
  /// tr[rho_E(t) H_E]
  const std::vector<double>& env_energy() const { return env_energy_; }
  const std::vector<ExtendedReal>& beta_star() const { return beta_star_; }
  /// dQ/dt = -d/dt tr[rho_E H_E], right-continuous (left limit at tau).
  const std::vector<double>& heat_flux() const { return heat_flux_; }
  /// Per substep k: d/dt tr[rho_E H_E] at t_k and t_{k+1}, both under the
  /// generator used on that substep.
  const std::vector<double>& rate_start() const { return rate_start_; }
  const std::vector<double>& rate_end() const { return rate_end_; }
  /// Generator applied on substep k.
  const HermitianMatrix& generator(std::size_t k) const;

  const UnitaryMatrix& propagator() const { return propagator_; }
  const HamiltonianSchedule& schedule() const { return *schedule_; }
  const EnvHamiltonian& h_env() const { return schedule_->h_env(); }

  std::size_t size() const { return times_.size(); }
  const BipartiteState& initial() const { return states_.front(); }
  const BipartiteState& final() const { return states_.back(); }

 private:
  friend Trajectory evolve(const BipartiteState&, const HamiltonianSchedule&, int,
                           const BetaSolveConfig&);
  Trajectory(std::shared_ptr<const HamiltonianSchedule> schedule, UnitaryMatrix propagator)
      : schedule_(std::move(schedule)), propagator_(std::move(propagator)) {}

  std::shared_ptr<const HamiltonianSchedule> schedule_;
  std::vector<double> times_;
  std::vector<BipartiteState> states_;
  std::vector<double> env_energy_;
  std::vector<ExtendedReal> beta_star_;
  std::vector<double> heat_flux_;
  std::vector<double> rate_start_;
  std::vector<double> rate_end_;
  std::vector<std::size_t> generator_index_;
  std::vector<HermitianMatrix> generators_;
  UnitaryMatrix propagator_;
};

/// Piecewise-constant propagation: each substep [t, t+dt] applies
/// exp(-i H(t + dt/2) dt).
Trajectory evolve(const BipartiteState& initial, const HamiltonianSchedule& schedule,
                  int steps_per_segment, const BetaSolveConfig& cfg = {});

/// d/dt tr[rho_E H_E] = tr(-i [H, rho] (I (x) H_E)). The heat flux is its
/// negative.
double env_energy_rate(const BipartiteState& rho, const HermitianMatrix& h_total,
                       const HermitianMatrix& h_env);

/// Columns t, env_energy, beta_star, heat_flux, S_system, mutual_information.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace qthermo
