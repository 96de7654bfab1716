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

#include "qthermo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

void require_dim(const HermitianMatrix& m, Index n, const char* what) {
  if (m.dim() != n) {
    fail(ErrorKind::InvalidSchedule, std::string(what) + ": expected dimension " +
                                         std::to_string(n) + ", got " + std::to_string(m.dim()));
  }
}

HermitianMatrix lerp(const HermitianMatrix& a, const std::optional<HermitianMatrix>& b,
                     double frac) {
  if (!b) return a;
  return a + frac * (*b - a);
}

}  // namespace

// ---------------------------------------------------------------------------
// HamiltonianSchedule

HamiltonianSchedule::HamiltonianSchedule(EnvHamiltonian h_env, Index d_s,
                                         std::vector<Segment> segments)
    : h_env_(std::move(h_env)), d_s_(d_s), segments_(std::move(segments)) {
  if (d_s_ < 1) fail(ErrorKind::InvalidSchedule, "schedule: d_S must be positive");
  if (segments_.empty()) fail(ErrorKind::InvalidSchedule, "schedule: no segments");
  const Index d = d_s_ * h_env_.dim();
  double expected_start = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& seg = segments_[i];
    if (!std::isfinite(seg.t_start) || !std::isfinite(seg.t_end) || !(seg.t_end > seg.t_start)) {
      fail(ErrorKind::InvalidSchedule, "schedule: segment " + std::to_string(i) +
                                           " needs finite t_start < t_end");
    }
    if (std::abs(seg.t_start - expected_start) > 1e-12 * std::max(1.0, std::abs(expected_start))) {
      fail(ErrorKind::InvalidSchedule, "schedule: segment " + std::to_string(i) + " starts at " +
                                           std::to_string(seg.t_start) + ", expected " +
                                           std::to_string(expected_start) + " (gap or overlap)");
    }
    require_dim(seg.h_sys, d_s_, "schedule: h_sys");
    require_dim(seg.h_int, d, "schedule: h_int");
    if (seg.h_sys_end) require_dim(*seg.h_sys_end, d_s_, "schedule: h_sys_end");
    if (seg.h_int_end) require_dim(*seg.h_int_end, d, "schedule: h_int_end");
    expected_start = seg.t_end;
  }
  env_part_ = tensor_product(HermitianMatrix::identity(d_s_), h_env_.matrix());
}

HermitianMatrix HamiltonianSchedule::total(std::size_t index, double t) const {
  const Segment& seg = segments_.at(index);
  const double frac = std::clamp((t - seg.t_start) / (seg.t_end - seg.t_start), 0.0, 1.0);
  const HermitianMatrix h_sys = lerp(seg.h_sys, seg.h_sys_end, frac);
  const HermitianMatrix h_int = lerp(seg.h_int, seg.h_int_end, frac);
  return tensor_product(h_sys, HermitianMatrix::identity(d_e())) + env_part_ + h_int;
}

std::size_t HamiltonianSchedule::segment_index(double t) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (t < segments_[i].t_end) return i;
  }
  return segments_.size() - 1;
}

HermitianMatrix HamiltonianSchedule::total_at(double t) const {
  return total(segment_index(t), t);
}

// ---------------------------------------------------------------------------
// evolve

const HermitianMatrix& Trajectory::generator(std::size_t k) const {
  return generators_.at(generator_index_.at(k));
}

Trajectory evolve(const BipartiteState& initial, const HamiltonianSchedule& schedule,
                  int steps_per_segment, const BetaSolveConfig& cfg) {
  if (steps_per_segment < 1) fail(ErrorKind::InvalidInput, "evolve: steps_per_segment must be >= 1");
  if (initial.d_s() != schedule.d_s() || initial.d_e() != schedule.d_e()) {
    fail(ErrorKind::InvalidInput, "evolve: initial state dimensions do not match the schedule");
  }
  const Index d = initial.state().dim();
  auto sched = std::make_shared<const HamiltonianSchedule>(schedule);
  Trajectory traj(sched, UnitaryMatrix::identity(d));

  const std::size_t n_steps = schedule.segments().size() * std::size_t(steps_per_segment);
  traj.times_.reserve(n_steps + 1);
  traj.states_.reserve(n_steps + 1);

  const EnvHamiltonian& h_env = schedule.h_env();
  auto record_point = [&](double t, BipartiteState state) {
    const DensityMatrix rho_e = state.environment();
    traj.times_.push_back(t);
    traj.env_energy_.push_back(h_env.energy(rho_e));
    traj.beta_star_.push_back(effective_beta(rho_e, h_env, cfg));
    traj.states_.push_back(std::move(state));
  };
  record_point(0.0, initial);

  CMatrix propagator = CMatrix::Identity(d, d);
  for (std::size_t s = 0; s < schedule.segments().size(); ++s) {
    const Segment& seg = schedule.segments()[s];
    const double dt = (seg.t_end - seg.t_start) / steps_per_segment;
    std::optional<UnitaryMatrix> fixed_step;
    if (!seg.time_dependent()) {
      traj.generators_.push_back(schedule.total(s, seg.t_start));
      fixed_step = unitary_step(traj.generators_.back(), dt);
    }
    for (int j = 0; j < steps_per_segment; ++j) {
      const double t_mid = seg.t_start + (j + 0.5) * dt;
      const double t_next = j + 1 == steps_per_segment ? seg.t_end : seg.t_start + (j + 1) * dt;
      if (seg.time_dependent()) {
        traj.generators_.push_back(schedule.total(s, t_mid));
      }
      const HermitianMatrix& h = traj.generators_.back();
      const UnitaryMatrix u = fixed_step ? *fixed_step : unitary_step(h, dt);
      traj.generator_index_.push_back(traj.generators_.size() - 1);

      const BipartiteState& current = traj.states_.back();
      BipartiteState next = conjugate(u, current);
      traj.rate_start_.push_back(env_energy_rate(current, h, h_env.matrix()));
      traj.rate_end_.push_back(env_energy_rate(next, h, h_env.matrix()));
      propagator = u.matrix() * propagator;
      record_point(t_next, std::move(next));
    }
  }
  traj.propagator_ = UnitaryMatrix(std::move(propagator));

  traj.heat_flux_.reserve(traj.times_.size());
  for (double r : traj.rate_start_) traj.heat_flux_.push_back(-r);
  traj.heat_flux_.push_back(-traj.rate_end_.back());
  return traj;
}

double env_energy_rate(const BipartiteState& rho, const HermitianMatrix& h_total,
                       const HermitianMatrix& h_env) {
  const Index d = rho.state().dim();
  if (h_total.dim() != d || h_env.dim() != rho.d_e()) {
    fail(ErrorKind::InvalidInput, "env_energy_rate: dimension mismatch");
  }
  const CMatrix k = tensor_product(HermitianMatrix::identity(rho.d_s()), h_env).matrix();
  const CMatrix comm = k * h_total.matrix() - h_total.matrix() * k;
  // tr(-i [H, rho] K) = -i tr(rho [K, H])
  const Complex value = Complex(0.0, -1.0) * (rho.state().matrix() * comm).trace();
  return value.real();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto old_precision = os.precision(17);
  os << "t,env_energy,beta_star,heat_flux,S_system,mutual_information\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const BipartiteState& st = traj.states()[k];
    os << traj.times()[k] << ',' << traj.env_energy()[k] << ',' << traj.beta_star()[k].to_string()
       << ',' << traj.heat_flux()[k] << ',' << von_neumann_entropy(st.system()) << ','
       << mutual_information(st) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace qthermo
