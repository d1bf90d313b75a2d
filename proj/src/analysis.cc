// Copyright 2026 The Passive Hopper Authors
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

#include "hopper/analysis.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hopper/linalg.h"

namespace hopper {

EnergyBreakdown ComputeEnergy(const ModelParams& p, const State& state) {
  EnergyBreakdown e;
  e.kinetic = KineticEnergy(p, state.qd);
  e.gravity = p.total_mass * p.gravity * state.q[kZ];
  e.leg_spring = LegSpringPotential(p, state.q[kLeg]);
  e.hip_spring = HipPotential(p, state.q[kHip]);
  e.total = e.kinetic + e.gravity + e.leg_spring + e.hip_spring;
  return e;
}

double CycleEnergyChange(const CycleResult& cycle) {
  if (!cycle.completed()) {
    throw std::invalid_argument("CycleEnergyChange: cycle did not complete");
  }
  return cycle.energy.total_change();
}

double CycleKineticEnergyChange(const ModelParams& p,
                                const CycleResult& cycle) {
  if (!cycle.completed()) {
    throw std::invalid_argument(
        "CycleKineticEnergyChange: cycle did not complete");
  }
  return KineticEnergy(p, cycle.end.qd) - KineticEnergy(p, cycle.start.qd);
}

VppEstimate EstimateVpp(const std::vector<GrfSample>& samples,
                        double min_force) {
  VppEstimate est;
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  Vec2 b = Vec2::Zero();
  std::vector<std::pair<Vec2, Eigen::Matrix2d>> lines;
  for (const GrfSample& s : samples) {
    const double magnitude = s.force.norm();
    if (!(magnitude > min_force)) continue;
    const Vec2 d = s.force / magnitude;
    const Eigen::Matrix2d proj = Eigen::Matrix2d::Identity() - d * d.transpose();
    const Vec2 origin = s.foot - s.com;
    a += proj;
    b += proj * origin;
    lines.emplace_back(origin, proj);
  }
  est.samples = static_cast<int>(lines.size());
  if (est.samples < 2) return est;
  try {
    est.point = LuSolve(a, b);
  } catch (const SingularMatrixError&) {
    return est;
  }
  double sum_sq = 0.0;
  for (const auto& [origin, proj] : lines) {
    sum_sq += (proj * (est.point - origin)).squaredNorm();
  }
  est.rms_distance = std::sqrt(sum_sq / est.samples);
  est.degenerate = false;
  return est;
}

std::vector<GrfArrow> NormalizedGrf(const std::vector<GrfSample>& samples) {
  double peak = 0.0;
  for (const GrfSample& s : samples) peak = std::max(peak, s.force.norm());
  std::vector<GrfArrow> out;
  out.reserve(samples.size());
  for (const GrfSample& s : samples) {
    GrfArrow arrow;
    arrow.t = s.t;
    arrow.origin = s.foot - s.com;
    arrow.force = peak > 0.0 ? Vec2(s.force / peak) : Vec2::Zero();
    out.push_back(arrow);
  }
  return out;
}

}  // namespace hopper
