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

// Post-processing of simulated cycles: energy accounting, ground reaction
// force fans in the CoM frame and the virtual pivot point (VPP), the point
// the stance force lines pass closest to.

#ifndef HOPPER_ANALYSIS_H_
#define HOPPER_ANALYSIS_H_

#include <vector>

#include "hopper/model.h"
#include "hopper/simulator.h"

namespace hopper {

struct EnergyBreakdown {
  double kinetic = 0.0;
  double gravity = 0.0;
  double leg_spring = 0.0;
  double hip_spring = 0.0;
  double total = 0.0;
};

EnergyBreakdown ComputeEnergy(const ModelParams& p, const State& state);

// Apex-to-apex total energy change. Throws std::invalid_argument if the cycle
// did not complete.
double CycleEnergyChange(const CycleResult& cycle);

// Apex-to-apex kinetic energy change. Same precondition.
double CycleKineticEnergyChange(const ModelParams& p, const CycleResult& cycle);

struct VppEstimate {
  Vec2 point = Vec2::Zero();  // CoM frame, m
  double rms_distance = 0.0;  // m
  int samples = 0;            // force lines used
  bool degenerate = true;     // fewer than two usable lines or all parallel
};

// Samples with |force| <= min_force are skipped.
inline constexpr double kVppMinForce = 1.0;  // N

// Least-squares point closest to the lines through (foot - CoM) along each
// force direction d: solves sum(I - d d^T) r = sum(I - d d^T) origin.
VppEstimate EstimateVpp(const std::vector<GrfSample>& samples,
                        double min_force = kVppMinForce);

struct GrfArrow {
  double t = 0.0;
  Vec2 origin = Vec2::Zero();  // foot - CoM
  Vec2 force = Vec2::Zero();   // scaled by the peak force magnitude
};

// Forces scaled so that the largest one has unit length.
std::vector<GrfArrow> NormalizedGrf(const std::vector<GrfSample>& samples);

}  // namespace hopper

#endif  // HOPPER_ANALYSIS_H_
