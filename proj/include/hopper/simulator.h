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

// Hybrid gait machine. One cycle runs apex -> touchdown (impact) -> stance ->
// liftoff -> apex:
//   touchdown  foot height crosses zero while falling
//   liftoff    vertical ground reaction crosses zero while falling
//   apex       vertical CoM velocity crosses zero while falling

#ifndef HOPPER_SIMULATOR_H_
#define HOPPER_SIMULATOR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopper/integrator.h"
#include "hopper/model.h"

namespace hopper {

enum class FailureReason {
  kNoTouchdown,
  kNoLiftoff,
  kNoApex,
  kBodyGroundContact,
  kNegativeInitialGrf,
  kTimeBudgetExceeded,
};

std::string_view ToString(FailureReason reason);

enum class EventKind { kTouchdown, kLiftoff, kApex };

std::string_view ToString(EventKind kind);

struct EventRecord {
  EventKind kind;
  double t = 0.0;
  State pre;
  State post;
  Vec2 impulse = Vec2::Zero();  // touchdown only
  double energy_jump = 0.0;     // total energy post minus pre, J
};

struct TrajectorySample {
  double t = 0.0;
  Phase phase = Phase::kFlight;
  Vec5 q = Vec5::Zero();
  Vec5 qd = Vec5::Zero();
};

struct GrfSample {
  double t = 0.0;
  Vec2 foot = Vec2::Zero();
  Vec2 com = Vec2::Zero();
  Vec2 force = Vec2::Zero();
};

// Energy bookkeeping of one cycle. Phase drifts are end minus start of each
// continuous arc and vanish for an exact integrator.
struct EnergyLedger {
  double start = 0.0;
  double end = 0.0;
  double descent_drift = 0.0;  // apex to touchdown
  double stance_drift = 0.0;
  double ascent_drift = 0.0;   // liftoff to apex
  double impact_loss = 0.0;    // kinetic energy change at touchdown, <= 0
  double liftoff_loss = 0.0;   // leg spring energy dropped by the snap, <= 0

  double total_change() const { return end - start; }
  double jump_losses() const { return impact_loss + liftoff_loss; }
};

struct CycleResult {
  State start;
  // Apex state translated to x = 0 when the cycle completed, otherwise the
  // last state reached.
  State end;
  std::vector<EventRecord> events;
  std::vector<TrajectorySample> trajectory;
  std::vector<GrfSample> grf;
  EnergyLedger energy;
  // Contact force right after the impact, when touchdown happened.
  std::optional<Vec2> touchdown_force;
  // Stance duration, when liftoff happened.
  std::optional<double> stance_duration;
  std::optional<FailureReason> failure;
  std::string failure_detail;

  bool completed() const { return !failure.has_value(); }
};

struct SimulationOptions {
  IntegratorConfig integrator;  // max_time is the per-phase time budget
  double sample_interval = 1e-3;  // s; 0 disables trajectory recording
  double min_com_height = 0.05;   // m; lower means body-ground contact
  // When set, a stance that starts with a non-positive vertical ground force
  // ends the cycle with kNegativeInitialGrf. Otherwise the foot is held until
  // the vertical force crosses zero from above. Right after touchdown the leg
  // spring is relaxed, so the contact force is normal to the leg and small;
  // its sign is set by the hip torque.
  bool reject_negative_initial_grf = false;
};

// Runs one apex-to-apex cycle. `apex` must be a flight state with the leg at
// rest length and zero leg rate (std::invalid_argument otherwise). Failures
// are reported in the result, never thrown.
CycleResult SimulateCycle(const ModelParams& p, const State& apex,
                          const SimulationOptions& options = {});

struct MultiStepResult {
  int steps_completed = 0;
  std::vector<CycleResult> cycles;
  // Trajectory of all cycles with x made continuous across cycles.
  std::vector<TrajectorySample> trajectory;
  std::optional<FailureReason> failure;
};

// Repeats SimulateCycle from each returned apex until a cycle fails or
// max_cycles cycles completed. A step counts when its touchdown led into a
// stance phase.
MultiStepResult SimulateSteps(const ModelParams& p, const State& apex,
                              int max_cycles,
                              const SimulationOptions& options = {});

}  // namespace hopper

#endif  // HOPPER_SIMULATOR_H_
