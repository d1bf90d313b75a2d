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


// Experiment configuration: a preset, optionally overridden by a YAML file
// and command-line flags.
//
//   model:
//     preset: utcs                # chls, chcs, utls, utcs, utes
//     variant: upright-trunk      # or centered-hip (sets hip_offset 0.2 / 0)
//     spring_law: cubic           # linear, cubic, exponential
//     params: {total_mass: 12, rest_leg_length: 0.5, trunk_inertia: 0.5,
//              leg_inertia: 0.11, hip_offset: 0.2, leg_stiffness: 3000,
//              hip_stiffness: 10, hip_rest_angle: 0, gravity: 9.81}
//   guess: {z: 1.0, pitch: 0, hip: 0, x_rate: 5, pitch_rate: -0.6,
//           hip_rate: 6.8, pinned: [x_rate]}
//   velocity: 5.0                 # pins x_rate
//   solver: {relaxation: 1, tolerance: 1e-8, max_iterations: 50,
//            max_halvings: 4, epsilon: 1e-6, central_differences: false,
//            tol_unit: 1e-2, multi_start: true}
//   simulation: {max_steps: 10, sample_interval: 1e-3, min_com_height: 0.05,
//                reject_negative_initial_grf: false,
//                integrator: {method: dop853, abs_tol: 1e-10, rel_tol: 1e-8,
//                             initial_step: 1e-4, max_step: 1e-2,
//                             event_tol: 1e-12, max_time: 5}}
//   sweep: {from: 4, to: 7, step: 0.25, secant_predictor: true}
//   output: {dir: out}
//
// Every key is optional. Unknown keys are errors.

#ifndef HOPPER_CONFIG_H_
#define HOPPER_CONFIG_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopper/model.h"
#include "hopper/shooting.h"
#include "hopper/simulator.h"

namespace hopper {

// Bad configuration. `key()` is the dotted path of the offending entry, or
// empty when the problem is not tied to one key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct SweepRange {
  double from = 4.0;  // m/s
  double to = 7.0;    // m/s
  double step = 0.25;
  bool secant_predictor = true;
};

struct ExperimentConfig {
  std::string preset;  // empty when none was named
  ModelParams params;
  // Search seeds; the first one is the simulation start state.
  std::vector<ReducedState> seeds;
  std::optional<double> velocity;
  NewtonOptions solver;
  // Run every seed until one converges instead of only the first.
  bool multi_start = true;
  SimulationOptions simulation;
  int max_steps = 10;
  SweepRange sweep;
  std::string out_dir = ".";

  const ReducedState& guess() const { return seeds.front(); }
};

// Configuration of a preset with its seeds. Throws ConfigError (key "preset").
ExperimentConfig PresetConfig(const std::string& name);

// Applies the YAML document in `text` on top of `base`. A model.preset entry
// replaces `base` with that preset before the other keys are applied.
// Throws ConfigError.
ExperimentConfig ApplyConfigText(const std::string& text,
                                 ExperimentConfig base);

// Reads and applies a YAML file. Throws ConfigError.
ExperimentConfig ApplyConfigFile(const std::string& path,
                                 ExperimentConfig base);

// Replaces the seeds with `guess`.
void SetGuess(ExperimentConfig& config, const ReducedState& guess);

// Sets and pins the forward rate of every seed.
void PinVelocity(ExperimentConfig& config, double velocity);

// Checks parameter and solver invariants. Throws ConfigError.
void ValidateConfig(const ExperimentConfig& config);

}  // namespace hopper

#endif  // HOPPER_CONFIG_H_
