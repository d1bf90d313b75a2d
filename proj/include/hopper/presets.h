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


// Built-in model configurations and gait search seeds.
//
// chls: centered hip, linear hip spring, Kh = 10 N*m/rad.
// chcs: centered hip, cubic hip spring, Kh = 19.98 N*m/rad^3.
// utls: upright trunk (d = 0.2 m), linear hip spring, Kh = 10 N*m/rad.
// utcs: upright trunk, cubic hip spring, Kh = 10 N*m/rad^3.
// utes: upright trunk, exponential hip spring, Kh = 2 N*m.
//
// The remaining parameters are shared: M = 12 kg, l0 = 0.5 m, Jb = 0.5 kg*m^2,
// Jl = 0.11 kg*m^2, Kl = 3000 N/m.

#ifndef HOPPER_PRESETS_H_
#define HOPPER_PRESETS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopper/model.h"
#include "hopper/shooting.h"

namespace hopper {

struct Preset {
  std::string name;
  ModelParams params;
  // Reference apex state with the forward rate pinned. Its angles follow the
  // published tables and may need a convention mapping (see seeds).
  ReducedState guess;
  // Multi-start list: the reference guess first, then a grid.
  std::vector<ReducedState> seeds;
};

// Grid of apex guesses with zero pitch and hip angle and a pinned forward
// rate, ordered with z outermost and hip rate innermost.
struct GuessGrid {
  std::vector<double> z;
  std::vector<double> pitch_rate;
  std::vector<double> hip_rate;
  double velocity = 5.0;

  std::vector<ReducedState> Expand() const;
};

// chls, chcs, utls, utcs, utes.
const std::vector<std::string>& PresetNames();

// Throws std::invalid_argument for an unknown name.
Preset GetPreset(std::string_view name);

// Stiffness values scanned for the upright-trunk linear-spring model.
const std::vector<double>& UtlsStiffnessScan();

// Guess grid used for the upright-trunk linear-spring scan (32 guesses).
GuessGrid UtlsGuessGrid();

// Copy of `seeds` with the forward rate set to `velocity` and pinned.
std::vector<ReducedState> WithVelocity(std::vector<ReducedState> seeds,
                                       double velocity);

}  // namespace hopper

#endif  // HOPPER_PRESETS_H_
