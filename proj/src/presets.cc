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


#include "hopper/presets.h"

#include <stdexcept>

namespace hopper {
namespace {

constexpr double kVelocity = 5.0;  // m/s

ReducedState Pinned(double z, double pitch, double hip, double pitch_rate,
                    double hip_rate) {
  ReducedState s;
  s.values << z, pitch, hip, kVelocity, pitch_rate, hip_rate;
  s.pinned[kApexXRate] = true;
  return s;
}

ModelParams Params(double hip_offset, SpringLaw law, double hip_stiffness) {
  ModelParams p;
  p.hip_offset = hip_offset;
  p.spring_law = law;
  p.hip_stiffness = hip_stiffness;
  return p;
}

std::vector<ReducedState> Concat(ReducedState first,
                                 const std::vector<ReducedState>& rest) {
  std::vector<ReducedState> out{std::move(first)};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

std::vector<ReducedState> GuessGrid::Expand() const {
  std::vector<ReducedState> out;
  out.reserve(z.size() * pitch_rate.size() * hip_rate.size());
  for (double zi : z) {
    for (double td : pitch_rate) {
      for (double pd : hip_rate) {
        ReducedState s;
        s.values << zi, 0.0, 0.0, velocity, td, pd;
        s.pinned[kApexXRate] = true;
        out.push_back(s);
      }
    }
  }
  return out;
}

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = {"chls", "chcs", "utls",
                                                 "utcs", "utes"};
  return names;
}

const std::vector<double>& UtlsStiffnessScan() {
  static const std::vector<double> values = {1, 2, 5, 10, 20, 50, 100};
  return values;
}

GuessGrid UtlsGuessGrid() {
  return {{0.6, 0.8, 1.0, 1.2}, {-1.5, -0.5}, {5.0, 7.0, 9.0, 11.0},
          kVelocity};
}

Preset GetPreset(std::string_view name) {
  Preset preset;
  preset.name = std::string(name);
  if (name == "chls") {
    preset.params = Params(0.0, SpringLaw::kLinear, 10.0);
    preset.guess = Pinned(0.6371, 9.905e-8, -1.119e-7, -1.780, 10.45);
    preset.seeds = {preset.guess};
  } else if (name == "chcs") {
    preset.params = Params(0.0, SpringLaw::kCubic, 19.98);
    preset.guess = Pinned(0.5793, 1.752e-6, -8.053e-7, -1.589, 9.445);
    const GuessGrid grid{{0.5, 0.55, 0.6}, {-1.2, -1.6}, {8.0, 9.5, 11.0},
                         kVelocity};
    preset.seeds = Concat(preset.guess, grid.Expand());
  } else if (name == "utls") {
    // No published cycle exists; the guess is the first grid point.
    preset.params = Params(0.2, SpringLaw::kLinear, 10.0);
    preset.seeds = UtlsGuessGrid().Expand();
    preset.guess = preset.seeds.front();
  } else if (name == "utcs") {
    preset.params = Params(0.2, SpringLaw::kCubic, 10.0);
    preset.guess = Pinned(1.0, 6.459e-6, 5.892e-6, -0.5869, 6.836);
    preset.seeds = {preset.guess};
  } else if (name == "utes") {
    preset.params = Params(0.2, SpringLaw::kExponential, 2.0);
    // Published angles are near pi; with upright pitch measured from the
    // vertical they map to about zero, which the grid covers.
    preset.guess = Pinned(1.244, 3.339, 3.324, -0.5384, 6.389);
    const GuessGrid grid{{0.9, 1.0, 1.1, 1.2, 1.3}, {-0.5, -1.0},
                         {5.0, 6.5, 8.0}, kVelocity};
    preset.seeds = Concat(preset.guess, grid.Expand());
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected chls, chcs, utls, utcs, utes)");
  }
  return preset;
}

std::vector<ReducedState> WithVelocity(std::vector<ReducedState> seeds,
                                       double velocity) {
  for (ReducedState& s : seeds) {
    s.values[kApexXRate] = velocity;
    s.pinned[kApexXRate] = true;
  }
  return seeds;
}

}  // namespace hopper
