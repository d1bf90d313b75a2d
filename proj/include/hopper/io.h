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


// Result files: trajectory CSV, JSON reports, sweep CSV and the analysis
// outputs derived from a trajectory.

#ifndef HOPPER_IO_H_
#define HOPPER_IO_H_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopper/analysis.h"
#include "hopper/model.h"
#include "hopper/shooting.h"
#include "hopper/simulator.h"

namespace hopper {

// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trajectory CSV columns:
//   t, cycle, phase, x, z, pitch, hip, leg, x_rate, z_rate, pitch_rate,
//   hip_rate, leg_rate, foot_x, foot_z, grf_x, grf_z, kinetic, gravity,
//   leg_spring, hip_spring, total
const std::vector<std::string>& TrajectoryColumns();

struct TrajectoryRow {
  double t = 0.0;
  int cycle = 0;
  Phase phase = Phase::kFlight;
  Vec5 q = Vec5::Zero();
  Vec5 qd = Vec5::Zero();
  Vec2 foot = Vec2::Zero();
  Vec2 grf = Vec2::Zero();  // zero in flight
  EnergyBreakdown energy;
};

// One row per recorded sample; x is continuous across cycles.
std::vector<TrajectoryRow> TrajectoryRows(const ModelParams& p,
                                          const MultiStepResult& run);

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<TrajectoryRow>& rows);

// Throws ParseError naming the line of the first problem.
std::vector<TrajectoryRow> ReadTrajectoryCsv(std::istream& in);

// Apex state as [x, z, pitch, hip, leg, x_rate, z_rate, pitch_rate, hip_rate,
// leg_rate].
std::vector<double> FullApexVector(const State& apex);

nlohmann::json ParamsJson(const ModelParams& p);
nlohmann::json ReducedJson(const Vec6& x);
nlohmann::json PinnedJson(const PinMask& pinned);

// Summary of a multi-step simulation.
nlohmann::json SimulationSummaryJson(const ModelParams& p,
                                     const std::string& preset,
                                     const ReducedState& start, int max_steps,
                                     const MultiStepResult& run);

// Gait search report. Converged results carry the fixed point, monodromy and
// eigenvalues; all results carry the residual history.
nlohmann::json LimitCycleJson(const ModelParams& p, const std::string& preset,
                              const SearchResult& search, int seed_index,
                              int attempts);

// Reads a search seed from a gait search report (fixed point, or the last
// iterate if it did not converge) or from a flat object of reduced
// coordinates with an optional "pinned" list. Throws ParseError.
ReducedState ReadSeedGuess(std::istream& in);

// Sweep CSV columns:
//   velocity, converged, status, iterations, residual, max_abs_eigenvalue,
//   stable, z, pitch, hip, x_rate, pitch_rate, hip_rate
void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points);

// Analysis outputs computed from trajectory rows.
//   grf_fan.csv:        t, cycle, origin_x, origin_z, force_x, force_z
//                       (stance rows, CoM frame, scaled by the cycle peak)
//   energy.csv:         t, cycle, phase, kinetic, gravity, leg_spring,
//                       hip_spring, total (one row per sample)
//   phase_portrait.csv: t, cycle, pitch, pitch_rate, hip, hip_rate
void WriteGrfFanCsv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
void WriteEnergyCsv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
void WritePhasePortraitCsv(std::ostream& out,
                           const std::vector<TrajectoryRow>& rows);

// Stance force samples of one cycle, or of all cycles for cycle < 0.
std::vector<GrfSample> StanceSamples(const std::vector<TrajectoryRow>& rows,
                                     int cycle);

nlohmann::json VppJson(const VppEstimate& estimate);

// Per-cycle estimates and the estimate pooled over all stance samples.
nlohmann::json VppReportJson(const std::vector<TrajectoryRow>& rows);

}  // namespace hopper

#endif  // HOPPER_IO_H_
