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

// Periodic gait search on the apex section.
//
// The apex state is reduced to [z, pitch, hip, x-rate, pitch-rate, hip-rate]:
// x is cyclic, z-rate is zero at apex and the leg is at rest in flight. The
// Poincare map P sends a reduced apex state to the next one, and a gait is a
// solution of F(x) = P(x) - x = 0, found with a relaxed Newton iteration on a
// finite-difference Jacobian.

#ifndef HOPPER_SHOOTING_H_
#define HOPPER_SHOOTING_H_

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hopper/model.h"
#include "hopper/simulator.h"

namespace hopper {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

enum ReducedIndex : int {
  kApexZ = 0,
  kApexPitch = 1,
  kApexHip = 2,
  kApexXRate = 3,
  kApexPitchRate = 4,
  kApexHipRate = 5,
};

// Names used in reports and files: z, pitch, hip, x_rate, pitch_rate, hip_rate.
const char* ReducedName(int index);

using PinMask = std::array<bool, 6>;

struct ReducedState {
  Vec6 values = Vec6::Zero();
  PinMask pinned{};  // pinned entries are held fixed by the search

  int free_count() const;
};

// Apex state with x = 0, z-rate = 0, leg at rest, t = 0.
State EmbedApex(const ModelParams& p, const Vec6& reduced);
Vec6 ProjectApex(const State& apex);

// The Poincare map is undefined where the cycle fails.
class MapUndefinedError : public std::runtime_error {
 public:
  MapUndefinedError(FailureReason reason, const std::string& detail)
      : std::runtime_error("Poincare map undefined: " +
                           std::string(ToString(reason)) + ": " + detail),
        reason_(reason) {}
  FailureReason reason() const { return reason_; }

 private:
  FailureReason reason_;
};

// A perturbed map evaluation failed while differencing.
class MonodromyFailedError : public std::runtime_error {
 public:
  MonodromyFailedError(int coordinate, const std::string& detail)
      : std::runtime_error(std::string("monodromy failed perturbing ") +
                           ReducedName(coordinate) + ": " + detail),
        coordinate_(coordinate) {}
  int coordinate() const { return coordinate_; }

 private:
  int coordinate_;
};

// Throws MapUndefinedError.
Vec6 PoincareMap(const ModelParams& p, const Vec6& x,
                 const SimulationOptions& options = {});

// Like PoincareMap but keeps the whole cycle record.
CycleResult PoincareCycle(const ModelParams& p, const Vec6& x,
                          const SimulationOptions& options = {});

struct MonodromyOptions {
  double epsilon = 1e-6;
  bool central = false;  // forward differences otherwise
};

// Finite-difference Jacobian of P at x, all six columns. `base` may carry a
// known P(x) to save one map evaluation with forward differences. Throws
// MapUndefinedError if P(x) itself fails, MonodromyFailedError otherwise.
Mat6 Monodromy(const ModelParams& p, const Vec6& x,
               const MonodromyOptions& fd = {},
               const SimulationOptions& options = {},
               const std::optional<Vec6>& base = std::nullopt);

struct StabilityReport {
  bool stable = false;
  std::vector<double> magnitudes;  // descending
};

// Unstable iff some |lambda| > 1 + tol_unit.
StabilityReport ClassifyStability(
    const std::vector<std::complex<double>>& eigenvalues,
    double tol_unit = 1e-2);

struct LimitCycle {
  ReducedState fixed_point;
  State apex;
  Mat6 monodromy = Mat6::Zero();
  std::vector<std::complex<double>> eigenvalues;  // by descending magnitude
  bool stable = false;
  int iterations = 0;
  double residual = 0.0;       // max norm of F over free entries
  double full_residual = 0.0;  // max norm of F over all entries
  CycleResult cycle;           // one period from the fixed point
};

struct NewtonOptions {
  double relaxation = 1.0;  // rho in x += rho * dx
  double tolerance = 1e-8;
  int max_iterations = 50;
  int max_halvings = 4;
  MonodromyOptions fd;
  double tol_unit = 1e-2;
  SimulationOptions simulation;

  // Throws std::invalid_argument.
  void Validate() const;
};

enum class SearchStatus {
  kConverged,
  kMaxIterations,
  kMapUndefined,
  kSingularJacobian,
  kMonodromyFailed,
};

std::string_view ToString(SearchStatus status);

struct SearchResult {
  SearchStatus status = SearchStatus::kMaxIterations;
  std::optional<LimitCycle> cycle;  // set iff converged
  Vec6 last_iterate = Vec6::Zero();
  std::vector<double> residual_history;  // one entry per evaluated iterate
  int iterations = 0;
  std::string detail;

  bool converged() const { return status == SearchStatus::kConverged; }
};

// Solves F(x) = 0 over the free entries of `guess`. Each Newton step solves
//   [I - DP(x_k)] dx = P(x_k) - x_k
// on the free rows and columns and tries rho * dx, halving the step while the
// residual does not decrease (at most max_halvings times, after which the
// shortest step is taken). The monodromy of the solution is recomputed there.
SearchResult NewtonSearch(const ModelParams& p, const ReducedState& guess,
                          const NewtonOptions& options = {});

struct MultiStartResult {
  // First converged search, otherwise the attempt with the smallest final
  // residual (attempts that never mapped count as infinite residual).
  SearchResult best;
  int seed_index = -1;  // index of `best` in the seed list
  int attempts = 0;
};

// Runs NewtonSearch from each seed in order and stops at the first that
// converges. Throws std::invalid_argument for an empty seed list.
MultiStartResult MultiStartSearch(const ModelParams& p,
                                  const std::vector<ReducedState>& seeds,
                                  const NewtonOptions& options = {});

struct SweepPoint {
  double velocity = 0.0;
  SearchResult search;
};

struct SweepOptions {
  // Guess each new point by linear extrapolation through the two previous
  // fixed points instead of reusing the last one.
  bool secant_predictor = true;
  NewtonOptions newton;
};

// Steps the pinned x-rate from the seed velocity up to v_to and down to
// v_from in increments of dv, warm-starting from the previous fixed points.
// A direction ends at its first failed search. Points are sorted by velocity;
// the seed is included.
std::vector<SweepPoint> ContinuationSweep(const ModelParams& p,
                                          const LimitCycle& seed,
                                          double v_from, double v_to,
                                          double dv,
                                          const SweepOptions& options = {});

}  // namespace hopper

#endif  // HOPPER_SHOOTING_H_
