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

#include "hopper/shooting.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "hopper/linalg.h"

namespace hopper {
namespace {

std::vector<int> FreeIndices(const PinMask& pinned) {
  std::vector<int> idx;
  for (int i = 0; i < 6; ++i) {
    if (!pinned[i]) idx.push_back(i);
  }
  return idx;
}

double FreeNorm(const Vec6& f, const std::vector<int>& free) {
  double n = 0.0;
  for (int i : free) n = std::max(n, std::abs(f[i]));
  return n;
}

struct Evaluation {
  Vec6 image;
  double residual;
};

std::optional<Evaluation> TryEvaluate(const ModelParams& p, const Vec6& x,
                                      const std::vector<int>& free,
                                      const SimulationOptions& sim,
                                      std::string* detail) {
  try {
    const Vec6 image = PoincareMap(p, x, sim);
    return Evaluation{image, FreeNorm(image - x, free)};
  } catch (const MapUndefinedError& e) {
    if (detail) *detail = e.what();
    return std::nullopt;
  }
}

}  // namespace

const char* ReducedName(int index) {
  static constexpr const char* kNames[6] = {"z",     "pitch",      "hip",
                                            "x_rate", "pitch_rate", "hip_rate"};
  return (index >= 0 && index < 6) ? kNames[index] : "?";
}

int ReducedState::free_count() const {
  return static_cast<int>(std::count(pinned.begin(), pinned.end(), false));
}

State EmbedApex(const ModelParams& p, const Vec6& r) {
  State s;
  s.q << 0.0, r[kApexZ], r[kApexPitch], r[kApexHip], p.rest_leg_length;
  s.qd << r[kApexXRate], 0.0, r[kApexPitchRate], r[kApexHipRate], 0.0;
  s.phase = Phase::kFlight;
  s.t = 0.0;
  return s;
}

Vec6 ProjectApex(const State& apex) {
  Vec6 r;
  r << apex.q[kZ], apex.q[kPitch], apex.q[kHip], apex.qd[kX],
      apex.qd[kPitch], apex.qd[kHip];
  return r;
}

CycleResult PoincareCycle(const ModelParams& p, const Vec6& x,
                          const SimulationOptions& options) {
  if (!x.allFinite()) {
    throw MapUndefinedError(FailureReason::kNoTouchdown,
                            "reduced state is not finite");
  }
  CycleResult cycle = SimulateCycle(p, EmbedApex(p, x), options);
  if (!cycle.completed()) {
    throw MapUndefinedError(*cycle.failure, cycle.failure_detail);
  }
  return cycle;
}

Vec6 PoincareMap(const ModelParams& p, const Vec6& x,
                 const SimulationOptions& options) {
  SimulationOptions quiet = options;
  quiet.sample_interval = 0.0;
  return ProjectApex(PoincareCycle(p, x, quiet).end);
}

Mat6 Monodromy(const ModelParams& p, const Vec6& x, const MonodromyOptions& fd,
               const SimulationOptions& options,
               const std::optional<Vec6>& base) {
  if (!(fd.epsilon > 0.0)) {
    throw std::invalid_argument("Monodromy: epsilon must be positive");
  }
  Vec6 center;
  if (!fd.central) center = base ? *base : PoincareMap(p, x, options);
  Mat6 dp;
  for (int j = 0; j < 6; ++j) {
    Vec6 step = Vec6::Zero();
    step[j] = fd.epsilon;
    try {
      if (fd.central) {
        dp.col(j) = (PoincareMap(p, x + step, options) -
                     PoincareMap(p, x - step, options)) /
                    (2.0 * fd.epsilon);
      } else {
        dp.col(j) = (PoincareMap(p, x + step, options) - center) / fd.epsilon;
      }
    } catch (const MapUndefinedError& e) {
      throw MonodromyFailedError(j, e.what());
    }
  }
  return dp;
}

StabilityReport ClassifyStability(
    const std::vector<std::complex<double>>& eigenvalues, double tol_unit) {
  StabilityReport report;
  for (const auto& ev : eigenvalues) report.magnitudes.push_back(std::abs(ev));
  std::sort(report.magnitudes.begin(), report.magnitudes.end(),
            std::greater<>());
  report.stable = report.magnitudes.empty() ||
                  report.magnitudes.front() <= 1.0 + tol_unit;
  return report;
}

void NewtonOptions::Validate() const {
  if (!(relaxation > 0.0 && relaxation <= 1.0)) {
    throw std::invalid_argument("relaxation must be in (0, 1]");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (max_iterations < 0) {
    throw std::invalid_argument("max_iterations must be >= 0");
  }
  if (max_halvings < 0) {
    throw std::invalid_argument("max_halvings must be >= 0");
  }
  if (!(fd.epsilon > 0.0)) {
    throw std::invalid_argument("fd epsilon must be positive");
  }
  simulation.integrator.Validate();
}

std::string_view ToString(SearchStatus status) {
  switch (status) {
    case SearchStatus::kConverged:
      return "converged";
    case SearchStatus::kMaxIterations:
      return "max_iterations";
    case SearchStatus::kMapUndefined:
      return "map_undefined";
    case SearchStatus::kSingularJacobian:
      return "singular_jacobian";
    case SearchStatus::kMonodromyFailed:
      return "monodromy_failed";
  }
  return "unknown";
}

SearchResult NewtonSearch(const ModelParams& p, const ReducedState& guess,
                          const NewtonOptions& options) {
  options.Validate();
  const std::vector<int> free = FreeIndices(guess.pinned);
  const int n = static_cast<int>(free.size());
  SimulationOptions sim = options.simulation;
  sim.sample_interval = 0.0;

  SearchResult result;
  Vec6 x = guess.values;
  result.last_iterate = x;

  std::string detail;
  std::optional<Evaluation> current = TryEvaluate(p, x, free, sim, &detail);
  if (!current) {
    result.status = SearchStatus::kMapUndefined;
    result.detail = detail;
    return result;
  }
  result.residual_history.push_back(current->residual);

  int k = 0;
  while (current->residual >= options.tolerance) {
    if (k >= options.max_iterations) {
      result.status = SearchStatus::kMaxIterations;
      result.iterations = k;
      result.detail = "residual " + std::to_string(current->residual) +
                      " after " + std::to_string(k) + " iterations";
      return result;
    }
    Mat6 dp;
    try {
      dp = Monodromy(p, x, options.fd, sim, current->image);
    } catch (const MonodromyFailedError& e) {
      result.status = SearchStatus::kMonodromyFailed;
      result.iterations = k;
      result.detail = e.what();
      return result;
    }
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) = (free[r] == free[c] ? 1.0 : 0.0) - dp(free[r], free[c]);
      }
      b[r] = current->image[free[r]] - x[free[r]];
    }
    Vec6 dx = Vec6::Zero();
    try {
      const Eigen::VectorXd sol = LuSolve(a, b);
      for (int r = 0; r < n; ++r) dx[free[r]] = sol[r];
    } catch (const SingularMatrixError& e) {
      result.status = SearchStatus::kSingularJacobian;
      result.iterations = k;
      result.detail = e.what();
      return result;
    }

    // Relaxed step with halving.
    double rho = options.relaxation;
    std::optional<std::pair<Vec6, Evaluation>> accepted;
    std::optional<std::pair<Vec6, Evaluation>> shortest;
    for (int h = 0; h <= options.max_halvings; ++h, rho *= 0.5) {
      const Vec6 trial = x + rho * dx;
      std::optional<Evaluation> eval = TryEvaluate(p, trial, free, sim, &detail);
      if (!eval) continue;
      shortest = {trial, *eval};
      if (eval->residual < current->residual) {
        accepted = shortest;
        break;
      }
    }
    if (!accepted) accepted = shortest;
    ++k;
    if (!accepted) {
      result.status = SearchStatus::kMapUndefined;
      result.iterations = k;
      result.detail = detail;
      return result;
    }
    x = accepted->first;
    current = accepted->second;
    result.last_iterate = x;
    result.residual_history.push_back(current->residual);
  }
  result.iterations = k;

  LimitCycle lc;
  lc.fixed_point.values = x;
  lc.fixed_point.pinned = guess.pinned;
  lc.apex = EmbedApex(p, x);
  lc.iterations = k;
  lc.residual = current->residual;
  lc.full_residual = (current->image - x).cwiseAbs().maxCoeff();
  try {
    lc.monodromy = Monodromy(p, x, options.fd, sim, current->image);
  } catch (const MonodromyFailedError& e) {
    result.status = SearchStatus::kMonodromyFailed;
    result.detail = e.what();
    return result;
  }
  try {
    lc.eigenvalues = Eigenvalues(lc.monodromy);
  } catch (const EigenvalueError& e) {
    result.status = SearchStatus::kMonodromyFailed;
    result.detail = e.what();
    return result;
  }
  lc.stable = ClassifyStability(lc.eigenvalues, options.tol_unit).stable;
  lc.cycle = PoincareCycle(p, x, options.simulation);
  result.status = SearchStatus::kConverged;
  result.cycle = std::move(lc);
  return result;
}

MultiStartResult MultiStartSearch(const ModelParams& p,
                                  const std::vector<ReducedState>& seeds,
                                  const NewtonOptions& options) {
  if (seeds.empty()) {
    throw std::invalid_argument("MultiStartSearch: no seeds");
  }
  auto final_residual = [](const SearchResult& r) {
    return r.residual_history.empty()
               ? std::numeric_limits<double>::infinity()
               : r.residual_history.back();
  };
  MultiStartResult out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SearchResult r = NewtonSearch(p, seeds[i], options);
    ++out.attempts;
    const bool better = out.seed_index < 0 || r.converged() ||
                        final_residual(r) < final_residual(out.best);
    if (better) {
      out.best = std::move(r);
      out.seed_index = static_cast<int>(i);
    }
    if (out.best.converged()) break;
  }
  return out;
}

std::vector<SweepPoint> ContinuationSweep(const ModelParams& p,
                                          const LimitCycle& seed,
                                          double v_from, double v_to,
                                          double dv,
                                          const SweepOptions& options) {
  if (!(dv > 0.0)) {
    throw std::invalid_argument("ContinuationSweep: dv must be positive");
  }
  if (!(v_from <= v_to)) {
    throw std::invalid_argument("ContinuationSweep: v_from must be <= v_to");
  }
  const double v_seed = seed.fixed_point.values[kApexXRate];
  std::vector<SweepPoint> points;
  SweepPoint seed_point;
  seed_point.velocity = v_seed;
  seed_point.search.status = SearchStatus::kConverged;
  seed_point.search.cycle = seed;
  seed_point.search.last_iterate = seed.fixed_point.values;
  seed_point.search.iterations = seed.iterations;
  seed_point.search.residual_history = {seed.residual};
  points.push_back(seed_point);

  for (const double direction : {1.0, -1.0}) {
    Vec6 warm = seed.fixed_point.values;
    std::optional<Vec6> previous;
    // Integer step counts keep the velocity grid free of accumulated error.
    for (int i = 1;; ++i) {
      const double v = v_seed + direction * i * dv;
      if (v > v_to + 1e-12 || v < v_from - 1e-12) break;
      ReducedState guess;
      guess.values = warm;
      if (options.secant_predictor && previous) {
        guess.values += warm - *previous;
      }
      guess.values[kApexXRate] = v;
      guess.pinned = seed.fixed_point.pinned;
      guess.pinned[kApexXRate] = true;
      SweepPoint point;
      point.velocity = v;
      point.search = NewtonSearch(p, guess, options.newton);
      const bool ok = point.search.converged();
      if (ok) {
        previous = warm;
        warm = point.search.cycle->fixed_point.values;
      }
      points.push_back(std::move(point));
      if (!ok) break;
    }
  }
  std::sort(points.begin(), points.end(),
            [](const SweepPoint& a, const SweepPoint& b) {
              return a.velocity < b.velocity;
            });
  return points;
}

}  // namespace hopper
