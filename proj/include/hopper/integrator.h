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

// Explicit embedded Runge-Kutta integration (Dormand-Prince 8(5,3) or 5(4))
// with step-size control, dense output, and event localization on the dense
// output.

#ifndef HOPPER_INTEGRATOR_H_
#define HOPPER_INTEGRATOR_H_

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace hopper {

// Dynamic size, stored inline; the hopper state has 10 entries.
using OdeVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 16, 1>;

using VectorField = std::function<OdeVector(double t, const OdeVector& x)>;
using EventFunction = std::function<double(double t, const OdeVector& x)>;

enum class IntegratorMethod {
  kDop853,  // order 8, 7th-degree dense output
  kDopri5,  // order 5, 4th-degree dense output
};

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::kDop853;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double initial_step = 1e-4;  // s
  double max_step = 1e-2;      // s
  double event_tol = 1e-12;    // on the event function value
  double max_time = 5.0;       // s, measured from the start time
  long max_steps = 10'000'000;

  // Throws std::invalid_argument for non-positive entries.
  void Validate() const;
};

enum class Crossing { kRising, kFalling, kAny };

struct EventSpec {
  EventFunction function;
  Crossing direction = Crossing::kAny;
  bool terminal = true;
};

struct OdeSample {
  double t;
  OdeVector x;
};

struct EventHit {
  int event;  // index into the event list
  double t;
  OdeVector x;
};

struct IntegrationResult {
  std::vector<OdeSample> samples;
  // Non-terminal hits in time order.
  std::vector<EventHit> passed_events;
  std::optional<EventHit> terminal_event;
  double t_end = 0.0;
  OdeVector x_end;
  long steps = 0;
};

// Reached max_time without a terminal event.
class NoEventError : public std::runtime_error {
 public:
  NoEventError(const std::string& what, double t, OdeVector x)
      : std::runtime_error(what), t_(t), x_(std::move(x)) {}
  double t() const { return t_; }
  const OdeVector& x() const { return x_; }

 private:
  double t_;
  OdeVector x_;
};

// Step size fell below the floating-point resolution of t, or the step
// budget ran out.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrates x' = f(t, x) from (t0, x0) until the first terminal event in time
// or until t0 + max_time. When `sample_interval` > 0 the trajectory is sampled
// on the grid t0 + k * sample_interval from dense output; the start point and
// the end point are always included.
//
// A crossing is detected when the event function changes sign across an
// accepted step in the requested direction (a start value of exactly zero
// does not count). The crossing time is then refined on the dense output
// until |g| <= event_tol or the bracket is narrower than 1e-13 s.
IntegrationResult IntegrateAdaptive(const VectorField& f, const OdeVector& x0,
                                    double t0, const IntegratorConfig& config,
                                    const std::vector<EventSpec>& events = {},
                                    double sample_interval = 0.0);

}  // namespace hopper

#endif  // HOPPER_INTEGRATOR_H_
