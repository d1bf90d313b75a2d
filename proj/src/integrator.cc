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

#include "hopper/integrator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hopper {
namespace {

#include "dop853_tableau.inc"

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
// Continuous extension.
constexpr double kD1 = -12715105075.0 / 11282082432.0,
                 kD3 = 87487479700.0 / 32700410799.0,
                 kD4 = -10690763975.0 / 1880347072.0,
                 kD5 = 701980252875.0 / 199316789632.0,
                 kD6 = -1453857185.0 / 822651844.0,
                 kD7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kMinEventBracket = 1e-13;  // s
constexpr int kMaxEventIterations = 200;

// Interpolant over one accepted step [t0, t0 + h]:
//   y(t0 + s h) = y0 + s (F0 + (1 - s) (F1 + s (F2 + (1 - s) (F3 + ...))))
class DenseStep {
 public:
  DenseStep(double t0, double h, OdeVector y0, std::vector<OdeVector> f)
      : t0_(t0), h_(h), y0_(std::move(y0)), f_(std::move(f)) {}

  OdeVector operator()(double t) const {
    const double s = h_ == 0.0 ? 1.0 : (t - t0_) / h_;
    OdeVector y = f_.back();
    for (int i = static_cast<int>(f_.size()) - 2; i >= 0; --i) {
      // Factor applied to the term above F_i alternates with its parity.
      y = f_[i] + ((i % 2 == 0) ? (1.0 - s) : s) * y;
    }
    return y0_ + s * y;
  }

 private:
  double t0_, h_;
  OdeVector y0_;
  std::vector<OdeVector> f_;
};

// Scaled max-norm of an error vector.
double ScaledNorm(const OdeVector& err, const OdeVector& y0,
                  const OdeVector& y1, const IntegratorConfig& config) {
  double norm = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale =
        config.abs_tol +
        config.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    norm = std::max(norm, std::abs(err[i]) / scale);
  }
  return norm;
}

// One attempted step. `k` holds the stage derivatives, k[0] = f(t, y) on
// entry; on return the last used entry is f(t + h, y_new).
struct Method {
  virtual ~Method() = default;
  virtual int error_order() const = 0;  // exponent base for step control
  virtual int stages() const = 0;       // entries of k used by Attempt
  virtual double Attempt(const VectorField& f, double t, const OdeVector& y,
                         double h, std::vector<OdeVector>& k,
                         OdeVector* y_new,
                         const IntegratorConfig& config) const = 0;
  virtual DenseStep Dense(const VectorField& f, double t, const OdeVector& y,
                          double h, const OdeVector& y_new,
                          std::vector<OdeVector>& k) const = 0;
};

struct Dopri5 final : Method {
  int error_order() const override { return 5; }
  int stages() const override { return 7; }

  double Attempt(const VectorField& f, double t, const OdeVector& y, double h,
                 std::vector<OdeVector>& k, OdeVector* y_new,
                 const IntegratorConfig& config) const override {
    k[1] = f(t + kC2 * h, y + h * kA21 * k[0]);
    k[2] = f(t + kC3 * h, y + h * (kA31 * k[0] + kA32 * k[1]));
    k[3] = f(t + kC4 * h, y + h * (kA41 * k[0] + kA42 * k[1] + kA43 * k[2]));
    k[4] = f(t + kC5 * h, y + h * (kA51 * k[0] + kA52 * k[1] + kA53 * k[2] +
                                   kA54 * k[3]));
    k[5] = f(t + h, y + h * (kA61 * k[0] + kA62 * k[1] + kA63 * k[2] +
                             kA64 * k[3] + kA65 * k[4]));
    *y_new = y + h * (kA71 * k[0] + kA73 * k[2] + kA74 * k[3] + kA75 * k[4] +
                      kA76 * k[5]);
    k[6] = f(t + h, *y_new);
    const OdeVector err = h * (kE1 * k[0] + kE3 * k[2] + kE4 * k[3] +
                               kE5 * k[4] + kE6 * k[5] + kE7 * k[6]);
    return ScaledNorm(err, y, *y_new, config);
  }

  DenseStep Dense(const VectorField&, double t, const OdeVector& y, double h,
                  const OdeVector& y_new,
                  std::vector<OdeVector>& k) const override {
    const OdeVector dy = y_new - y;
    std::vector<OdeVector> coeff(4);
    coeff[0] = dy;
    coeff[1] = h * k[0] - dy;
    coeff[2] = 2.0 * dy - h * (k[6] + k[0]);
    coeff[3] = h * (kD1 * k[0] + kD3 * k[2] + kD4 * k[3] + kD5 * k[4] +
                    kD6 * k[5] + kD7 * k[6]);
    return DenseStep(t, h, y, std::move(coeff));
  }
};

struct Dop853 final : Method {
  int error_order() const override { return 8; }
  int stages() const override { return kDop853Stages + 1; }

  static OdeVector Stage(const VectorField& f, double t, const OdeVector& y,
                         double h, const std::vector<OdeVector>& k, int s) {
    OdeVector dy = OdeVector::Zero(y.size());
    for (int j = 0; j < s; ++j) {
      if (kDop853A[s][j] != 0.0) dy += kDop853A[s][j] * k[j];
    }
    return f(t + kDop853C[s] * h, y + h * dy);
  }

  double Attempt(const VectorField& f, double t, const OdeVector& y, double h,
                 std::vector<OdeVector>& k, OdeVector* y_new,
                 const IntegratorConfig& config) const override {
    for (int s = 1; s < kDop853Stages; ++s) k[s] = Stage(f, t, y, h, k, s);
    OdeVector sum = OdeVector::Zero(y.size());
    for (int j = 0; j < kDop853Stages; ++j) {
      if (kDop853B[j] != 0.0) sum += kDop853B[j] * k[j];
    }
    *y_new = y + h * sum;
    k[kDop853Stages] = f(t + h, *y_new);

    OdeVector err5 = OdeVector::Zero(y.size());
    OdeVector err3 = OdeVector::Zero(y.size());
    for (int j = 0; j <= kDop853Stages; ++j) {
      if (kDop853E5[j] != 0.0) err5 += kDop853E5[j] * k[j];
      if (kDop853E3[j] != 0.0) err3 += kDop853E3[j] * k[j];
    }
    const double n5 = ScaledNorm(h * err5, y, *y_new, config);
    const double n3 = ScaledNorm(h * err3, y, *y_new, config);
    if (n5 == 0.0 && n3 == 0.0) return 0.0;
    // Fifth-order estimate damped by the third-order one.
    return n5 * n5 / std::sqrt(n5 * n5 + 0.01 * n3 * n3);
  }

  DenseStep Dense(const VectorField& f, double t, const OdeVector& y, double h,
                  const OdeVector& y_new,
                  std::vector<OdeVector>& k) const override {
    for (int s = kDop853Stages + 1; s < kDop853StagesExtended; ++s) {
      k[s] = Stage(f, t, y, h, k, s);
    }
    const OdeVector dy = y_new - y;
    std::vector<OdeVector> coeff(kDop853InterpolatorPower);
    coeff[0] = dy;
    coeff[1] = h * k[0] - dy;
    coeff[2] = 2.0 * dy - h * (k[kDop853Stages] + k[0]);
    for (int i = 0; i < kDop853InterpolatorPower - 3; ++i) {
      OdeVector sum = OdeVector::Zero(y.size());
      for (int j = 0; j < kDop853StagesExtended; ++j) {
        if (kDop853D[i][j] != 0.0) sum += kDop853D[i][j] * k[j];
      }
      coeff[3 + i] = h * sum;
    }
    return DenseStep(t, h, y, std::move(coeff));
  }
};

const Method& SelectMethod(IntegratorMethod method) {
  static const Dopri5 dopri5;
  static const Dop853 dop853;
  return method == IntegratorMethod::kDopri5 ? static_cast<const Method&>(dopri5)
                                             : dop853;
}

bool Crossed(Crossing direction, double before, double after) {
  const bool rising = before < 0.0 && after >= 0.0;
  const bool falling = before > 0.0 && after <= 0.0;
  switch (direction) {
    case Crossing::kRising:
      return rising;
    case Crossing::kFalling:
      return falling;
    case Crossing::kAny:
      return rising || falling;
  }
  return false;
}

// Illinois-modified regula falsi on the dense output between ta and tb, where
// g(ta) = ga and g(tb) = gb have opposite signs (gb may be zero).
EventHit LocalizeEvent(int index, const EventSpec& spec, const DenseStep& dense,
                       double ta, double ga, double tb, double gb,
                       const OdeVector& xb, double event_tol) {
  if (gb == 0.0 || std::abs(gb) <= event_tol) return {index, tb, xb};
  double best_t = tb, best_g = gb;
  int stale_side = 0;
  for (int it = 0; it < kMaxEventIterations; ++it) {
    if (tb - ta <= kMinEventBracket) break;
    double tm = (ta * gb - tb * ga) / (gb - ga);
    if (!(tm > ta && tm < tb)) tm = 0.5 * (ta + tb);
    const double gm = spec.function(tm, dense(tm));
    if (std::abs(gm) < std::abs(best_g)) {
      best_t = tm;
      best_g = gm;
    }
    if (std::abs(gm) <= event_tol) break;
    if ((gm > 0.0) == (ga > 0.0)) {
      ta = tm;
      ga = gm;
      if (stale_side == -1) gb *= 0.5;
      stale_side = -1;
    } else {
      tb = tm;
      gb = gm;
      if (stale_side == 1) ga *= 0.5;
      stale_side = 1;
    }
  }
  if (std::abs(best_g) > event_tol) best_t = tb;
  return {index, best_t, dense(best_t)};
}

}  // namespace

void IntegratorConfig::Validate() const {
  auto require_positive = [](double value, const char* name) {
    if (!(value > 0.0)) {
      throw std::invalid_argument(std::string("IntegratorConfig.") + name +
                                  " must be positive");
    }
  };
  require_positive(abs_tol, "abs_tol");
  require_positive(rel_tol, "rel_tol");
  require_positive(initial_step, "initial_step");
  require_positive(max_step, "max_step");
  require_positive(event_tol, "event_tol");
  require_positive(max_time, "max_time");
  if (max_steps <= 0) {
    throw std::invalid_argument("IntegratorConfig.max_steps must be positive");
  }
}

IntegrationResult IntegrateAdaptive(const VectorField& f, const OdeVector& x0,
                                    double t0, const IntegratorConfig& config,
                                    const std::vector<EventSpec>& events,
                                    double sample_interval) {
  config.Validate();
  if (!x0.allFinite()) {
    throw std::invalid_argument("IntegrateAdaptive: initial state not finite");
  }
  const Method& method = SelectMethod(config.method);
  const double exponent = -1.0 / method.error_order();
  const bool any_terminal =
      std::any_of(events.begin(), events.end(),
                  [](const EventSpec& e) { return e.terminal; });
  const double t_final = t0 + config.max_time;

  IntegrationResult result;
  if (sample_interval > 0.0) result.samples.push_back({t0, x0});
  long next_sample = 1;

  std::vector<double> g_prev(events.size());
  for (size_t i = 0; i < events.size(); ++i) {
    g_prev[i] = events[i].function(t0, x0);
  }

  double t = t0;
  OdeVector y = x0;
  std::vector<OdeVector> k(kDop853StagesExtended);
  k[0] = f(t, y);
  double h = std::min(config.initial_step, config.max_step);
  bool last_rejected = false;

  while (true) {
    if (result.steps >= config.max_steps) {
      throw StepSizeError("IntegrateAdaptive: step budget of " +
                          std::to_string(config.max_steps) + " exhausted");
    }
    bool final_step = false;
    if (t + h >= t_final) {
      h = t_final - t;
      final_step = true;
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(t));
    if (h < min_step && !final_step) {
      throw StepSizeError("IntegrateAdaptive: step size underflow at t = " +
                          std::to_string(t));
    }

    OdeVector y_new;
    const double err_norm = method.Attempt(f, t, y, h, k, &y_new, config);
    ++result.steps;
    if (!std::isfinite(err_norm) || err_norm > 1.0) {
      const double factor =
          std::isfinite(err_norm)
              ? std::max(kMinFactor, kSafety * std::pow(err_norm, exponent))
              : kMinFactor;
      h *= std::min(factor, 1.0);
      last_rejected = true;
      continue;
    }

    const double t_new = final_step ? t_final : t + h;
    std::optional<DenseStep> dense;
    auto interpolant = [&]() -> const DenseStep& {
      if (!dense) dense = method.Dense(f, t, y, h, y_new, k);
      return *dense;
    };

    // Earliest terminal crossing in this step, plus non-terminal ones.
    std::optional<EventHit> terminal;
    std::vector<EventHit> passed;
    std::vector<double> g_new(events.size());
    for (size_t i = 0; i < events.size(); ++i) {
      g_new[i] = events[i].function(t_new, y_new);
      if (!Crossed(events[i].direction, g_prev[i], g_new[i])) continue;
      EventHit hit = LocalizeEvent(static_cast<int>(i), events[i],
                                   interpolant(), t, g_prev[i], t_new,
                                   g_new[i], y_new, config.event_tol);
      if (events[i].terminal) {
        if (!terminal || hit.t < terminal->t) terminal = std::move(hit);
      } else {
        passed.push_back(std::move(hit));
      }
    }
    const double t_stop = terminal ? terminal->t : t_new;
    std::sort(passed.begin(), passed.end(),
              [](const EventHit& a, const EventHit& b) { return a.t < b.t; });
    for (EventHit& hit : passed) {
      if (hit.t <= t_stop) result.passed_events.push_back(std::move(hit));
    }

    if (sample_interval > 0.0) {
      while (true) {
        const double ts =
            t0 + static_cast<double>(next_sample) * sample_interval;
        if (ts >= t_stop) break;
        result.samples.push_back({ts, interpolant()(ts)});
        ++next_sample;
      }
    }

    if (terminal) {
      result.t_end = terminal->t;
      result.x_end = terminal->x;
      result.terminal_event = std::move(terminal);
      if (sample_interval > 0.0) {
        result.samples.push_back({result.t_end, result.x_end});
      }
      return result;
    }

    t = t_new;
    y = y_new;
    k[0] = k[method.stages() - 1];
    g_prev = std::move(g_new);

    if (final_step) {
      result.t_end = t;
      result.x_end = y;
      if (sample_interval > 0.0) result.samples.push_back({t, y});
      if (any_terminal) {
        throw NoEventError("IntegrateAdaptive: no terminal event within " +
                               std::to_string(config.max_time) + " s",
                           t, y);
      }
      return result;
    }

    double factor = kSafety * std::pow(std::max(err_norm, 1e-10), exponent);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);
    if (last_rejected) factor = std::min(factor, 1.0);
    last_rejected = false;
    h = std::min(h * factor, config.max_step);
  }
}

}  // namespace hopper
