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

#include "hopper/simulator.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hopper/dynamics.h"
#include "hopper/linalg.h"

namespace hopper {
namespace {

OdeVector Pack(const State& s) {
  OdeVector x(10);
  x.head<5>() = s.q;
  x.tail<5>() = s.qd;
  return x;
}

State Unpack(const OdeVector& x, double t, Phase phase, const Vec2& foothold) {
  State s;
  s.q = x.head<5>();
  s.qd = x.tail<5>();
  s.t = t;
  s.phase = phase;
  s.foothold = foothold;
  return s;
}

// Outcome of one continuous arc: either the terminal event index and state,
// or a failure.
struct Arc {
  IntegrationResult result;
  std::optional<FailureReason> failure;
  std::string detail;
};

Arc RunArc(const VectorField& f, const State& start,
           const std::vector<EventSpec>& events, FailureReason on_no_event,
           const SimulationOptions& options) {
  Arc arc;
  try {
    arc.result = IntegrateAdaptive(f, Pack(start), start.t, options.integrator,
                                   events, options.sample_interval);
  } catch (const NoEventError& e) {
    arc.failure = on_no_event;
    arc.detail = e.what();
    arc.result.t_end = e.t();
    arc.result.x_end = e.x();
  } catch (const StepSizeError& e) {
    arc.failure = FailureReason::kTimeBudgetExceeded;
    arc.detail = e.what();
    arc.result.t_end = start.t;
    arc.result.x_end = Pack(start);
  } catch (const SingularMatrixError& e) {
    arc.failure = FailureReason::kBodyGroundContact;
    arc.detail = std::string("degenerate contact configuration: ") + e.what();
    arc.result.t_end = start.t;
    arc.result.x_end = Pack(start);
  }
  return arc;
}

void AppendSamples(const ModelParams& p, const IntegrationResult& r,
                   Phase phase, const Vec2& foothold, CycleResult* out) {
  for (const OdeSample& s : r.samples) {
    TrajectorySample ts;
    ts.t = s.t;
    ts.phase = phase;
    ts.q = s.x.head<5>();
    ts.qd = s.x.tail<5>();
    out->trajectory.push_back(ts);
    if (phase == Phase::kStance) {
      GrfSample g;
      g.t = s.t;
      g.foot = foothold;
      g.com = Vec2(ts.q[kX], ts.q[kZ]);
      g.force = GroundReaction(p, Unpack(s.x, s.t, phase, foothold));
      out->grf.push_back(g);
    }
  }
}

void Fail(CycleResult* out, FailureReason reason, std::string detail,
          const State& last, const ModelParams& p) {
  out->failure = reason;
  out->failure_detail = std::move(detail);
  out->end = last;
  out->energy.end = TotalEnergy(p, last);
}

}  // namespace

std::string_view ToString(FailureReason reason) {
  switch (reason) {
    case FailureReason::kNoTouchdown:
      return "no_touchdown";
    case FailureReason::kNoLiftoff:
      return "no_liftoff";
    case FailureReason::kNoApex:
      return "no_apex";
    case FailureReason::kBodyGroundContact:
      return "body_ground_contact";
    case FailureReason::kNegativeInitialGrf:
      return "negative_initial_grf";
    case FailureReason::kTimeBudgetExceeded:
      return "time_budget_exceeded";
  }
  return "unknown";
}

std::string_view ToString(EventKind kind) {
  switch (kind) {
    case EventKind::kTouchdown:
      return "touchdown";
    case EventKind::kLiftoff:
      return "liftoff";
    case EventKind::kApex:
      return "apex";
  }
  return "unknown";
}

CycleResult SimulateCycle(const ModelParams& p, const State& apex,
                          const SimulationOptions& options) {
  if (apex.phase != Phase::kFlight) {
    throw std::invalid_argument("SimulateCycle: start state must be in flight");
  }
  if (std::abs(apex.q[kLeg] - p.rest_leg_length) > kFlightLegTolerance ||
      std::abs(apex.qd[kLeg]) > kFlightLegTolerance) {
    throw std::invalid_argument(
        "SimulateCycle: leg must be at rest length with zero rate");
  }
  if (!apex.q.allFinite() || !apex.qd.allFinite()) {
    throw std::invalid_argument("SimulateCycle: start state is not finite");
  }

  CycleResult out;
  out.start = apex;
  out.end = apex;
  out.energy.start = TotalEnergy(p, apex);
  out.energy.end = out.energy.start;

  const double z_min = options.min_com_height;
  if (apex.q[kZ] <= z_min) {
    Fail(&out, FailureReason::kBodyGroundContact,
         "CoM starts below the minimum height", apex, p);
    return out;
  }
  if (FootPosition(p, apex.q)[1] <= 0.0) {
    Fail(&out, FailureReason::kNoTouchdown,
         "foot starts at or below the ground", apex, p);
    return out;
  }

  const EventSpec body_contact{
      [z_min](double, const OdeVector& x) { return x[kZ] - z_min; },
      Crossing::kFalling, true};

  // Descent: apex to touchdown.
  const VectorField flight = [&p](double t, const OdeVector& x) {
    const State s = Unpack(x, t, Phase::kFlight, Vec2::Zero());
    OdeVector dx(10);
    dx.head<5>() = s.qd;
    dx.tail<5>() = FlightAcceleration(p, s);
    return dx;
  };
  const EventSpec touchdown{
      [&p](double, const OdeVector& x) {
        return FootPosition(p, x.head<5>())[1];
      },
      Crossing::kFalling, true};

  Arc descent = RunArc(flight, apex, {touchdown, body_contact},
                       FailureReason::kNoTouchdown, options);
  AppendSamples(p, descent.result, Phase::kFlight, Vec2::Zero(), &out);
  if (descent.failure) {
    Fail(&out, *descent.failure, descent.detail,
         Unpack(descent.result.x_end, descent.result.t_end, Phase::kFlight,
                Vec2::Zero()),
         p);
    return out;
  }
  const EventHit& td_hit = *descent.result.terminal_event;
  State td_pre = Unpack(td_hit.x, td_hit.t, Phase::kFlight, Vec2::Zero());
  if (td_hit.event == 1) {
    Fail(&out, FailureReason::kBodyGroundContact,
         "CoM reached the minimum height before touchdown", td_pre, p);
    return out;
  }

  // Impact.
  State td_post = td_pre;
  td_post.phase = Phase::kStance;
  td_post.foothold = FootPosition(p, td_pre.q);
  ImpactSolution impact;
  try {
    impact = ImpactMap(p, td_pre);
  } catch (const SingularMatrixError& e) {
    Fail(&out, FailureReason::kBodyGroundContact,
         std::string("degenerate impact configuration: ") + e.what(), td_pre,
         p);
    return out;
  }
  td_post.qd = impact.velocity;
  out.energy.descent_drift = TotalEnergy(p, td_pre) - out.energy.start;
  out.energy.impact_loss = TotalEnergy(p, td_post) - TotalEnergy(p, td_pre);
  out.events.push_back({EventKind::kTouchdown, td_pre.t, td_pre, td_post,
                        impact.impulse, out.energy.impact_loss});

  Vec2 initial_force;
  try {
    initial_force = GroundReaction(p, td_post);
  } catch (const SingularMatrixError& e) {
    Fail(&out, FailureReason::kBodyGroundContact,
         std::string("degenerate stance configuration: ") + e.what(), td_post,
         p);
    return out;
  }
  out.touchdown_force = initial_force;
  if (options.reject_negative_initial_grf && initial_force[1] <= 0.0) {
    Fail(&out, FailureReason::kNegativeInitialGrf,
         "vertical ground force after impact is " +
             std::to_string(initial_force[1]) + " N",
         td_post, p);
    return out;
  }

  // Stance.
  const Vec2 foothold = td_post.foothold;
  const VectorField stance = [&p, foothold](double t, const OdeVector& x) {
    const State s = Unpack(x, t, Phase::kStance, foothold);
    OdeVector dx(10);
    dx.head<5>() = s.qd;
    dx.tail<5>() = StanceAcceleration(p, s).accel;
    return dx;
  };
  const EventSpec liftoff{
      [&p, foothold](double t, const OdeVector& x) {
        return GroundReaction(p, Unpack(x, t, Phase::kStance, foothold))[1];
      },
      Crossing::kFalling, true};

  Arc support = RunArc(stance, td_post, {liftoff, body_contact},
                       FailureReason::kNoLiftoff, options);
  AppendSamples(p, support.result, Phase::kStance, foothold, &out);
  if (support.failure) {
    Fail(&out, *support.failure, support.detail,
         Unpack(support.result.x_end, support.result.t_end, Phase::kStance,
                foothold),
         p);
    return out;
  }
  const EventHit& lo_hit = *support.result.terminal_event;
  const State lo_pre = Unpack(lo_hit.x, lo_hit.t, Phase::kStance, foothold);
  if (lo_hit.event == 1) {
    Fail(&out, FailureReason::kBodyGroundContact,
         "CoM reached the minimum height during stance", lo_pre, p);
    return out;
  }

  // Liftoff.
  const State lo_post = LiftoffMap(p, lo_pre);
  out.stance_duration = lo_pre.t - td_post.t;
  out.energy.stance_drift = TotalEnergy(p, lo_pre) - TotalEnergy(p, td_post);
  out.energy.liftoff_loss = TotalEnergy(p, lo_post) - TotalEnergy(p, lo_pre);
  out.events.push_back({EventKind::kLiftoff, lo_pre.t, lo_pre, lo_post,
                        Vec2::Zero(), out.energy.liftoff_loss});
  if (lo_post.qd[kZ] <= 0.0) {
    Fail(&out, FailureReason::kNoApex,
         "vertical CoM velocity at liftoff is not positive", lo_post, p);
    return out;
  }

  // Ascent: liftoff to apex.
  const EventSpec apex_event{
      [](double, const OdeVector& x) { return x[5 + kZ]; }, Crossing::kFalling,
      true};
  Arc ascent = RunArc(flight, lo_post, {apex_event, body_contact},
                      FailureReason::kNoApex, options);
  AppendSamples(p, ascent.result, Phase::kFlight, Vec2::Zero(), &out);
  if (ascent.failure) {
    Fail(&out, *ascent.failure, ascent.detail,
         Unpack(ascent.result.x_end, ascent.result.t_end, Phase::kFlight,
                Vec2::Zero()),
         p);
    return out;
  }
  const EventHit& ap_hit = *ascent.result.terminal_event;
  State next = Unpack(ap_hit.x, ap_hit.t, Phase::kFlight, Vec2::Zero());
  if (ap_hit.event == 1) {
    Fail(&out, FailureReason::kBodyGroundContact,
         "CoM reached the minimum height before apex", next, p);
    return out;
  }
  out.events.push_back(
      {EventKind::kApex, next.t, next, next, Vec2::Zero(), 0.0});
  out.energy.end = TotalEnergy(p, next);
  out.energy.ascent_drift = out.energy.end - TotalEnergy(p, lo_post);
  next.q[kX] = 0.0;
  out.end = next;
  return out;
}

MultiStepResult SimulateSteps(const ModelParams& p, const State& apex,
                              int max_cycles,
                              const SimulationOptions& options) {
  if (max_cycles < 0) {
    throw std::invalid_argument("SimulateSteps: max_cycles must be >= 0");
  }
  MultiStepResult out;
  State current = apex;
  double x_offset = 0.0;
  for (int i = 0; i < max_cycles; ++i) {
    CycleResult cycle = SimulateCycle(p, current, options);
    for (TrajectorySample s : cycle.trajectory) {
      s.q[kX] += x_offset;
      out.trajectory.push_back(s);
    }
    const bool stance_started =
        !cycle.events.empty() &&
        cycle.failure != FailureReason::kNegativeInitialGrf &&
        cycle.touchdown_force.has_value();
    if (stance_started) ++out.steps_completed;
    if (!cycle.completed()) {
      out.failure = cycle.failure;
      out.cycles.push_back(std::move(cycle));
      break;
    }
    x_offset += cycle.events.back().post.q[kX];
    current = cycle.end;
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace hopper
