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

#include "hopper/model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hopper {

std::string_view ToString(SpringLaw law) {
  switch (law) {
    case SpringLaw::kLinear:
      return "linear";
    case SpringLaw::kCubic:
      return "cubic";
    case SpringLaw::kExponential:
      return "exponential";
  }
  return "unknown";
}

SpringLaw ParseSpringLaw(std::string_view name) {
  if (name == "linear") return SpringLaw::kLinear;
  if (name == "cubic") return SpringLaw::kCubic;
  if (name == "exponential") return SpringLaw::kExponential;
  throw std::invalid_argument("unknown spring law '" + std::string(name) +
                              "' (expected linear, cubic or exponential)");
}

std::string_view ToString(Phase phase) {
  return phase == Phase::kFlight ? "flight" : "stance";
}

void ModelParams::Validate() const {
  auto require_positive = [](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                  std::to_string(value));
    }
  };
  require_positive(total_mass, "total_mass");
  require_positive(rest_leg_length, "rest_leg_length");
  require_positive(trunk_inertia, "trunk_inertia");
  require_positive(leg_inertia, "leg_inertia");
  require_positive(leg_stiffness, "leg_stiffness");
  require_positive(hip_stiffness, "hip_stiffness");
  require_positive(gravity, "gravity");
  if (!(hip_offset >= 0.0) || !std::isfinite(hip_offset)) {
    throw std::invalid_argument("hip_offset must be non-negative, got " +
                                std::to_string(hip_offset));
  }
  if (!std::isfinite(hip_rest_angle)) {
    throw std::invalid_argument("hip_rest_angle must be finite");
  }
}

Vec2 HipPosition(const ModelParams& p, const Vec5& q) {
  const double d = p.hip_offset;
  return {q[kX] + d * std::sin(q[kPitch]), q[kZ] - d * std::cos(q[kPitch])};
}

Vec2 FootPosition(const ModelParams& p, const Vec5& q) {
  const double alpha = q[kPitch] + q[kHip];
  return HipPosition(p, q) +
         q[kLeg] * Vec2(std::sin(alpha), -std::cos(alpha));
}

Mat25 ContactJacobian(const ModelParams& p, const Vec5& q) {
  const double d = p.hip_offset;
  const double l = q[kLeg];
  const double alpha = q[kPitch] + q[kHip];
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double st = std::sin(q[kPitch]), ct = std::cos(q[kPitch]);
  Mat25 J;
  J << 1.0, 0.0, d * ct + l * ca, l * ca, sa,  //
      0.0, 1.0, d * st + l * sa, l * sa, -ca;
  return J;
}

Vec2 ContactHessianTerm(const ModelParams& p, const Vec5& q, const Vec5& qd) {
  const double d = p.hip_offset;
  const double l = q[kLeg];
  const double alpha = q[kPitch] + q[kHip];
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double st = std::sin(q[kPitch]), ct = std::cos(q[kPitch]);
  const double pitch_rate = qd[kPitch];
  const double alpha_rate = qd[kPitch] + qd[kHip];
  const double leg_rate = qd[kLeg];
  // dJ/dt * qd, then negated.
  const double ax = -d * st * pitch_rate * pitch_rate -
                    l * sa * alpha_rate * alpha_rate +
                    2.0 * leg_rate * ca * alpha_rate;
  const double az = d * ct * pitch_rate * pitch_rate +
                    l * ca * alpha_rate * alpha_rate +
                    2.0 * leg_rate * sa * alpha_rate;
  return {-ax, -az};
}

Mat5 MassMatrix(const ModelParams& p) {
  Mat5 M = Mat5::Zero();
  M(kX, kX) = p.total_mass;
  M(kZ, kZ) = p.total_mass;
  // Leg kinetic energy uses its absolute rate pitch_rate + hip_rate.
  M(kPitch, kPitch) = p.trunk_inertia + p.leg_inertia;
  M(kPitch, kHip) = p.leg_inertia;
  M(kHip, kPitch) = p.leg_inertia;
  M(kHip, kHip) = p.leg_inertia;
  return M;
}

GeneralizedForce BiasForces(const ModelParams& p, const Vec5& /*q*/,
                            const Vec5& /*qd*/) {
  GeneralizedForce h = GeneralizedForce::Zero();
  h[kZ] = p.total_mass * p.gravity;
  return h;
}

double HipTorque(const ModelParams& p, double hip_angle) {
  const double delta = p.hip_rest_angle - hip_angle;
  switch (p.spring_law) {
    case SpringLaw::kLinear:
      return p.hip_stiffness * delta;
    case SpringLaw::kCubic:
      return p.hip_stiffness * delta * delta * delta;
    case SpringLaw::kExponential:
      return p.hip_stiffness * (std::exp(delta) - std::exp(-delta));
  }
  return 0.0;
}

double HipPotential(const ModelParams& p, double hip_angle) {
  const double delta = p.hip_rest_angle - hip_angle;
  switch (p.spring_law) {
    case SpringLaw::kLinear:
      return 0.5 * p.hip_stiffness * delta * delta;
    case SpringLaw::kCubic:
      return 0.25 * p.hip_stiffness * delta * delta * delta * delta;
    case SpringLaw::kExponential:
      // 2 (cosh - 1) written to stay accurate for small delta.
      return 4.0 * p.hip_stiffness * std::sinh(0.5 * delta) *
             std::sinh(0.5 * delta);
  }
  return 0.0;
}

double LegSpringPotential(const ModelParams& p, double leg_length) {
  const double compression = p.rest_leg_length - leg_length;
  return 0.5 * p.leg_stiffness * compression * compression;
}

GeneralizedForce SpringForces(const ModelParams& p, const Vec5& q) {
  GeneralizedForce u = GeneralizedForce::Zero();
  u[kHip] = HipTorque(p, q[kHip]);
  u[kLeg] = p.leg_stiffness * (p.rest_leg_length - q[kLeg]);
  return u;
}

double KineticEnergy(const ModelParams& p, const Vec5& qd) {
  return 0.5 * qd.dot(MassMatrix(p) * qd);
}

double TotalEnergy(const ModelParams& p, const State& state) {
  return KineticEnergy(p, state.qd) +
         p.total_mass * p.gravity * state.q[kZ] +
         LegSpringPotential(p, state.q[kLeg]) +
         HipPotential(p, state.q[kHip]);
}

}  // namespace hopper
