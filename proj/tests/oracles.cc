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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "hopper/dynamics.h"
#include "hopper/integrator.h"
#include "hopper/linalg.h"

namespace hopper::testing {
namespace {

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

using Vec3 = Eigen::Vector3d;
using Mat23 = Eigen::Matrix<double, 2, 3>;

struct MinimalKinematics {
  Vec2 com;
  Vec2 com_rate;
  Mat23 jac;      // d com / d s
  Vec2 quadratic; // d(jac)/dt * s-rate
};

// CoM = foothold - l (sin a, -cos a) - d (sin th, -cos th).
MinimalKinematics Kinematics(const ModelParams& p, const Vec2& foothold,
                             const Vec3& s, const Vec3& sd) {
  const double th = s[0], a = s[1], l = s[2];
  const double thd = sd[0], ad = sd[1], ld = sd[2];
  const double d = p.hip_offset;
  MinimalKinematics k;
  k.com = foothold - l * Vec2(std::sin(a), -std::cos(a)) -
          d * Vec2(std::sin(th), -std::cos(th));
  k.jac.col(0) = -d * Vec2(std::cos(th), std::sin(th));
  k.jac.col(1) = -l * Vec2(std::cos(a), std::sin(a));
  k.jac.col(2) = -Vec2(std::sin(a), -std::cos(a));
  k.com_rate = k.jac * sd;
  k.quadratic = d * thd * thd * Vec2(std::sin(th), -std::cos(th)) +
                l * ad * ad * Vec2(std::sin(a), -std::cos(a)) -
                2.0 * ld * ad * Vec2(std::cos(a), std::sin(a));
  return k;
}

State FromMinimal(const ModelParams& p, const Vec2& foothold, const Vec3& s,
                  const Vec3& sd) {
  const MinimalKinematics k = Kinematics(p, foothold, s, sd);
  State st;
  st.q << k.com[0], k.com[1], s[0], s[1] - s[0], s[2];
  st.qd << k.com_rate[0], k.com_rate[1], sd[0], sd[1] - sd[0], sd[2];
  st.phase = Phase::kStance;
  st.foothold = foothold;
  return st;
}

}  // namespace

MinimalStance MinimalStanceDynamics(const ModelParams& p, const State& state) {
  const Vec3 s(state.q[kPitch], state.q[kPitch] + state.q[kHip],
               state.q[kLeg]);
  const Vec3 sd(state.qd[kPitch], state.qd[kPitch] + state.qd[kHip],
                state.qd[kLeg]);
  const MinimalKinematics k = Kinematics(p, state.foothold, s, sd);
  const double m = p.total_mass;

  Eigen::Matrix3d mass = m * k.jac.transpose() * k.jac;
  mass(0, 0) += p.trunk_inertia;
  mass(1, 1) += p.leg_inertia;

  // Potential gradient. The hip spring acts on hip = a - th, and its torque
  // is minus the potential slope.
  const double tau = HipTorque(p, state.q[kHip]);
  Vec3 grad = m * p.gravity * k.jac.row(1).transpose();
  grad[0] += tau;
  grad[1] -= tau;
  grad[2] -= p.leg_stiffness * (p.rest_leg_length - s[2]);

  const Vec3 rhs = -m * k.jac.transpose() * k.quadratic - grad;
  const Vec3 sdd = mass.fullPivLu().solve(rhs);

  const Vec2 com_acc = k.jac * sdd + k.quadratic;
  MinimalStance out;
  out.qdd << com_acc[0], com_acc[1], sdd[0], sdd[1] - sdd[0], sdd[2];
  out.force = m * com_acc + Vec2(0.0, m * p.gravity);
  return out;
}

ModelParams RandomParams(std::mt19937_64& rng) {
  ModelParams p;
  p.hip_offset = Uniform(rng, 0.0, 0.3);
  p.hip_stiffness = Uniform(rng, 1.0, 50.0);
  p.hip_rest_angle = Uniform(rng, -0.2, 0.2);
  const int law = std::uniform_int_distribution<int>(0, 2)(rng);
  p.spring_law = static_cast<SpringLaw>(law);
  return p;
}

State RandomStanceState(const ModelParams& p, std::mt19937_64& rng) {
  const Vec2 foothold(Uniform(rng, -1.0, 1.0), 0.0);
  const Vec3 s(Uniform(rng, -0.5, 0.5), Uniform(rng, -0.6, 0.6),
               Uniform(rng, 0.3, p.rest_leg_length));
  const Vec3 sd(Uniform(rng, -3.0, 3.0), Uniform(rng, -5.0, 5.0),
                Uniform(rng, -2.0, 2.0));
  return FromMinimal(p, foothold, s, sd);
}

State RandomFlightState(const ModelParams& p, std::mt19937_64& rng) {
  State st;
  st.q << Uniform(rng, -1.0, 1.0), Uniform(rng, 0.6, 1.2),
      Uniform(rng, -0.5, 0.5), Uniform(rng, -0.8, 0.8), p.rest_leg_length;
  st.qd << Uniform(rng, -5.0, 5.0), Uniform(rng, -3.0, 3.0),
      Uniform(rng, -3.0, 3.0), Uniform(rng, -10.0, 10.0), 0.0;
  st.phase = Phase::kFlight;
  return st;
}

double StanceOracleError(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const ModelParams p = RandomParams(rng);
    const State st = RandomStanceState(p, rng);
    const StanceSolution kkt = StanceAcceleration(p, st);
    const MinimalStance ref = MinimalStanceDynamics(p, st);
    // Relative to the magnitude of the quantities compared.
    const double acc_scale = std::max(1.0, ref.qdd.cwiseAbs().maxCoeff());
    const double force_scale = std::max(1.0, ref.force.cwiseAbs().maxCoeff());
    worst = std::max(worst, (kkt.accel - ref.qdd).cwiseAbs().maxCoeff() /
                                acc_scale);
    worst = std::max(worst,
                     (kkt.contact_force - ref.force).cwiseAbs().maxCoeff() /
                         force_scale);
  }
  return worst;
}

ImpactCheck CheckImpacts(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ImpactCheck out;
  out.max_energy_change = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const ModelParams p = RandomParams(rng);
    const State pre = RandomFlightState(p, rng);
    const ImpactSolution post = ImpactMap(p, pre);
    const Mat25 J = ContactJacobian(p, pre.q);
    out.max_constraint = std::max(
        out.max_constraint, (J * post.velocity).cwiseAbs().maxCoeff());
    out.max_energy_change =
        std::max(out.max_energy_change, KineticEnergy(p, post.velocity) -
                                            KineticEnergy(p, pre.qd));
  }
  return out;
}

FlightDrift CheckFlightDrift(int count, double duration, std::uint64_t seed,
                             const IntegratorConfig& config) {
  std::mt19937_64 rng(seed);
  FlightDrift out;
  for (int i = 0; i < count; ++i) {
    const ModelParams p = RandomParams(rng);
    const State start = RandomFlightState(p, rng);
    const VectorField f = [&p](double t, const OdeVector& x) {
      State s;
      s.q = x.head<5>();
      s.qd = x.tail<5>();
      s.t = t;
      OdeVector dx(10);
      dx.head<5>() = s.qd;
      dx.tail<5>() = FlightAcceleration(p, s);
      return dx;
    };
    OdeVector x0(10);
    x0.head<5>() = start.q;
    x0.tail<5>() = start.qd;
    IntegratorConfig cfg = config;
    cfg.max_time = duration;
    const IntegrationResult r = IntegrateAdaptive(f, x0, 0.0, cfg, {}, 0.01);
    const double e0 = TotalEnergy(p, start);
    const Mat5 m = MassMatrix(p);
    const double l0 = (m * start.qd)[kPitch];  // pitch row is total ang. mom.
    for (const OdeSample& s : r.samples) {
      State st;
      st.q = s.x.head<5>();
      st.qd = s.x.tail<5>();
      out.energy = std::max(out.energy, std::abs(TotalEnergy(p, st) - e0));
      out.angular_momentum = std::max(out.angular_momentum,
                                      std::abs((m * st.qd)[kPitch] - l0));
    }
  }
  return out;
}

DerivativeCheck CheckContactDerivatives(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DerivativeCheck out;
  const double h = 1e-6;
  for (int i = 0; i < count; ++i) {
    const ModelParams p = RandomParams(rng);
    const State st = RandomStanceState(p, rng);
    const Mat25 J = ContactJacobian(p, st.q);
    for (int j = 0; j < 5; ++j) {
      Vec5 dq = Vec5::Zero();
      dq[j] = h;
      const Vec2 fd = (FootPosition(p, st.q + dq) - FootPosition(p, st.q - dq)) /
                      (2.0 * h);
      out.jacobian =
          std::max(out.jacobian, (fd - J.col(j)).cwiseAbs().maxCoeff());
    }
    // d/dt (J qd) at fixed qd, along the motion q + t qd.
    const double hh = 1e-5;
    const Vec2 jdot_qd = (ContactJacobian(p, st.q + hh * st.qd) -
                          ContactJacobian(p, st.q - hh * st.qd)) *
                         st.qd / (2.0 * hh);
    out.hessian_term = std::max(
        out.hessian_term,
        (ContactHessianTerm(p, st.q, st.qd) + jdot_qd).cwiseAbs().maxCoeff());
  }
  return out;
}

double EigenBackwardError(int count, int max_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + i % max_size;
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a(r, c) = normal(rng);
    }
    // Every fifth matrix is badly scaled to exercise balancing.
    if (i % 5 == 4) {
      for (int r = 0; r < n; ++r) {
        const double scale = std::pow(10.0, Uniform(rng, -4.0, 4.0));
        a.row(r) *= scale;
        a.col(r) /= scale;
      }
    }
    const double norm_a =
        Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
    const auto eig = Eigenvalues(a);
    const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
    for (const auto& lambda : eig) {
      const Eigen::MatrixXcd shifted =
          ac - lambda * Eigen::MatrixXcd::Identity(n, n);
      const double smin =
          Eigen::JacobiSVD<Eigen::MatrixXcd>(shifted).singularValues()(n - 1);
      worst = std::max(worst, smin / norm_a);
    }
  }
  return worst;
}

Vec6 BounceApex(double apex_height) {
  Vec6 x = Vec6::Zero();
  x[kApexZ] = apex_height;
  return x;
}

BounceCheck CheckSymmetricBounce(double apex_height) {
  ModelParams p;  // centered hip, hip rest angle 0
  BounceCheck out;
  const Vec6 x = BounceApex(apex_height);
  const CycleResult cycle = SimulateCycle(p, EmbedApex(p, x));
  out.completed = cycle.completed();
  if (!out.completed) return out;
  out.fixed_point_error = (ProjectApex(cycle.end) - x).cwiseAbs().maxCoeff();
  out.energy_change = cycle.energy.total_change();
  const Mat6 dp = Monodromy(p, x);
  out.unit_eigenvalue_distance = std::numeric_limits<double>::infinity();
  for (const auto& ev : Eigenvalues(dp)) {
    out.unit_eigenvalue_distance =
        std::min(out.unit_eigenvalue_distance, std::abs(ev - 1.0));
  }
  return out;
}

std::optional<LimitCycle> FindPresetGait(const std::string& name,
                                         const NewtonOptions& options) {
  const Preset preset = GetPreset(name);
  MultiStartResult r = MultiStartSearch(preset.params, preset.seeds, options);
  return r.best.cycle;
}

}  // namespace hopper::testing
