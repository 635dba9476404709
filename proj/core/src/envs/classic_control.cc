// Copyright 2026 The DPPG Authors.
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

#include "dppg/envs/classic_control.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dppg/random.h"

namespace dppg {

namespace {

using State4 = std::array<double, 4>;

double Wrap(double x, double lo, double hi) {
  const double span = hi - lo;
  while (x > hi) x -= span;
  while (x < lo) x += span;
  return x;
}

}  // namespace

void CartPoleEnv::SetState(const std::array<double, 4>& s) { s_ = s; }

Vector CartPoleEnv::Observation() const {
  return Eigen::Vector4d(s_[0], s_[1], s_[2], s_[3]);
}

Vector CartPoleEnv::DoReset(Rng& rng) {
  for (double& v : s_) v = Uniform(-0.05, 0.05, rng);
  return Observation();
}

StepResult CartPoleEnv::DoStep(int action, Rng&) {
  constexpr double kTotalMass = kCartMass + kPoleMass;
  constexpr double kPoleMassLength = kPoleMass * kHalfLength;
  auto& [x, x_dot, theta, theta_dot] = s_;
  const double force = action == 1 ? kForce : -kForce;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double temp =
      (force + kPoleMassLength * theta_dot * theta_dot * sin_t) / kTotalMass;
  const double theta_acc =
      (kGravity * sin_t - cos_t * temp) /
      (kHalfLength * (4.0 / 3.0 - kPoleMass * cos_t * cos_t / kTotalMass));
  const double x_acc = temp - kPoleMassLength * theta_acc * cos_t / kTotalMass;

  // Explicit Euler: positions advance with the old velocities.
  x += kDt * x_dot;
  x_dot += kDt * x_acc;
  theta += kDt * theta_dot;
  theta_dot += kDt * theta_acc;

  const bool terminated = x < -kXThreshold || x > kXThreshold ||
                          theta < -kThetaThreshold || theta > kThetaThreshold;
  return {Observation(), 1.0, terminated, false};
}

void AcrobotEnv::SetState(const std::array<double, 4>& s) { s_ = s; }

Vector AcrobotEnv::Observation() const {
  Vector obs(6);
  obs << std::cos(s_[0]), std::sin(s_[0]), std::cos(s_[1]), std::sin(s_[1]),
      s_[2], s_[3];
  return obs;
}

double AcrobotEnv::TipHeight() const {
  return -std::cos(s_[0]) - std::cos(s_[1] + s_[0]);
}

Vector AcrobotEnv::DoReset(Rng& rng) {
  for (double& v : s_) v = Uniform(-0.1, 0.1, rng);
  return Observation();
}

StepResult AcrobotEnv::DoStep(int action, Rng&) {
  constexpr double kPi = std::numbers::pi;
  const double torque = static_cast<double>(action) - 1.0;

  auto derivs = [torque](const State4& s) -> State4 {
    constexpr double m1 = kLinkMass1, m2 = kLinkMass2, l1 = kLinkLength1;
    constexpr double lc1 = kLinkCom1, lc2 = kLinkCom2, i1 = kLinkMoi, i2 = kLinkMoi;
    constexpr double g = kGravity;
    const auto [theta1, theta2, dtheta1, dtheta2] = s;
    const double d1 = m1 * lc1 * lc1 +
                      m2 * (l1 * l1 + lc2 * lc2 + 2 * l1 * lc2 * std::cos(theta2)) +
                      i1 + i2;
    const double d2 = m2 * (lc2 * lc2 + l1 * lc2 * std::cos(theta2)) + i2;
    const double phi2 = m2 * lc2 * g * std::cos(theta1 + theta2 - kPi / 2.0);
    const double phi1 =
        -m2 * l1 * lc2 * dtheta2 * dtheta2 * std::sin(theta2) -
        2 * m2 * l1 * lc2 * dtheta2 * dtheta1 * std::sin(theta2) +
        (m1 * lc1 + m2 * l1) * g * std::cos(theta1 - kPi / 2.0) + phi2;
    const double ddtheta2 =
        (torque + d2 / d1 * phi1 -
         m2 * l1 * lc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
        (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
    const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
    return {dtheta1, dtheta2, ddtheta1, ddtheta2};
  };
  auto axpy = [](const State4& s, double h, const State4& k) {
    return State4{s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]};
  };

  // One classical RK4 step over dt.
  const State4 k1 = derivs(s_);
  const State4 k2 = derivs(axpy(s_, kDt / 2.0, k1));
  const State4 k3 = derivs(axpy(s_, kDt / 2.0, k2));
  const State4 k4 = derivs(axpy(s_, kDt, k3));
  State4 next;
  for (int i = 0; i < 4; ++i) {
    next[i] = s_[i] + kDt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  next[0] = Wrap(next[0], -kPi, kPi);
  next[1] = Wrap(next[1], -kPi, kPi);
  next[2] = std::clamp(next[2], -kMaxVel1, kMaxVel1);
  next[3] = std::clamp(next[3], -kMaxVel2, kMaxVel2);
  s_ = next;

  const bool terminated = TipHeight() > 1.0;
  return {Observation(), terminated ? 0.0 : -1.0, terminated, false};
}

}  // namespace dppg
