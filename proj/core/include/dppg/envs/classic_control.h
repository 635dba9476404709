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

#ifndef DPPG_ENVS_CLASSIC_CONTROL_H_
#define DPPG_ENVS_CLASSIC_CONTROL_H_

#include <array>

#include "dppg/envs/environment.h"

namespace dppg {

// Cart-pole balancing with the usual Gym constants. Observation is
// (x, x_dot, theta, theta_dot); +1 reward per step including the last.
class CartPoleEnv final : public Environment {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kHalfLength = 0.5;
  static constexpr double kForce = 10.0;
  static constexpr double kDt = 0.02;
  static constexpr double kXThreshold = 2.4;
  static constexpr double kThetaThreshold = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr int kMaxSteps = 500;

  std::string_view name() const override { return "cartpole"; }
  int observation_dim() const override { return 4; }
  int num_actions() const override { return 2; }
  int max_episode_steps() const override { return kMaxSteps; }
  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<CartPoleEnv>(*this);
  }

  // Sets the physical state directly, e.g. to test from the upright pose.
  void SetState(const std::array<double, 4>& s);

 protected:
  Vector DoReset(Rng& rng) override;
  StepResult DoStep(int action, Rng& rng) override;

 private:
  Vector Observation() const;

  std::array<double, 4> s_{};
};

// Two-link underactuated pendulum (Sutton's formulation, RK4 integration).
// Observation is (cos t1, sin t1, cos t2, sin t2, t1_dot, t2_dot); reward is -1
// per step until the tip rises one link length above the pivot.
class AcrobotEnv final : public Environment {
 public:
  static constexpr double kDt = 0.2;
  static constexpr double kLinkLength1 = 1.0;
  static constexpr double kLinkMass1 = 1.0;
  static constexpr double kLinkMass2 = 1.0;
  static constexpr double kLinkCom1 = 0.5;
  static constexpr double kLinkCom2 = 0.5;
  static constexpr double kLinkMoi = 1.0;
  static constexpr double kGravity = 9.8;
  static constexpr double kMaxVel1 = 4.0 * 3.14159265358979323846;
  static constexpr double kMaxVel2 = 9.0 * 3.14159265358979323846;
  static constexpr int kMaxSteps = 500;

  std::string_view name() const override { return "acrobot"; }
  int observation_dim() const override { return 6; }
  int num_actions() const override { return 3; }
  int max_episode_steps() const override { return kMaxSteps; }
  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<AcrobotEnv>(*this);
  }

  // (theta1, theta2, theta1_dot, theta2_dot).
  void SetState(const std::array<double, 4>& s);
  const std::array<double, 4>& physical_state() const { return s_; }
  // Tip height above the pivot, in link lengths.
  double TipHeight() const;

 protected:
  Vector DoReset(Rng& rng) override;
  StepResult DoStep(int action, Rng& rng) override;

 private:
  Vector Observation() const;

  std::array<double, 4> s_{};
};

}  // namespace dppg

#endif  // DPPG_ENVS_CLASSIC_CONTROL_H_
