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

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "dppg/envs/classic_control.h"
#include "dppg/envs/environment.h"
#include "dppg/envs/riverswim.h"
#include "test_util.h"

namespace dppg {
namespace {

TEST(RiverswimTest, TransitionRowsAreDistributions) {
  const RiverswimConfig cfg;
  ASSERT_TRUE(cfg.Validate().ok());
  for (int a : {kSwimLeft, kSwimRight}) {
    const Matrix p = cfg.TransitionMatrix(a);
    EXPECT_LT((p.rowwise().sum() - Vector::Ones(6)).norm(), 1e-15);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(RiverswimTest, SampledTransitionsMatchTheKernel) {
  const RiverswimConfig cfg;
  Rng rng(1);
  const int n = 50000;
  for (int a : {kSwimLeft, kSwimRight}) {
    const Matrix p = cfg.TransitionMatrix(a);
    for (int s = 0; s < cfg.n_states; ++s) {
      Vector counts = Vector::Zero(cfg.n_states);
      double reward = 0.0;
      for (int i = 0; i < n; ++i) {
        const RiverswimOutcome out = RiverswimTransition(cfg, s, a, rng);
        counts[out.next_state] += 1.0;
        reward += out.reward;
      }
      for (int t = 0; t < cfg.n_states; ++t) {
        EXPECT_NEAR(counts[t] / n, p(s, t), 0.01) << s << "->" << t;
      }
      EXPECT_NEAR(reward / n, cfg.ExpectedReward(s, a), 0.01);
    }
  }
}

// Expectimax over (state, steps left) without the library's matrices.
double BruteForceOptimal(const RiverswimConfig& cfg, int state, int steps,
                         std::map<std::pair<int, int>, double>& memo) {
  if (steps == 0) return 0.0;
  auto key = std::make_pair(state, steps);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int last = cfg.n_states - 1;
  auto v = [&](int s) { return BruteForceOptimal(cfg, s, steps - 1, memo); };
  const double left = (state == 0 ? cfg.left_reward : 0.0) + v(std::max(state - 1, 0));
  double right = 0.0;
  if (state == 0) {
    right = cfg.bank_advance * v(1) + cfg.bank_stay * v(0);
  } else if (state == last) {
    right = cfg.reward_prob * cfg.right_reward + cfg.end_stay * v(last) +
            cfg.end_retreat * v(last - 1);
  } else {
    right = cfg.right_advance * v(state + 1) + cfg.right_stay * v(state) +
            cfg.right_retreat * v(state - 1);
  }
  return memo[key] = std::max(left, right);
}

TEST(RiverswimTest, ValueIterationMatchesExpectimax) {
  for (int horizon : {1, 5, 20}) {
    RiverswimConfig cfg;
    cfg.horizon = horizon;
    std::map<std::pair<int, int>, double> memo;
    EXPECT_NEAR(RiverswimOptimalValue(cfg).optimal_return,
                BruteForceOptimal(cfg, 0, horizon, memo), 1e-12)
        << horizon;
  }
}

TEST(RiverswimTest, OptimumDominatesEveryDeterministicStationaryPolicy) {
  const RiverswimConfig cfg;
  const double best = RiverswimOptimalValue(cfg).optimal_return;
  double best_stationary = 0.0;
  for (int mask = 0; mask < 64; ++mask) {
    Matrix probs = Matrix::Zero(6, 2);
    for (int s = 0; s < 6; ++s) probs(s, (mask >> s) & 1) = 1.0;
    const double j = RiverswimPolicyReturn(cfg, probs);
    EXPECT_LE(j, best + 1e-12);
    best_stationary = std::max(best_stationary, j);
  }
  Matrix right = Matrix::Zero(6, 2);
  right.col(kSwimRight).setOnes();
  EXPECT_DOUBLE_EQ(RiverswimPolicyReturn(cfg, right), best_stationary);
}

TEST(RiverswimTest, PolicyReturnMatchesSimulation) {
  RiverswimEnv env;
  Matrix probs(6, 2);
  probs << 0.3, 0.7, 0.2, 0.8, 0.5, 0.5, 0.1, 0.9, 0.4, 0.6, 0.25, 0.75;
  Rng rng(2);
  const int episodes = 40000;
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    env.Reset(rng);
    while (!env.state().done) {
      const int a = Uniform(0.0, 1.0, rng) < probs(env.position(), 1) ? 1 : 0;
      env.Step(a, rng);
    }
    total += env.state().episode_return;
  }
  EXPECT_NEAR(total / episodes, RiverswimPolicyReturn(env.config(), probs), 0.02);
}

TEST(RiverswimTest, EpisodesTruncateAtTheHorizon) {
  RiverswimEnv env;
  Rng rng(3);
  env.Reset(rng);
  for (int t = 0; t < 19; ++t) {
    const StepResult r = env.Step(kSwimRight, rng);
    EXPECT_FALSE(r.done());
  }
  const StepResult last = env.Step(kSwimRight, rng);
  EXPECT_TRUE(last.truncated);
  EXPECT_FALSE(last.terminated);
}

TEST(RiverswimTest, ValidateRejectsBadRows) {
  RiverswimConfig cfg;
  cfg.right_stay = 0.5;
  EXPECT_FALSE(cfg.Validate().ok());
  cfg = {};
  cfg.reward_prob = 0.0;
  EXPECT_FALSE(cfg.Validate().ok());
}

TEST(CartPoleTest, StepMatchesExplicitEulerReference) {
  CartPoleEnv env;
  Rng rng(4);
  env.Reset(rng);
  const std::array<double, 4> s0{0.1, -0.2, 0.03, 0.4};
  env.SetState(s0);
  const StepResult r = env.Step(1, rng);
  // Equations of motion with the standard constants.
  const double total = 1.1, pml = 0.05;
  const double temp = (10.0 + pml * 0.16 * std::sin(0.03)) / total;
  const double theta_acc = (9.8 * std::sin(0.03) - std::cos(0.03) * temp) /
                           (0.5 * (4.0 / 3.0 - 0.1 * std::pow(std::cos(0.03), 2) / total));
  const double x_acc = temp - pml * theta_acc * std::cos(0.03) / total;
  EXPECT_NEAR(r.observation[0], 0.1 + 0.02 * -0.2, 1e-15);
  EXPECT_NEAR(r.observation[1], -0.2 + 0.02 * x_acc, 1e-15);
  EXPECT_NEAR(r.observation[2], 0.03 + 0.02 * 0.4, 1e-15);
  EXPECT_NEAR(r.observation[3], 0.4 + 0.02 * theta_acc, 1e-15);
  EXPECT_EQ(r.reward, 1.0);
  EXPECT_FALSE(r.done());
}

TEST(CartPoleTest, TerminatesOutsideThresholds) {
  CartPoleEnv env;
  Rng rng(5);
  env.Reset(rng);
  env.SetState({0.0, 0.0, 0.25, 1.0});
  EXPECT_TRUE(env.Step(0, rng).terminated);
  env.Reset(rng);
  env.SetState({2.39, 3.0, 0.0, 0.0});
  EXPECT_TRUE(env.Step(1, rng).terminated);
}

TEST(CartPoleTest, ResetIsSmallAndUniform) {
  CartPoleEnv env;
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    EXPECT_LE(env.Reset(rng).cwiseAbs().maxCoeff(), 0.05);
  }
}

double AcrobotEnergy(const std::array<double, 4>& s) {
  const auto [t1, t2, w1, w2] = s;
  constexpr double g = 9.8, l1 = 1.0, lc = 0.5, m = 1.0, inertia = 1.0;
  const double y1 = -lc * std::cos(t1);
  const double y2 = -l1 * std::cos(t1) - lc * std::cos(t1 + t2);
  const double v1x = lc * std::cos(t1) * w1, v1y = lc * std::sin(t1) * w1;
  const double v2x = l1 * std::cos(t1) * w1 + lc * std::cos(t1 + t2) * (w1 + w2);
  const double v2y = l1 * std::sin(t1) * w1 + lc * std::sin(t1 + t2) * (w1 + w2);
  const double kinetic = 0.5 * m * (v1x * v1x + v1y * v1y) +
                         0.5 * m * (v2x * v2x + v2y * v2y) + 0.5 * inertia * w1 * w1 +
                         0.5 * inertia * (w1 + w2) * (w1 + w2);
  return kinetic + m * g * (y1 + y2);
}

TEST(AcrobotTest, ConservesEnergyWithoutTorque) {
  AcrobotEnv env;
  Rng rng(7);
  env.Reset(rng);
  env.SetState({0.6, -0.4, 0.2, 0.1});
  const double e0 = AcrobotEnergy(env.physical_state());
  for (int t = 0; t < 20; ++t) env.Step(1, rng);
  EXPECT_NEAR(AcrobotEnergy(env.physical_state()), e0, 1e-3 * std::abs(e0));
}

TEST(AcrobotTest, TorqueInjectsEnergy) {
  AcrobotEnv env;
  Rng rng(8);
  env.Reset(rng);
  env.SetState({0.0, 0.0, 0.0, 0.5});
  const double e0 = AcrobotEnergy(env.physical_state());
  env.Step(2, rng);
  EXPECT_GT(AcrobotEnergy(env.physical_state()), e0);
}

TEST(AcrobotTest, TerminatesWithZeroRewardAboveTheBar) {
  AcrobotEnv env;
  Rng rng(9);
  env.Reset(rng);
  env.SetState({std::numbers::pi, 0.0, 0.0, 0.0});
  const StepResult r = env.Step(1, rng);
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.reward, 0.0);
  env.Reset(rng);
  const StepResult hanging = env.Step(1, rng);
  EXPECT_FALSE(hanging.done());
  EXPECT_EQ(hanging.reward, -1.0);
  EXPECT_NEAR(hanging.observation.segment(0, 2).squaredNorm(), 1.0, 1e-12);
}

TEST(EnvironmentTest, FactoryKnowsTheThreeEnvs) {
  for (const char* name : {"riverswim", "cartpole", "acrobot"}) {
    absl::StatusOr<std::unique_ptr<Environment>> env = MakeEnvironment(name);
    ASSERT_TRUE(env.ok());
    EXPECT_EQ((*env)->name(), name);
    EXPECT_NE((*env)->Clone(), nullptr);
  }
  EXPECT_FALSE(MakeEnvironment("pendulum").ok());
}

TEST(EnvironmentTest, TracksReturnAndTruncation) {
  CartPoleEnv env;
  Rng rng(10);
  env.Reset(rng);
  int steps = 0;
  StepResult r;
  // Hold the pole upright with a bang-bang controller until time runs out.
  while (!env.state().done) {
    const Vector& o = env.state().observation;
    r = env.Step(o[2] + 0.5 * o[3] > 0.0 ? 1 : 0, rng);
    ++steps;
  }
  EXPECT_EQ(env.state().episode_return, steps);
  if (steps == CartPoleEnv::kMaxSteps) {
    EXPECT_TRUE(r.truncated);
  }
}

}  // namespace
}  // namespace dppg
