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

#include "dppg/advantage.h"

#include <cmath>

#include "dppg/critic.h"
#include "dppg/policy.h"
#include "fake_env.h"
#include "test_util.h"

namespace dppg {
namespace {

// A_t = sum_l (gamma lambda)^l delta_{t+l} over the rest of t's episode.
Vector BruteForceGae(const Vector& r, const Vector& v, const Vector& next_v,
                     const std::vector<bool>& terminated,
                     const std::vector<bool>& episode_end, double gamma, double lambda) {
  const int n = r.size();
  Vector delta(n);
  for (int t = 0; t < n; ++t) {
    delta[t] = r[t] + (terminated[t] ? 0.0 : gamma * next_v[t]) - v[t];
  }
  Vector adv(n);
  for (int t = 0; t < n; ++t) {
    double sum = 0.0;
    double w = 1.0;
    for (int k = t; k < n; ++k) {
      sum += w * delta[k];
      if (episode_end[k]) break;
      w *= gamma * lambda;
    }
    adv[t] = sum;
  }
  return adv;
}

TEST(GaeTest, MatchesBruteForceSums) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 17;
    const Vector r = testing::RandomVector(n, 1.0, rng);
    const Vector v = testing::RandomVector(n, 1.0, rng);
    const Vector nv = testing::RandomVector(n, 1.0, rng);
    std::vector<bool> term(n), end(n);
    for (int t = 0; t < n; ++t) {
      end[t] = Uniform(0.0, 1.0, rng) < 0.2;
      term[t] = end[t] && Uniform(0.0, 1.0, rng) < 0.5;
    }
    const double gamma = Uniform(0.5, 1.0, rng), lambda = Uniform(0.0, 1.0, rng);
    DPPG_ASSERT_OK_AND_ASSIGN(est, Gae(r, v, nv, term, end, gamma, lambda));
    EXPECT_LT((est.advantages - BruteForceGae(r, v, nv, term, end, gamma, lambda)).norm(),
              1e-12);
    EXPECT_LT((est.returns - est.advantages - v).norm(), 1e-12);
  }
}

TEST(GaeTest, LambdaOneGivesMonteCarloReturns) {
  Vector r(4), v(4);
  r << 1.0, 2.0, 3.0, 4.0;
  v << 0.5, -1.0, 2.0, 0.0;
  DPPG_ASSERT_OK_AND_ASSIGN(est, Gae(r, v, 0.0, {false, false, false, true}, 0.9, 1.0));
  const double g3 = 4.0, g2 = 3.0 + 0.9 * g3, g1 = 2.0 + 0.9 * g2, g0 = 1.0 + 0.9 * g1;
  Vector expected(4);
  expected << g0, g1, g2, g3;
  EXPECT_LT((est.returns - expected).norm(), 1e-12);
}

TEST(GaeTest, LambdaZeroGivesTdErrors) {
  Vector r(3), v(3);
  r << 1.0, 0.0, 2.0;
  v << 0.3, 0.7, -0.2;
  DPPG_ASSERT_OK_AND_ASSIGN(est, Gae(r, v, 5.0, {false, false, false}, 0.95, 0.0));
  EXPECT_NEAR(est.advantages[0], 1.0 + 0.95 * 0.7 - 0.3, 1e-15);
  EXPECT_NEAR(est.advantages[2], 2.0 + 0.95 * 5.0 + 0.2, 1e-15);
}

TEST(GaeTest, TruncationBootstrapsButStopsTheRecursion) {
  Vector r = Vector::Ones(2), v = Vector::Zero(2), nv(2);
  nv << 10.0, 20.0;
  DPPG_ASSERT_OK_AND_ASSIGN(
      est, Gae(r, v, nv, {false, false}, {true, false}, 0.5, 1.0));
  EXPECT_NEAR(est.advantages[0], 1.0 + 0.5 * 10.0, 1e-15);
  DPPG_ASSERT_OK_AND_ASSIGN(
      terminal, Gae(r, v, nv, {true, false}, {true, false}, 0.5, 1.0));
  EXPECT_NEAR(terminal.advantages[0], 1.0, 1e-15);
}

TEST(GaeTest, RejectsLengthMismatch) {
  EXPECT_FALSE(Gae(Vector::Ones(3), Vector::Ones(2), 0.0, {false, false, false}, 0.9, 0.9).ok());
  EXPECT_FALSE(
      Gae(Vector::Ones(2), Vector::Ones(2), Vector::Ones(2), {false}, {false, false}, 0.9, 0.9)
          .ok());
}

TEST(TrajectoryGaeTest, UsesStoredValuesAndFlags) {
  testing::CounterEnv env(3, 100);
  const LogLinearPolicy policy({ArchKind::kLogLinearConcat, 2, 2, 0});
  const LinearCritic critic(2);
  Vector psi(2);
  psi << 0.5, -0.25;
  Rng rng(2);
  const Trajectory traj = Rollout(env, policy, Vector::Zero(3), &critic, psi, 7, rng);
  const AdvantageEstimate est = TrajectoryGae(traj, 0.9, 0.8);
  Vector r(7), v(7), nv(7);
  std::vector<bool> term(7), end(7);
  for (int t = 0; t < 7; ++t) {
    r[t] = traj.steps[t].reward;
    v[t] = critic.Value(psi, traj.steps[t].state);
    nv[t] = critic.Value(psi, traj.steps[t].next_state);
    term[t] = traj.steps[t].terminated;
    end[t] = traj.steps[t].done();
  }
  EXPECT_LT((est.advantages - BruteForceGae(r, v, nv, term, end, 0.9, 0.8)).norm(), 1e-12);
}

TEST(PgEstimateTest, IsTheMeanOfScoreTimesAdvantage) {
  testing::CounterEnv env(4, 2);
  const LogLinearPolicy policy({ArchKind::kLogLinearProduct, 2, 2, 0});
  Rng rng(3);
  const Vector theta = testing::RandomVector(4, 0.3, rng);
  const Trajectory traj = Rollout(env, policy, theta, nullptr, Vector(), 6, rng);
  const Vector adv = testing::RandomVector(6, 1.0, rng);
  Vector expected = Vector::Zero(4);
  for (int t = 0; t < 6; ++t) {
    expected += policy.Score(theta, traj.steps[t].state, traj.steps[t].action) * adv[t];
  }
  expected /= 6.0;
  DPPG_ASSERT_OK_AND_ASSIGN(g, PgEstimate(policy, theta, traj, adv));
  EXPECT_LT((g - expected).norm(), 1e-14);
  EXPECT_FALSE(PgEstimate(policy, theta, traj, Vector::Ones(5)).ok());
}

}  // namespace
}  // namespace dppg
