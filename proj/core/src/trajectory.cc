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

#include "dppg/trajectory.h"

#include <cassert>

namespace dppg {

Matrix Trajectory::States() const {
  if (steps.empty()) return Matrix();
  Matrix obs(steps.front().state.size(), size());
  for (int t = 0; t < size(); ++t) obs.col(t) = steps[t].state;
  return obs;
}

std::vector<int> Trajectory::Actions() const {
  std::vector<int> actions;
  actions.reserve(steps.size());
  for (const Transition& tr : steps) actions.push_back(tr.action);
  return actions;
}

Trajectory Rollout(Environment& env, const Policy& policy, const Vector& theta,
                   const Critic* critic, const Vector& psi, int steps, Rng& rng) {
  assert(steps >= 1);
  Trajectory traj;
  traj.steps.reserve(steps);
  if (env.state().done) env.Reset(rng);
  for (int t = 0; t < steps; ++t) {
    Transition tr;
    tr.state = env.state().observation;
    const Policy::Sample sample = policy.SampleAction(theta, tr.state, rng);
    tr.action = sample.action;
    tr.log_prob = sample.log_prob;
    StepResult result = env.Step(tr.action, rng);
    tr.reward = result.reward;
    tr.next_state = std::move(result.observation);
    tr.terminated = result.terminated;
    tr.truncated = result.truncated;
    if (tr.done()) {
      traj.episode_returns.push_back(env.state().episode_return);
      env.Reset(rng);
    }
    traj.steps.push_back(std::move(tr));
  }

  if (critic != nullptr) {
    Matrix next(traj.steps.front().next_state.size(), steps);
    for (int t = 0; t < steps; ++t) next.col(t) = traj.steps[t].next_state;
    const Vector values = critic->Values(psi, traj.States());
    const Vector next_values = critic->Values(psi, next);
    for (int t = 0; t < steps; ++t) {
      traj.steps[t].value = values[t];
      traj.steps[t].next_value = traj.steps[t].terminated ? 0.0 : next_values[t];
    }
  }
  return traj;
}

std::vector<double> EvaluateEpisodes(Environment& env, const Policy& policy,
                                     const Vector& theta, int episodes, Rng& rng) {
  std::vector<double> returns;
  returns.reserve(episodes);
  for (int e = 0; e < episodes; ++e) {
    Vector obs = env.Reset(rng);
    while (true) {
      const int action = policy.SampleAction(theta, obs, rng).action;
      StepResult result = env.Step(action, rng);
      if (result.done()) break;
      obs = std::move(result.observation);
    }
    returns.push_back(env.state().episode_return);
  }
  return returns;
}

}  // namespace dppg
