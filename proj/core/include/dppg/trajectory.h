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

#ifndef DPPG_TRAJECTORY_H_
#define DPPG_TRAJECTORY_H_

#include <cstdint>
#include <vector>

#include "dppg/critic.h"
#include "dppg/envs/environment.h"
#include "dppg/policy.h"
#include "dppg/types.h"

namespace dppg {

struct Transition {
  Vector state;
  int action = 0;
  double reward = 0.0;
  Vector next_state;
  bool terminated = false;
  bool truncated = false;
  // log pi(action | state) under the behaviour policy.
  double log_prob = 0.0;
  // Critic value of `state`.
  double value = 0.0;
  // Critic value used to bootstrap after this step: 0 at a true termination,
  // otherwise V(next_state). At a truncation next_state is the final state of
  // the ended episode, not the post-reset state.
  double next_value = 0.0;

  bool done() const { return terminated || truncated; }
};

// One user's on-policy data. Move-only so a trajectory can be consumed by
// exactly one update; the training loop moves it into the update and drops it.
struct Trajectory {
  std::vector<Transition> steps;
  int64_t user_id = -1;
  int64_t iteration = -1;
  // Returns of the episodes that ended inside this segment.
  std::vector<double> episode_returns;

  Trajectory() = default;
  Trajectory(Trajectory&&) = default;
  Trajectory& operator=(Trajectory&&) = default;
  Trajectory(const Trajectory&) = delete;
  Trajectory& operator=(const Trajectory&) = delete;

  int size() const { return static_cast<int>(steps.size()); }
  // Observations as columns.
  Matrix States() const;
  std::vector<int> Actions() const;
};

// Runs the policy for exactly `steps` transitions, continuing the episode
// the environment is in (or starting one) and resetting after every episode
// end. Records log-probabilities, and critic values when `critic` is set.
Trajectory Rollout(Environment& env, const Policy& policy, const Vector& theta,
                   const Critic* critic, const Vector& psi, int steps, Rng& rng);

// Plays `episodes` full episodes from fresh resets, sampling actions from the
// policy, and returns their undiscounted returns.
std::vector<double> EvaluateEpisodes(Environment& env, const Policy& policy,
                                     const Vector& theta, int episodes, Rng& rng);

}  // namespace dppg

#endif  // DPPG_TRAJECTORY_H_
