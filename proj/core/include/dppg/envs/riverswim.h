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

#ifndef DPPG_ENVS_RIVERSWIM_H_
#define DPPG_ENVS_RIVERSWIM_H_

#include <vector>

#include "absl/status/status.h"
#include "dppg/envs/environment.h"

namespace dppg {

enum RiverswimAction : int { kSwimLeft = 0, kSwimRight = 1 };

// Six-state chain. Swimming left is deterministic and pays `left_reward` only
// when taken at the left bank. Swimming right fights the current: interior
// states advance/stay/retreat with the probabilities below, the left bank
// advances or stays, and the right bank stays or drifts back while paying
// `right_reward` with probability `reward_prob`.
struct RiverswimConfig {
  int n_states = 6;
  int horizon = 20;
  int start_state = 0;
  double reward_prob = 0.6;
  double left_reward = 5.0 / 1000.0;
  double right_reward = 1.0;

  double right_advance = 0.6;
  double right_stay = 0.35;
  double right_retreat = 0.05;
  double bank_advance = 0.6;
  double bank_stay = 0.4;
  double end_stay = 0.6;
  double end_retreat = 0.4;

  absl::Status Validate() const;

  // Row-stochastic n x n matrix P(s' | s, action).
  Matrix TransitionMatrix(int action) const;
  double ExpectedReward(int state, int action) const;
};

struct RiverswimOutcome {
  int next_state = 0;
  double reward = 0.0;
};

RiverswimOutcome RiverswimTransition(const RiverswimConfig& cfg, int state,
                                     int action, Rng& rng);

class RiverswimEnv final : public Environment {
 public:
  explicit RiverswimEnv(RiverswimConfig cfg = {}) : cfg_(cfg) {}

  std::string_view name() const override { return "riverswim"; }
  int observation_dim() const override { return cfg_.n_states; }
  int num_actions() const override { return 2; }
  int max_episode_steps() const override { return cfg_.horizon; }
  std::unique_ptr<Environment> Clone() const override {
    return std::make_unique<RiverswimEnv>(*this);
  }

  const RiverswimConfig& config() const { return cfg_; }
  int position() const { return position_; }

  // One-hot encoding of a state index.
  Vector Observation(int state) const;
  static int StateOf(const Vector& observation);

 protected:
  Vector DoReset(Rng& rng) override;
  StepResult DoStep(int action, Rng& rng) override;

 private:
  RiverswimConfig cfg_;
  int position_ = 0;
};

struct OptimalValue {
  // values[s]: optimal expected return from s with the full horizon left.
  Vector values;
  // Expected optimal return from the start state.
  double optimal_return = 0.0;
  // Greedy action per state with the full horizon remaining.
  std::vector<int> first_step_actions;
};

// Finite-horizon value iteration over the exact kernel.
OptimalValue RiverswimOptimalValue(const RiverswimConfig& cfg);

// Exact expected episode return of a stationary stochastic policy;
// action_probs is n_states x 2.
double RiverswimPolicyReturn(const RiverswimConfig& cfg,
                             const Matrix& action_probs);

}  // namespace dppg

#endif  // DPPG_ENVS_RIVERSWIM_H_
