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

#ifndef DPPG_ENVS_ENVIRONMENT_H_
#define DPPG_ENVS_ENVIRONMENT_H_

#include <memory>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dppg/types.h"

namespace dppg {

struct StepResult {
  Vector observation;
  double reward = 0.0;
  // Reached a true terminal state; no bootstrapping past it.
  bool terminated = false;
  // Hit the episode step limit.
  bool truncated = false;

  bool done() const { return terminated || truncated; }
};

// Bookkeeping shared by every environment.
struct EnvState {
  Vector observation;
  bool done = true;
  int t = 0;
  double episode_return = 0.0;
};

// Episodic, discrete-action environment. Step() enforces the episode length
// and keeps EnvState current; subclasses implement the dynamics only.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view name() const = 0;
  virtual int observation_dim() const = 0;
  virtual int num_actions() const = 0;
  virtual int max_episode_steps() const = 0;
  virtual std::unique_ptr<Environment> Clone() const = 0;

  Vector Reset(Rng& rng);
  // Precondition: an episode is running (Reset was called, not yet done).
  StepResult Step(int action, Rng& rng);

  const EnvState& state() const { return state_; }

 protected:
  virtual Vector DoReset(Rng& rng) = 0;
  // Advances the dynamics; truncation is handled by the base class.
  virtual StepResult DoStep(int action, Rng& rng) = 0;

 private:
  EnvState state_;
};

// Environment named by the config key `env`: riverswim, cartpole or acrobot.
// Riverswim uses its default configuration here.
absl::StatusOr<std::unique_ptr<Environment>> MakeEnvironment(std::string_view name);

}  // namespace dppg

#endif  // DPPG_ENVS_ENVIRONMENT_H_
