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

#include "dppg/envs/environment.h"

#include <cassert>

#include "absl/strings/str_cat.h"
#include "dppg/envs/classic_control.h"
#include "dppg/envs/riverswim.h"

namespace dppg {

Vector Environment::Reset(Rng& rng) {
  state_.observation = DoReset(rng);
  state_.done = false;
  state_.t = 0;
  state_.episode_return = 0.0;
  return state_.observation;
}

StepResult Environment::Step(int action, Rng& rng) {
  assert(!state_.done);
  assert(action >= 0 && action < num_actions());
  StepResult result = DoStep(action, rng);
  ++state_.t;
  state_.episode_return += result.reward;
  if (!result.terminated && state_.t >= max_episode_steps()) {
    result.truncated = true;
  }
  state_.observation = result.observation;
  state_.done = result.done();
  return result;
}

absl::StatusOr<std::unique_ptr<Environment>> MakeEnvironment(std::string_view name) {
  if (name == "riverswim") return std::make_unique<RiverswimEnv>();
  if (name == "cartpole") return std::make_unique<CartPoleEnv>();
  if (name == "acrobot") return std::make_unique<AcrobotEnv>();
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown env '", std::string(name), "' (expected riverswim, cartpole or acrobot)"));
}

}  // namespace dppg
