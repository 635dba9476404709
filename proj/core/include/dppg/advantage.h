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

#ifndef DPPG_ADVANTAGE_H_
#define DPPG_ADVANTAGE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "dppg/policy.h"
#include "dppg/trajectory.h"
#include "dppg/types.h"

namespace dppg {

struct AdvantageEstimate {
  Vector advantages;
  // advantages + values: regression targets for the critic.
  Vector returns;
};

// Generalized advantage estimation over a segment:
//   delta_t = r_t + gamma (1 - terminated_t) next_values[t] - values[t]
//   A_t     = delta_t + gamma lambda (1 - episode_end_t) A_{t+1}
// Splitting the bootstrap (terminated) from the recursion cut (episode_end)
// lets truncated episodes bootstrap from their final state.
absl::StatusOr<AdvantageEstimate> Gae(const Vector& rewards, const Vector& values,
                                      const Vector& next_values,
                                      const std::vector<bool>& terminated,
                                      const std::vector<bool>& episode_end,
                                      double gamma, double lambda);

// Single-flag form: next_values are values shifted by one with
// `bootstrap_value` appended, and done_t both zeroes the bootstrap and cuts
// the recursion.
absl::StatusOr<AdvantageEstimate> Gae(const Vector& rewards, const Vector& values,
                                      double bootstrap_value,
                                      const std::vector<bool>& dones, double gamma,
                                      double lambda);

// GAE over a rollout, using the values and bootstraps stored in it.
AdvantageEstimate TrajectoryGae(const Trajectory& traj, double gamma, double lambda);

// Mean over steps of score(s_t, a_t) * advantages[t].
absl::StatusOr<Vector> PgEstimate(const Policy& policy, const Vector& theta,
                                  const Trajectory& traj, const Vector& advantages);

}  // namespace dppg

#endif  // DPPG_ADVANTAGE_H_
