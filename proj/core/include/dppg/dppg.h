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

#ifndef DPPG_DPPG_H_
#define DPPG_DPPG_H_

#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/accountant.h"
#include "dppg/adam.h"
#include "dppg/policy.h"
#include "dppg/trajectory.h"
#include "dppg/types.h"

namespace dppg {

// Advantage standardisation inside the local update.
enum class AdvantageNormalization { kNone, kTrajectory, kMinibatch };

std::string_view AdvantageNormalizationName(AdvantageNormalization n);
absl::StatusOr<AdvantageNormalization> ParseAdvantageNormalization(std::string_view name);

// Local PPO-style update run by each user on their own trajectory.
struct LocalUpdateConfig {
  int local_epochs = 8;
  int minibatch_size = 32;
  double local_lr = 7.26e-4;
  // Radius S of the ball around theta_old the local iterate is projected to.
  double clip_norm = 0.05;
  double entropy_coef = 0.0;
  AdvantageNormalization normalization = AdvantageNormalization::kNone;

  absl::Status Validate() const;
};

struct LocalUpdate {
  // g_u = theta - theta_old, |g_u| <= S.
  Vector delta;
  // Fraction of minibatch steps whose iterate had to be projected.
  double clip_fraction = 0.0;
};

// Maximum allowed |stored - recomputed| behaviour log-probability.
inline constexpr double kLogProbTolerance = 1e-10;

// Ratio-weighted surrogate on a minibatch plus the entropy bonus:
//   (1/B) sum_t [pi_theta(a_t|s_t) / pi_old(a_t|s_t)] A_t + c H(pi_theta(.|s_t)).
// Accumulates its gradient w.r.t. theta into `grad` and returns the value.
double LocalSurrogate(const Policy& policy, const Vector& theta, const Matrix& states,
                      const std::vector<int>& actions, const Vector& old_log_probs,
                      const Vector& advantages, double entropy_coef, Vector* grad);

// Runs local_epochs passes of shuffled minibatches over the trajectory. Each
// minibatch takes one Adam ascent step on LocalSurrogate and projects the
// iterate back into the S-ball around theta_old. `adam` is the user's copy of
// the optimizer state. Fails if the trajectory's stored log-probabilities were
// not produced by theta_old.
absl::StatusOr<LocalUpdate> ComputeLocalUpdatePpo(const Policy& policy,
                                                  const Vector& theta_old,
                                                  const Trajectory& traj,
                                                  const Vector& advantages,
                                                  const LocalUpdateConfig& cfg,
                                                  AdamState& adam, Rng& rng);

struct UpdateResult {
  // Fixed-divisor mean of the local updates, sum / K.
  Vector mean;
  // mean + N(0, sigma^2 I).
  Vector noisy;
  // sigma = z S / K as applied.
  double noise_stddev = 0.0;
};

// Averages exactly K local updates and adds Gaussian noise with standard
// deviation z S / K. Fails if any update is longer than S + 1e-9, which means
// clipping upstream was broken.
absl::StatusOr<UpdateResult> AggregateAndPrivatize(const std::vector<Vector>& updates,
                                                   const PrivacyParams& privacy, Rng& rng);

// Piecewise-constant decay: eta0 divided by `factor` every `every` episodes,
// never below `min_lr`.
struct LrSchedule {
  double eta0 = 12.0;
  int every = 50;
  double factor = 5.0;
  double min_lr = 0.06;

  absl::Status Validate() const;
  double At(int episode) const;
  // True when the rate changes at this episode (including episode 0).
  bool ChangesAt(int episode) const;
};

}  // namespace dppg

#endif  // DPPG_DPPG_H_
