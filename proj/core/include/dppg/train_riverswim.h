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

#ifndef DPPG_TRAIN_RIVERSWIM_H_
#define DPPG_TRAIN_RIVERSWIM_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/dppg.h"
#include "dppg/envs/riverswim.h"
#include "dppg/policy.h"
#include "dppg/types.h"

namespace dppg {

// How the clipping norm S is chosen each episode.
enum class RiverswimVariant {
  // L2 trust region, S from the noncentral chi-squared quantile.
  kL2,
  // KL trust region with a Fisher matrix estimated on public rollouts.
  kKl,
};

std::string_view VariantName(RiverswimVariant v);
absl::StatusOr<RiverswimVariant> ParseVariant(std::string_view name);

struct RiverswimTrainConfig {
  RiverswimConfig env;
  RiverswimVariant variant = RiverswimVariant::kL2;
  ArchKind features = ArchKind::kLogLinearProduct;
  int episodes = 500;
  // Privacy target; z = ZOfEpsilon(epsilon, delta) unless `z` is set.
  double epsilon = 5.0;
  double delta = 1e-5;
  std::optional<double> z;
  // Trust region size and failure probability.
  double alpha = 3.5;
  double beta = 0.4;
  LrSchedule lr;
  // Public rollouts for the Fisher estimate, refreshed whenever the learning
  // rate changes, or every `fisher_refresh` episodes when positive.
  int fisher_episodes = 25;
  double fisher_regularizer = 1e-3;
  int fisher_refresh = 0;
  // Discount of the returns-to-go behind the advantages.
  double gamma = 0.99;
  // Step size of the linear baseline's squared-error regression.
  double baseline_lr = 0.1;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

struct RiverswimEpisode {
  int episode = 0;
  double lr = 0.0;
  double clip_norm = 0.0;
  // Exact expected return J(pi) of the policy that played this episode.
  double expected_return = 0.0;
  // Undiscounted return of the sampled episode.
  double episode_return = 0.0;
  // |g_hat| before clipping, and whether clipping was active.
  double grad_norm = 0.0;
  bool clipped = false;
  // J* - J(pi) of the policy that played this episode.
  double regret = 0.0;
  double cumulative_regret = 0.0;
};

struct RiverswimResult {
  PolicyParams policy;
  double z = 0.0;
  double epsilon = 0.0;
  double optimal_return = 0.0;
  std::vector<RiverswimEpisode> episodes;
  // argmax_a pi(a | s) is swim-right at every state.
  bool always_right = false;
};

// Action probabilities of a log-linear Riverswim policy, n_states x 2.
Matrix RiverswimActionProbs(const Policy& policy, const Vector& theta,
                            const RiverswimConfig& env);

// Strictly prefers swim-right at every state.
bool PrefersRightEverywhere(const Policy& policy, const Vector& theta,
                            const RiverswimConfig& env);

// Expected regret of the uniform policy over `episodes` episodes.
double UniformPolicyRegret(const RiverswimConfig& env, int episodes);

// One private policy-gradient step per episode (K = 1): roll an episode,
// estimate the gradient with a linear baseline, compute S from the trust
// region, clip, add N(0, z^2 S^2 I) and step with the scheduled rate.
absl::StatusOr<RiverswimResult> TrainLinearRiverswim(const RiverswimTrainConfig& cfg);

}  // namespace dppg

#endif  // DPPG_TRAIN_RIVERSWIM_H_
