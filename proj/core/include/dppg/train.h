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

#ifndef DPPG_TRAIN_H_
#define DPPG_TRAIN_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/accountant.h"
#include "dppg/dppg.h"
#include "dppg/policy.h"
#include "dppg/types.h"

namespace dppg {

// Value-function training at iteration boundaries, on the iteration's pooled
// un-noised data.
struct CriticConfig {
  double lr = 1e-3;
  int epochs = 8;
  int minibatches = 4;
  int hidden = 64;

  absl::Status Validate() const;
};

struct TrainConfig {
  std::string env = "cartpole";
  int hidden = 64;
  double gamma = 0.99;
  double gae_lambda = 0.85;
  // Global step theta <- theta + global_lr * noisy mean.
  double global_lr = 1.0;
  // z, delta, S and K. S doubles as the local projection radius.
  PrivacyParams privacy;
  int steps_per_user = 64;
  // local.clip_norm is overwritten with privacy.clip_norm.
  LocalUpdateConfig local;
  CriticConfig critic;
  int64_t total_env_steps = 200'000;
  uint64_t seed = 0;
  // User u continues the episode left running by user u - K instead of
  // starting from a fresh reset.
  bool persistent_envs = true;
  // At each iteration start every user's Adam moments are replaced with the
  // last released update and its elementwise square.
  bool substitute_moments = true;
  int64_t eval_every_steps = 10'000;
  int eval_episodes = 10;

  absl::Status Validate() const;
  int64_t NumIterations() const;
};

struct IterationMetrics {
  int64_t iteration = 0;
  int64_t users_seen = 0;
  int64_t env_steps = 0;
  // Mean return of the last (up to) 20 training episodes that ended.
  double mean_return = 0.0;
  // |clipped mean| before noise.
  double grad_norm = 0.0;
  // Mean over users of the fraction of projected local steps.
  double clip_fraction = 0.0;
  double clip_norm = 0.0;
  // Infinite without noise.
  double epsilon = 0.0;
};

struct EvalPoint {
  int64_t env_steps = 0;
  double mean_return = 0.0;
  double std_return = 0.0;
};

struct TrainResult {
  PolicyParams policy;
  std::vector<IterationMetrics> metrics;
  // Periodic evaluations, the last one taken after training.
  std::vector<EvalPoint> evals;
  PrivacyBudget budget;

  double best_eval() const;
  const EvalPoint& final_eval() const { return evals.back(); }
};

// Called after every global step with the new parameters.
using IterationCallback = std::function<void(const IterationMetrics&, const Vector&)>;

// Policy architecture used by TrainDeep for an environment.
absl::StatusOr<Architecture> DeepArchitecture(const std::string& env, int hidden);

// Differentially private policy gradient with local PPO updates. Every
// iteration K users each collect T steps with the current policy, compute a
// local update clipped to norm S, and the server releases the noisy mean.
absl::StatusOr<TrainResult> TrainDeep(const TrainConfig& cfg,
                                      const IterationCallback& callback = nullptr);

// Mean and sample standard deviation.
std::pair<double, double> MeanStd(const std::vector<double>& values);

}  // namespace dppg

#endif  // DPPG_TRAIN_H_
