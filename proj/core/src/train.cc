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

#include "dppg/train.h"

#include <cmath>
#include <deque>
#include <limits>
#include <memory>

#include "absl/strings/str_cat.h"
#include "dppg/advantage.h"
#include "dppg/critic.h"
#include "dppg/envs/environment.h"
#include "dppg/random.h"
#include "dppg/trajectory.h"

namespace dppg {

namespace {

constexpr int kReturnWindow = 20;

// Pooled critic regression data of one iteration.
struct CriticBatch {
  std::vector<Vector> states;
  std::vector<double> targets;
};

void UpdateCritic(const Critic& critic, const CriticConfig& cfg, const CriticBatch& data,
                  Vector& psi, AdamState& adam, Rng& rng) {
  const int n = static_cast<int>(data.states.size());
  const int dim = static_cast<int>(data.states.front().size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const int batch = std::max(1, n / cfg.minibatches);
  const AdamConfig adam_cfg{cfg.lr};
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < n; start += batch) {
      const int size = std::min(batch, n - start);
      Matrix obs(dim, size);
      Vector targets(size);
      for (int i = 0; i < size; ++i) {
        obs.col(i) = data.states[order[start + i]];
        targets[i] = data.targets[order[start + i]];
      }
      Vector grad = Vector::Zero(psi.size());
      critic.AccumulateLossGrad(psi, obs, targets, Vector::Constant(size, 1.0 / size),
                                grad);
      // AdamStep returns an ascent step; descend the loss.
      psi -= AdamStep(adam_cfg, grad, adam);
    }
  }
}

}  // namespace

absl::Status CriticConfig::Validate() const {
  if (!(lr > 0.0) || epochs < 1 || minibatches < 1 || hidden < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid critic settings: lr ", lr, ", epochs ", epochs, ", minibatches ",
        minibatches, ", hidden ", hidden));
  }
  return absl::OkStatus();
}

absl::Status TrainConfig::Validate() const {
  if (absl::StatusOr<std::unique_ptr<Environment>> env_or = MakeEnvironment(env);
      !env_or.ok()) {
    return env_or.status();
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("gamma must lie in (0, 1), got ", gamma));
  }
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gae_lambda must lie in [0, 1], got ", gae_lambda));
  }
  if (!(global_lr > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("global_lr must be > 0, got ", global_lr));
  }
  if (hidden < 1) return absl::InvalidArgumentError("hidden must be >= 1");
  if (steps_per_user < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("steps_per_user must be >= 1, got ", steps_per_user));
  }
  if (absl::Status s = privacy.Validate(); !s.ok()) return s;
  LocalUpdateConfig local_cfg = local;
  local_cfg.clip_norm = privacy.clip_norm;
  if (absl::Status s = local_cfg.Validate(); !s.ok()) return s;
  if (absl::Status s = critic.Validate(); !s.ok()) return s;
  if (NumIterations() < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "total_env_steps ", total_env_steps, " is below one iteration (K * T = ",
        static_cast<int64_t>(privacy.users_per_update) * steps_per_user, ")"));
  }
  if (eval_episodes < 1 || eval_every_steps < 1) {
    return absl::InvalidArgumentError("eval_episodes and eval_every_steps must be >= 1");
  }
  return absl::OkStatus();
}

int64_t TrainConfig::NumIterations() const {
  return total_env_steps / (static_cast<int64_t>(privacy.users_per_update) * steps_per_user);
}

double TrainResult::best_eval() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const EvalPoint& e : evals) best = std::max(best, e.mean_return);
  return best;
}

std::pair<double, double> MeanStd(const std::vector<double>& values) {
  if (values.empty()) return {std::nan(""), std::nan("")};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
  return {mean, sd};
}

absl::StatusOr<Architecture> DeepArchitecture(const std::string& env, int hidden) {
  absl::StatusOr<std::unique_ptr<Environment>> made = MakeEnvironment(env);
  if (!made.ok()) return made.status();
  return Architecture{ArchKind::kMlp, (*made)->observation_dim(), (*made)->num_actions(),
                      hidden};
}

absl::StatusOr<TrainResult> TrainDeep(const TrainConfig& cfg,
                                      const IterationCallback& callback) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  const SeedTree seeds(cfg.seed);
  const int k = cfg.privacy.users_per_update;
  const int64_t iterations = cfg.NumIterations();

  absl::StatusOr<Architecture> arch = DeepArchitecture(cfg.env, cfg.hidden);
  if (!arch.ok()) return arch.status();
  const std::unique_ptr<Policy> policy = MakePolicy(*arch);
  std::unique_ptr<Environment> prototype = *MakeEnvironment(cfg.env);
  const MlpCritic critic(prototype->observation_dim(), cfg.critic.hidden);

  Rng init_rng = seeds.Stream("init");
  Vector theta = policy->InitialParams(init_rng);
  Vector psi = critic.InitialParams(init_rng);
  const int dim = policy->num_params();

  TrainResult result;
  if (cfg.privacy.z > 0.0) {
    absl::StatusOr<PrivacyBudget> budget = EpsilonOfZ(cfg.privacy.z, cfg.privacy.delta);
    if (!budget.ok()) return budget.status();
    result.budget = *budget;
  } else {
    result.budget = {std::numeric_limits<double>::infinity(), cfg.privacy.delta,
                     Mechanism::kM1};
  }

  LocalUpdateConfig local_cfg = cfg.local;
  local_cfg.clip_norm = cfg.privacy.clip_norm;
  const int n_minibatches =
      (cfg.steps_per_user + local_cfg.minibatch_size - 1) / local_cfg.minibatch_size;
  const int64_t local_steps_per_user =
      static_cast<int64_t>(n_minibatches) * local_cfg.local_epochs;

  std::vector<std::unique_ptr<Environment>> slots;
  for (int u = 0; u < k; ++u) slots.push_back(prototype->Clone());
  std::unique_ptr<Environment> eval_env = prototype->Clone();

  AdamState critic_adam = AdamState::Zero(critic.num_params());
  Vector last_release;
  std::deque<double> recent_returns;
  int64_t env_steps = 0;
  int64_t next_eval = cfg.eval_every_steps;
  int64_t eval_index = 0;

  auto evaluate = [&]() {
    Rng rng = seeds.Stream("eval", eval_index++);
    const auto [mean, sd] =
        MeanStd(EvaluateEpisodes(*eval_env, *policy, theta, cfg.eval_episodes, rng));
    result.evals.push_back({env_steps, mean, sd});
  };

  for (int64_t it = 0; it < iterations; ++it) {
    const Vector theta_old = theta;
    AdamState shared = AdamState::Zero(dim);
    if (cfg.substitute_moments && it > 0) {
      shared.m = last_release;
      shared.v = last_release.cwiseAbs2();
      shared.step = it * local_steps_per_user;
    }

    std::vector<Vector> updates;
    updates.reserve(k);
    double clip_fraction = 0.0;
    CriticBatch critic_data;
    for (int u = 0; u < k; ++u) {
      const int64_t user = it * k + u;
      Environment& env = *slots[u];
      Rng rollout_rng = seeds.Stream("rollout", user);
      if (!cfg.persistent_envs) env.Reset(rollout_rng);
      Trajectory traj = Rollout(env, *policy, theta_old, &critic, psi,
                                cfg.steps_per_user, rollout_rng);
      traj.user_id = user;
      traj.iteration = it;
      env_steps += traj.size();
      for (double r : traj.episode_returns) {
        recent_returns.push_back(r);
        if (recent_returns.size() > kReturnWindow) recent_returns.pop_front();
      }

      // The trajectory is consumed here: one local update and one critic
      // contribution, then it goes out of scope with this loop body.
      const Trajectory consumed = std::move(traj);
      const AdvantageEstimate adv = TrajectoryGae(consumed, cfg.gamma, cfg.gae_lambda);
      AdamState adam = shared;
      Rng local_rng = seeds.Stream("local", user);
      absl::StatusOr<LocalUpdate> update = ComputeLocalUpdatePpo(
          *policy, theta_old, consumed, adv.advantages, local_cfg, adam, local_rng);
      if (!update.ok()) return update.status();
      clip_fraction += update->clip_fraction / k;
      updates.push_back(std::move(update->delta));
      for (int t = 0; t < consumed.size(); ++t) {
        critic_data.states.push_back(consumed.steps[t].state);
        critic_data.targets.push_back(adv.returns[t]);
      }
    }

    Rng noise_rng = seeds.Stream("noise", it);
    absl::StatusOr<UpdateResult> release =
        AggregateAndPrivatize(updates, cfg.privacy, noise_rng);
    if (!release.ok()) return release.status();
    theta += cfg.global_lr * release->noisy;
    last_release = std::move(release->noisy);

    Rng critic_rng = seeds.Stream("critic", it);
    UpdateCritic(critic, cfg.critic, critic_data, psi, critic_adam, critic_rng);

    IterationMetrics m;
    m.iteration = it;
    m.users_seen = (it + 1) * k;
    m.env_steps = env_steps;
    double sum = 0.0;
    for (double r : recent_returns) sum += r;
    m.mean_return = recent_returns.empty() ? std::nan("") : sum / recent_returns.size();
    m.grad_norm = release->mean.norm();
    m.clip_fraction = clip_fraction;
    m.clip_norm = cfg.privacy.clip_norm;
    m.epsilon = result.budget.epsilon;
    result.metrics.push_back(m);
    if (callback) callback(m, theta);

    if (env_steps >= next_eval && it + 1 < iterations) {
      evaluate();
      next_eval += cfg.eval_every_steps;
    }
  }
  evaluate();
  result.policy = {*arch, theta};
  return result;
}

}  // namespace dppg
