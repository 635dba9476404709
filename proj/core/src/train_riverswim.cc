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

#include "dppg/train_riverswim.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dppg/accountant.h"
#include "dppg/advantage.h"
#include "dppg/critic.h"
#include "dppg/random.h"
#include "dppg/trajectory.h"
#include "dppg/trust_region.h"

namespace dppg {

std::string_view VariantName(RiverswimVariant v) {
  return v == RiverswimVariant::kL2 ? "l2" : "kl";
}

absl::StatusOr<RiverswimVariant> ParseVariant(std::string_view name) {
  if (name == "l2") return RiverswimVariant::kL2;
  if (name == "kl") return RiverswimVariant::kKl;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown riverswim variant '", std::string(name), "' (expected l2 or kl)"));
}

absl::Status RiverswimTrainConfig::Validate() const {
  if (absl::Status s = env.Validate(); !s.ok()) return s;
  if (features == ArchKind::kMlp) {
    return absl::InvalidArgumentError("riverswim training needs log-linear features");
  }
  if (episodes < 1) {
    return absl::InvalidArgumentError(absl::StrCat("episodes must be >= 1, got ", episodes));
  }
  if (z.has_value() && !(*z >= 0.0 && std::isfinite(*z))) {
    return absl::InvalidArgumentError(absl::StrCat("z must be >= 0, got ", *z));
  }
  if (!z.has_value() && !(epsilon > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (!(alpha > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("need alpha > 0 and beta in (0, 1), got ", alpha, ", ", beta));
  }
  if (absl::Status s = lr.Validate(); !s.ok()) return s;
  if (variant == RiverswimVariant::kKl &&
      (fisher_episodes < 1 || !(fisher_regularizer >= 0.0) || fisher_refresh < 0)) {
    return absl::InvalidArgumentError("invalid Fisher estimation settings");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("gamma must lie in (0, 1], got ", gamma));
  }
  if (!(baseline_lr >= 0.0)) return absl::InvalidArgumentError("baseline_lr must be >= 0");
  return absl::OkStatus();
}

Matrix RiverswimActionProbs(const Policy& policy, const Vector& theta,
                            const RiverswimConfig& env) {
  const Matrix obs = Matrix::Identity(env.n_states, env.n_states);
  return LogSoftmax(policy.Logits(theta, obs)).array().exp().transpose();
}

bool PrefersRightEverywhere(const Policy& policy, const Vector& theta,
                            const RiverswimConfig& env) {
  const Matrix obs = Matrix::Identity(env.n_states, env.n_states);
  const Matrix logits = policy.Logits(theta, obs);
  for (int s = 0; s < env.n_states; ++s) {
    if (!(logits(RiverswimAction::kSwimRight, s) > logits(RiverswimAction::kSwimLeft, s))) {
      return false;
    }
  }
  return true;
}

double UniformPolicyRegret(const RiverswimConfig& env, int episodes) {
  const double j_star = RiverswimOptimalValue(env).optimal_return;
  const double j_uniform = RiverswimPolicyReturn(env, Matrix::Constant(env.n_states, 2, 0.5));
  return episodes * (j_star - j_uniform);
}

absl::StatusOr<RiverswimResult> TrainLinearRiverswim(const RiverswimTrainConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  const SeedTree seeds(cfg.seed);

  RiverswimResult result;
  if (cfg.z.has_value()) {
    result.z = *cfg.z;
    if (result.z > 0.0) {
      absl::StatusOr<PrivacyBudget> budget = EpsilonOfZ(result.z, cfg.delta);
      if (!budget.ok()) return budget.status();
      result.epsilon = budget->epsilon;
    } else {
      result.epsilon = std::numeric_limits<double>::infinity();
    }
  } else {
    absl::StatusOr<double> z = ZOfEpsilon(cfg.epsilon, cfg.delta);
    if (!z.ok()) return z.status();
    result.z = *z;
    result.epsilon = cfg.epsilon;
  }

  const Architecture arch{cfg.features, cfg.env.n_states, 2};
  const std::unique_ptr<Policy> policy = MakePolicy(arch);
  const LinearCritic baseline(cfg.env.n_states);
  RiverswimEnv env(cfg.env);
  Rng init_rng = seeds.Stream("init");
  Vector theta = policy->InitialParams(init_rng);
  Vector psi = baseline.InitialParams(init_rng);
  const int d = policy->num_params();
  result.optimal_return = RiverswimOptimalValue(cfg.env).optimal_return;

  std::optional<FisherMatrix> fisher;
  int64_t fisher_index = 0;
  double cumulative = 0.0;
  for (int e = 0; e < cfg.episodes; ++e) {
    const double eta = cfg.lr.At(e);
    const TrustRegionParams tr{cfg.alpha, cfg.beta, eta, result.z, d};
    absl::StatusOr<double> clip_norm;
    if (cfg.variant == RiverswimVariant::kL2) {
      clip_norm = ClipNormL2Quantile(tr);
    } else {
      const bool refresh = !fisher.has_value() ||
                           (cfg.fisher_refresh > 0 ? e % cfg.fisher_refresh == 0
                                                   : cfg.lr.ChangesAt(e));
      if (refresh) {
        // Public side information: separate rollouts that never reach the
        // released update.
        Rng fisher_rng = seeds.Stream("fisher", fisher_index++);
        RiverswimEnv public_env(cfg.env);
        std::vector<Trajectory> rollouts;
        for (int i = 0; i < cfg.fisher_episodes; ++i) {
          public_env.Reset(fisher_rng);
          rollouts.push_back(Rollout(public_env, *policy, theta, nullptr, psi,
                                     cfg.env.horizon, fisher_rng));
        }
        absl::StatusOr<FisherMatrix> f =
            FisherEstimate(*policy, theta, rollouts, cfg.fisher_regularizer);
        if (!f.ok()) return f.status();
        fisher = std::move(*f);
      }
      clip_norm = ClipNormKl(tr, *fisher);
    }
    if (!clip_norm.ok()) return clip_norm.status();

    const double j = RiverswimPolicyReturn(cfg.env, RiverswimActionProbs(*policy, theta, cfg.env));
    const double regret = result.optimal_return - j;
    cumulative += regret;
    RiverswimEpisode record;
    record.episode = e;
    record.lr = eta;
    record.clip_norm = *clip_norm;
    record.expected_return = j;
    record.regret = regret;
    record.cumulative_regret = cumulative;

    Rng episode_rng = seeds.Stream("episode", e);
    env.Reset(episode_rng);
    const Trajectory traj =
        Rollout(env, *policy, theta, nullptr, psi, cfg.env.horizon, episode_rng);

    // Discounted returns-to-go minus the linear baseline.
    const int h = traj.size();
    const Matrix states = traj.States();
    const Vector values = baseline.Values(psi, states);
    Vector returns(h);
    double g = 0.0;
    for (int t = h - 1; t >= 0; --t) {
      g = traj.steps[t].reward + cfg.gamma * g;
      returns[t] = g;
    }
    const Vector advantages = returns - values;
    absl::StatusOr<Vector> ghat = PgEstimate(*policy, theta, traj, advantages);
    if (!ghat.ok()) return ghat.status();

    Vector baseline_grad = Vector::Zero(baseline.num_params());
    baseline.AccumulateLossGrad(psi, states, returns, Vector::Constant(h, 1.0 / h),
                                baseline_grad);
    psi -= cfg.baseline_lr * baseline_grad;

    const ClipResult clipped = ClipL2(*ghat, *clip_norm);
    record.episode_return = traj.episode_returns.empty() ? 0.0 : traj.episode_returns.front();
    record.grad_norm = ghat->norm();
    record.clipped = clipped.factor < 1.0;
    result.episodes.push_back(record);
    Rng noise_rng = seeds.Stream("noise", e);
    const PrivacyParams privacy{result.z, cfg.delta, *clip_norm, 1};
    theta += eta * GaussianPerturb(clipped.clipped, privacy.NoiseStddev(), noise_rng);
  }
  result.policy = {arch, theta};
  result.always_right = PrefersRightEverywhere(*policy, theta, cfg.env);
  return result;
}

}  // namespace dppg
