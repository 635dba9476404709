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

#include "dppg/dppg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dppg {

namespace {

// (x - mean) / (sample sd + 1e-8); left alone for fewer than two entries.
Vector Standardize(const Vector& x) {
  const Eigen::Index n = x.size();
  if (n < 2) return x;
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().sum() / (n - 1));
  return (x.array() - mean) / (sd + 1e-8);
}

}  // namespace

std::string_view AdvantageNormalizationName(AdvantageNormalization n) {
  switch (n) {
    case AdvantageNormalization::kNone:
      return "none";
    case AdvantageNormalization::kTrajectory:
      return "trajectory";
    case AdvantageNormalization::kMinibatch:
      return "minibatch";
  }
  return "";
}

absl::StatusOr<AdvantageNormalization> ParseAdvantageNormalization(std::string_view name) {
  for (AdvantageNormalization n :
       {AdvantageNormalization::kNone, AdvantageNormalization::kTrajectory,
        AdvantageNormalization::kMinibatch}) {
    if (name == AdvantageNormalizationName(n)) return n;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown advantage normalization '", std::string(name),
      "' (expected none, trajectory or minibatch)"));
}

absl::Status LocalUpdateConfig::Validate() const {
  if (local_epochs < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("local_epochs must be >= 1, got ", local_epochs));
  }
  if (minibatch_size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("minibatch_size must be >= 1, got ", minibatch_size));
  }
  if (!(local_lr > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("local_lr must be > 0, got ", local_lr));
  }
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_norm must be > 0, got ", clip_norm));
  }
  if (!(entropy_coef >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("entropy_coef must be >= 0, got ", entropy_coef));
  }
  return absl::OkStatus();
}

double LocalSurrogate(const Policy& policy, const Vector& theta, const Matrix& states,
                      const std::vector<int>& actions, const Vector& old_log_probs,
                      const Vector& advantages, double entropy_coef, Vector* grad) {
  const Eigen::Index b = states.cols();
  const double inv_b = 1.0 / static_cast<double>(b);
  double value = 0.0;
  auto dlogits = [&](const Matrix& logits) {
    const Matrix logp = LogSoftmax(logits);
    const Matrix p = logp.array().exp();
    Matrix d(logits.rows(), b);
    for (Eigen::Index t = 0; t < b; ++t) {
      const double ratio = std::exp(logp(actions[t], t) - old_log_probs[t]);
      const double entropy = -(p.col(t).array() * logp.col(t).array()).sum();
      value += inv_b * (ratio * advantages[t] + entropy_coef * entropy);
      // d ratio / d logits = ratio (onehot - p); dH / d logits = -p (log p + H).
      d.col(t) = -ratio * advantages[t] * p.col(t);
      d(actions[t], t) += ratio * advantages[t];
      d.col(t) -= entropy_coef * (p.col(t).array() * (logp.col(t).array() + entropy)).matrix();
      d.col(t) *= inv_b;
    }
    return d;
  };
  if (grad != nullptr) {
    policy.ForwardBackward(theta, states, dlogits, *grad);
  } else {
    dlogits(policy.Logits(theta, states));
  }
  return value;
}

absl::StatusOr<LocalUpdate> ComputeLocalUpdatePpo(const Policy& policy,
                                                  const Vector& theta_old,
                                                  const Trajectory& traj,
                                                  const Vector& advantages,
                                                  const LocalUpdateConfig& cfg,
                                                  AdamState& adam, Rng& rng) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  const int n = traj.size();
  if (n == 0 || advantages.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "local update needs one advantage per step: ", n, " steps, ",
        advantages.size(), " advantages"));
  }
  const int dim = policy.num_params();
  if (theta_old.size() != dim || adam.m.size() != dim || adam.v.size() != dim) {
    return absl::InvalidArgumentError("parameter and optimizer dimensions disagree");
  }

  const Matrix states = traj.States();
  const std::vector<int> actions = traj.Actions();
  Vector old_log_probs(n);
  const Matrix logp_old = LogSoftmax(policy.Logits(theta_old, states));
  for (int t = 0; t < n; ++t) {
    old_log_probs[t] = traj.steps[t].log_prob;
    if (!(std::abs(logp_old(actions[t], t) - old_log_probs[t]) <= kLogProbTolerance)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "on-policy contract violated: step ", t, " was logged with log-prob ",
          old_log_probs[t], " but theta_old gives ", logp_old(actions[t], t)));
    }
  }

  const Vector adv = cfg.normalization == AdvantageNormalization::kTrajectory
                         ? Standardize(advantages)
                         : advantages;

  const AdamConfig adam_cfg{cfg.local_lr};
  const int batch = std::min(cfg.minibatch_size, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  Vector delta = Vector::Zero(dim);
  int steps = 0;
  int projected = 0;
  for (int epoch = 0; epoch < cfg.local_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < n; start += batch) {
      const int size = std::min(batch, n - start);
      Matrix mb_states(states.rows(), size);
      std::vector<int> mb_actions(size);
      Vector mb_logp(size), mb_adv(size);
      for (int i = 0; i < size; ++i) {
        const int t = order[start + i];
        mb_states.col(i) = states.col(t);
        mb_actions[i] = actions[t];
        mb_logp[i] = old_log_probs[t];
        mb_adv[i] = adv[t];
      }
      if (cfg.normalization == AdvantageNormalization::kMinibatch) {
        mb_adv = Standardize(mb_adv);
      }
      Vector grad = Vector::Zero(dim);
      LocalSurrogate(policy, theta_old + delta, mb_states, mb_actions, mb_logp, mb_adv,
                     cfg.entropy_coef, &grad);
      delta += AdamStep(adam_cfg, grad, adam);
      ClipResult clip = ClipL2(delta, cfg.clip_norm);
      if (clip.factor < 1.0) {
        ++projected;
        delta = std::move(clip.clipped);
      }
      ++steps;
    }
  }
  if (!(delta.norm() <= cfg.clip_norm)) {
    return absl::InternalError(absl::StrCat("local update norm ", delta.norm(),
                                            " exceeds S = ", cfg.clip_norm));
  }
  return LocalUpdate{std::move(delta), static_cast<double>(projected) / steps};
}

absl::StatusOr<UpdateResult> AggregateAndPrivatize(const std::vector<Vector>& updates,
                                                   const PrivacyParams& privacy, Rng& rng) {
  if (absl::Status s = privacy.Validate(); !s.ok()) return s;
  if (static_cast<int>(updates.size()) != privacy.users_per_update) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", privacy.users_per_update, " local updates, got ", updates.size()));
  }
  const Eigen::Index dim = updates.front().size();
  Vector sum = Vector::Zero(dim);
  for (size_t u = 0; u < updates.size(); ++u) {
    if (updates[u].size() != dim) {
      return absl::InvalidArgumentError("local updates disagree in dimension");
    }
    const double norm = updates[u].norm();
    if (!(norm <= privacy.clip_norm + 1e-9)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "local update ", u, " has norm ", norm, " > S = ", privacy.clip_norm,
          "; upstream clipping failed"));
    }
    sum += updates[u];
  }
  UpdateResult result;
  result.mean = sum / static_cast<double>(privacy.users_per_update);
  result.noise_stddev = privacy.NoiseStddev();
  result.noisy = GaussianPerturb(result.mean, result.noise_stddev, rng);
  return result;
}

absl::Status LrSchedule::Validate() const {
  if (!(eta0 > 0.0) || !(min_lr > 0.0) || !(factor >= 1.0) || every < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid learning-rate schedule: eta0 ", eta0, ", every ", every, ", factor ",
        factor, ", min ", min_lr));
  }
  return absl::OkStatus();
}

double LrSchedule::At(int episode) const {
  double eta = eta0;
  for (int k = episode / every; k > 0 && eta > min_lr; --k) eta /= factor;
  return std::max(eta, min_lr);
}

bool LrSchedule::ChangesAt(int episode) const {
  return episode == 0 || At(episode) != At(episode - 1);
}

}  // namespace dppg
