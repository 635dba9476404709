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

#include "dppg/advantage.h"

#include "absl/strings/str_cat.h"

namespace dppg {

absl::StatusOr<AdvantageEstimate> Gae(const Vector& rewards, const Vector& values,
                                      const Vector& next_values,
                                      const std::vector<bool>& terminated,
                                      const std::vector<bool>& episode_end,
                                      double gamma, double lambda) {
  const Eigen::Index n = rewards.size();
  if (values.size() != n || next_values.size() != n ||
      static_cast<Eigen::Index>(terminated.size()) != n ||
      static_cast<Eigen::Index>(episode_end.size()) != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "GAE inputs disagree in length: rewards ", n, ", values ", values.size(),
        ", next_values ", next_values.size(), ", terminated ", terminated.size(),
        ", episode_end ", episode_end.size()));
  }
  AdvantageEstimate est{Vector(n), Vector(n)};
  double running = 0.0;
  for (Eigen::Index t = n - 1; t >= 0; --t) {
    const double bootstrap = terminated[t] ? 0.0 : gamma * next_values[t];
    const double delta = rewards[t] + bootstrap - values[t];
    running = delta + (episode_end[t] ? 0.0 : gamma * lambda * running);
    est.advantages[t] = running;
  }
  est.returns = est.advantages + values;
  return est;
}

absl::StatusOr<AdvantageEstimate> Gae(const Vector& rewards, const Vector& values,
                                      double bootstrap_value,
                                      const std::vector<bool>& dones, double gamma,
                                      double lambda) {
  if (values.size() != rewards.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "GAE inputs disagree in length: rewards ", rewards.size(), ", values ",
        values.size()));
  }
  const Eigen::Index n = values.size();
  Vector next(n);
  if (n > 0) {
    next.head(n - 1) = values.tail(n - 1);
    next[n - 1] = bootstrap_value;
  }
  return Gae(rewards, values, next, dones, dones, gamma, lambda);
}

AdvantageEstimate TrajectoryGae(const Trajectory& traj, double gamma, double lambda) {
  const int n = traj.size();
  Vector rewards(n), values(n), next_values(n);
  std::vector<bool> terminated(n), episode_end(n);
  for (int t = 0; t < n; ++t) {
    const Transition& tr = traj.steps[t];
    rewards[t] = tr.reward;
    values[t] = tr.value;
    next_values[t] = tr.next_value;
    terminated[t] = tr.terminated;
    episode_end[t] = tr.done();
  }
  return *Gae(rewards, values, next_values, terminated, episode_end, gamma, lambda);
}

absl::StatusOr<Vector> PgEstimate(const Policy& policy, const Vector& theta,
                                  const Trajectory& traj, const Vector& advantages) {
  if (advantages.size() != traj.size() || traj.size() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "policy gradient needs one advantage per step: ", traj.size(),
        " steps, ", advantages.size(), " advantages"));
  }
  Vector grad = Vector::Zero(policy.num_params());
  const std::vector<int> actions = traj.Actions();
  const double inv_n = 1.0 / traj.size();
  policy.ForwardBackward(theta, traj.States(),
                         [&](const Matrix& logits) {
                           Matrix d = -LogSoftmax(logits).array().exp().matrix();
                           for (int t = 0; t < traj.size(); ++t) {
                             d(actions[t], t) += 1.0;
                             d.col(t) *= advantages[t] * inv_n;
                           }
                           return d;
                         },
                         grad);
  return grad;
}

}  // namespace dppg
