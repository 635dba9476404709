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

#include "dppg/envs/riverswim.h"

#include <cassert>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dppg/random.h"

namespace dppg {

namespace {

absl::Status CheckProbability(const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("riverswim ", name, " must lie in [0, 1], got ", p));
  }
  return absl::OkStatus();
}

absl::Status CheckRow(const char* name, double sum) {
  if (std::abs(sum - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("riverswim ", name, " probabilities sum to ", sum));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status RiverswimConfig::Validate() const {
  if (n_states < 2) {
    return absl::InvalidArgumentError("riverswim needs at least 2 states");
  }
  if (horizon < 1) return absl::InvalidArgumentError("riverswim horizon must be >= 1");
  if (start_state < 0 || start_state >= n_states) {
    return absl::InvalidArgumentError("riverswim start_state out of range");
  }
  if (!(reward_prob > 0.0 && reward_prob <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("riverswim reward_prob must lie in (0, 1], got ", reward_prob));
  }
  if (!(left_reward >= 0.0 && left_reward <= 1.0 && right_reward >= 0.0 &&
        right_reward <= 1.0)) {
    return absl::InvalidArgumentError("riverswim rewards must lie in [0, 1]");
  }
  for (auto [name, p] : {std::pair{"right_advance", right_advance},
                         {"right_stay", right_stay},
                         {"right_retreat", right_retreat},
                         {"bank_advance", bank_advance},
                         {"bank_stay", bank_stay},
                         {"end_stay", end_stay},
                         {"end_retreat", end_retreat}}) {
    if (absl::Status s = CheckProbability(name, p); !s.ok()) return s;
  }
  if (absl::Status s = CheckRow("interior", right_advance + right_stay + right_retreat);
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckRow("bank", bank_advance + bank_stay); !s.ok()) return s;
  return CheckRow("end", end_stay + end_retreat);
}

Matrix RiverswimConfig::TransitionMatrix(int action) const {
  const int n = n_states;
  Matrix p = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    if (action == kSwimLeft) {
      p(s, s == 0 ? 0 : s - 1) = 1.0;
    } else if (s == 0) {
      p(0, 1) = bank_advance;
      p(0, 0) = bank_stay;
    } else if (s == n - 1) {
      p(s, s) = end_stay;
      p(s, s - 1) = end_retreat;
    } else {
      p(s, s + 1) = right_advance;
      p(s, s) = right_stay;
      p(s, s - 1) = right_retreat;
    }
  }
  return p;
}

double RiverswimConfig::ExpectedReward(int state, int action) const {
  if (action == kSwimLeft) return state == 0 ? left_reward : 0.0;
  return state == n_states - 1 ? reward_prob * right_reward : 0.0;
}

RiverswimOutcome RiverswimTransition(const RiverswimConfig& cfg, int state,
                                     int action, Rng& rng) {
  assert(state >= 0 && state < cfg.n_states);
  const int last = cfg.n_states - 1;
  if (action == kSwimLeft) {
    return {state == 0 ? 0 : state - 1, state == 0 ? cfg.left_reward : 0.0};
  }
  double reward = 0.0;
  if (state == last && Uniform(0.0, 1.0, rng) < cfg.reward_prob) {
    reward = cfg.right_reward;
  }
  const double u = Uniform(0.0, 1.0, rng);
  int next = state;
  if (state == 0) {
    next = u < cfg.bank_advance ? 1 : 0;
  } else if (state == last) {
    next = u < cfg.end_stay ? last : last - 1;
  } else if (u < cfg.right_advance) {
    next = state + 1;
  } else if (u < cfg.right_advance + cfg.right_stay) {
    next = state;
  } else {
    next = state - 1;
  }
  return {next, reward};
}

Vector RiverswimEnv::Observation(int state) const {
  Vector obs = Vector::Zero(cfg_.n_states);
  obs[state] = 1.0;
  return obs;
}

int RiverswimEnv::StateOf(const Vector& observation) {
  Eigen::Index idx = 0;
  observation.maxCoeff(&idx);
  return static_cast<int>(idx);
}

Vector RiverswimEnv::DoReset(Rng&) {
  position_ = cfg_.start_state;
  return Observation(position_);
}

StepResult RiverswimEnv::DoStep(int action, Rng& rng) {
  const RiverswimOutcome out = RiverswimTransition(cfg_, position_, action, rng);
  position_ = out.next_state;
  return {Observation(position_), out.reward, false, false};
}

OptimalValue RiverswimOptimalValue(const RiverswimConfig& cfg) {
  const int n = cfg.n_states;
  const Matrix left = cfg.TransitionMatrix(kSwimLeft);
  const Matrix right = cfg.TransitionMatrix(kSwimRight);
  Vector value = Vector::Zero(n);
  std::vector<int> greedy(n, kSwimRight);
  for (int h = 0; h < cfg.horizon; ++h) {
    const Vector q_left = left * value;
    const Vector q_right = right * value;
    Vector next(n);
    for (int s = 0; s < n; ++s) {
      const double ql = cfg.ExpectedReward(s, kSwimLeft) + q_left[s];
      const double qr = cfg.ExpectedReward(s, kSwimRight) + q_right[s];
      next[s] = std::max(ql, qr);
      greedy[s] = qr >= ql ? kSwimRight : kSwimLeft;
    }
    value = std::move(next);
  }
  return {value, value[cfg.start_state], greedy};
}

double RiverswimPolicyReturn(const RiverswimConfig& cfg, const Matrix& action_probs) {
  const int n = cfg.n_states;
  assert(action_probs.rows() == n && action_probs.cols() == 2);
  const Matrix left = cfg.TransitionMatrix(kSwimLeft);
  const Matrix right = cfg.TransitionMatrix(kSwimRight);
  Vector value = Vector::Zero(n);
  for (int h = 0; h < cfg.horizon; ++h) {
    const Vector q_left = left * value;
    const Vector q_right = right * value;
    Vector next(n);
    for (int s = 0; s < n; ++s) {
      next[s] = action_probs(s, kSwimLeft) *
                    (cfg.ExpectedReward(s, kSwimLeft) + q_left[s]) +
                action_probs(s, kSwimRight) *
                    (cfg.ExpectedReward(s, kSwimRight) + q_right[s]);
    }
    value = std::move(next);
  }
  return value[cfg.start_state];
}

}  // namespace dppg
