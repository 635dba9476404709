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

#ifndef DPPG_CRITIC_H_
#define DPPG_CRITIC_H_

#include <memory>

#include "dppg/mlp.h"
#include "dppg/types.h"

namespace dppg {

// State-value function V_psi(s) over a flat parameter vector. Only trained on
// un-noised data and never released, so it shares no parameters with the
// policy.
class Critic {
 public:
  virtual ~Critic() = default;

  virtual int num_params() const = 0;
  // One value per observation column.
  virtual Vector Values(const Vector& psi, const Matrix& obs) const = 0;
  // Accumulates into grad the gradient of 0.5 * sum_j w_j (V(s_j) - y_j)^2.
  virtual void AccumulateLossGrad(const Vector& psi, const Matrix& obs,
                                  const Vector& targets, const Vector& weights,
                                  Vector& grad) const = 0;
  virtual Vector InitialParams(Rng& rng) const = 0;

  double Value(const Vector& psi, const Vector& obs) const;
  // Gradient of 0.5 (V(s) - target)^2.
  Vector LossGrad(const Vector& psi, const Vector& obs, double target) const;
};

// V(s) = psi^T obs; with one-hot observations this is a tabular baseline.
class LinearCritic final : public Critic {
 public:
  explicit LinearCritic(int input_dim) : input_dim_(input_dim) {}

  int num_params() const override { return input_dim_; }
  Vector Values(const Vector& psi, const Matrix& obs) const override;
  void AccumulateLossGrad(const Vector& psi, const Matrix& obs,
                          const Vector& targets, const Vector& weights,
                          Vector& grad) const override;
  Vector InitialParams(Rng& rng) const override;

 private:
  int input_dim_;
};

// tanh MLP input -> hidden -> hidden -> 1.
class MlpCritic final : public Critic {
 public:
  MlpCritic(int input_dim, int hidden);

  int num_params() const override { return net_.num_params(); }
  Vector Values(const Vector& psi, const Matrix& obs) const override;
  void AccumulateLossGrad(const Vector& psi, const Matrix& obs,
                          const Vector& targets, const Vector& weights,
                          Vector& grad) const override;
  Vector InitialParams(Rng& rng) const override;

 private:
  Mlp net_;
};

}  // namespace dppg

#endif  // DPPG_CRITIC_H_
