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

#include "dppg/critic.h"

#include <cassert>

namespace dppg {

double Critic::Value(const Vector& psi, const Vector& obs) const {
  return Values(psi, obs)[0];
}

Vector Critic::LossGrad(const Vector& psi, const Vector& obs, double target) const {
  Vector grad = Vector::Zero(num_params());
  AccumulateLossGrad(psi, obs, Vector::Constant(1, target), Vector::Ones(1), grad);
  return grad;
}

Vector LinearCritic::Values(const Vector& psi, const Matrix& obs) const {
  assert(psi.size() == input_dim_ && obs.rows() == input_dim_);
  return obs.transpose() * psi;
}

void LinearCritic::AccumulateLossGrad(const Vector& psi, const Matrix& obs,
                                      const Vector& targets, const Vector& weights,
                                      Vector& grad) const {
  const Vector residual = (Values(psi, obs) - targets).cwiseProduct(weights);
  grad.noalias() += obs * residual;
}

Vector LinearCritic::InitialParams(Rng&) const { return Vector::Zero(input_dim_); }

MlpCritic::MlpCritic(int input_dim, int hidden) : net_({input_dim, hidden, hidden, 1}) {}

Vector MlpCritic::Values(const Vector& psi, const Matrix& obs) const {
  return net_.Forward(psi, obs).row(0).transpose();
}

void MlpCritic::AccumulateLossGrad(const Vector& psi, const Matrix& obs,
                                   const Vector& targets, const Vector& weights,
                                   Vector& grad) const {
  net_.ForwardBackward(
      psi, obs,
      [&](const Matrix& out) {
        return Matrix((out.row(0).transpose() - targets).cwiseProduct(weights).transpose());
      },
      grad);
}

Vector MlpCritic::InitialParams(Rng& rng) const { return net_.Initialize(1.0, rng); }

}  // namespace dppg
