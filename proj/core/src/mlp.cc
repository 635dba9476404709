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

#include "dppg/mlp.h"

#include <cassert>

#include <Eigen/QR>

#include "dppg/random.h"

namespace dppg {

namespace {

using ConstMap = Eigen::Map<const Matrix>;
using ConstVecMap = Eigen::Map<const Vector>;

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  assert(sizes_.size() >= 2);
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    weight_offsets_.push_back(num_params_);
    num_params_ += sizes_[l + 1] * sizes_[l];
    bias_offsets_.push_back(num_params_);
    num_params_ += sizes_[l + 1];
  }
}

Matrix Mlp::Forward(const Vector& params, const Matrix& inputs) const {
  assert(params.size() == num_params_);
  Matrix act = inputs;
  const size_t layers = sizes_.size() - 1;
  for (size_t l = 0; l < layers; ++l) {
    ConstMap w(params.data() + weight_offsets_[l], sizes_[l + 1], sizes_[l]);
    ConstVecMap b(params.data() + bias_offsets_[l], sizes_[l + 1]);
    Matrix z = w * act;
    z.colwise() += b;
    act = (l + 1 < layers) ? Matrix(z.array().tanh()) : std::move(z);
  }
  return act;
}

Matrix Mlp::ForwardBackward(const Vector& params, const Matrix& inputs,
                            const std::function<Matrix(const Matrix&)>& output_grad,
                            Vector& grad) const {
  assert(params.size() == num_params_ && grad.size() == num_params_);
  const size_t layers = sizes_.size() - 1;
  std::vector<Matrix> acts(layers + 1);
  acts[0] = inputs;
  for (size_t l = 0; l < layers; ++l) {
    ConstMap w(params.data() + weight_offsets_[l], sizes_[l + 1], sizes_[l]);
    ConstVecMap b(params.data() + bias_offsets_[l], sizes_[l + 1]);
    Matrix z = w * acts[l];
    z.colwise() += b;
    acts[l + 1] = (l + 1 < layers) ? Matrix(z.array().tanh()) : std::move(z);
  }

  Matrix delta = output_grad(acts[layers]);
  for (size_t l = layers; l-- > 0;) {
    Eigen::Map<Matrix> gw(grad.data() + weight_offsets_[l], sizes_[l + 1], sizes_[l]);
    Eigen::Map<Vector> gb(grad.data() + bias_offsets_[l], sizes_[l + 1]);
    gw.noalias() += delta * acts[l].transpose();
    gb += delta.rowwise().sum();
    if (l > 0) {
      ConstMap w(params.data() + weight_offsets_[l], sizes_[l + 1], sizes_[l]);
      Matrix back = w.transpose() * delta;
      delta = back.array() * (1.0 - acts[l].array().square());
    }
  }
  return acts[layers];
}

Vector Mlp::Initialize(double output_gain, Rng& rng) const {
  Vector params = Vector::Zero(num_params_);
  const size_t layers = sizes_.size() - 1;
  for (size_t l = 0; l < layers; ++l) {
    const double gain = (l + 1 < layers) ? std::sqrt(2.0) : output_gain;
    Eigen::Map<Matrix>(params.data() + weight_offsets_[l], sizes_[l + 1], sizes_[l]) =
        OrthogonalMatrix(sizes_[l + 1], sizes_[l], gain, rng);
  }
  return params;
}

Matrix OrthogonalMatrix(int rows, int cols, double gain, Rng& rng) {
  const int tall = std::max(rows, cols);
  const int wide = std::min(rows, cols);
  Matrix a(tall, wide);
  for (int j = 0; j < wide; ++j) a.col(j) = StandardNormalVector(tall, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(tall, wide);
  // Fix column signs so the result is Haar-distributed.
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < wide; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (rows < cols) q.transposeInPlace();
  return gain * q;
}

}  // namespace dppg
