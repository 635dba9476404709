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

#ifndef DPPG_MLP_H_
#define DPPG_MLP_H_

#include <functional>
#include <vector>

#include "dppg/types.h"

namespace dppg {

// Fully connected network with tanh hidden layers and a linear output layer,
// evaluated over a flat parameter vector. Layer l stores its weight matrix
// (out x in, column-major) followed by its bias.
class Mlp {
 public:
  explicit Mlp(std::vector<int> layer_sizes);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int num_params() const { return num_params_; }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  // Inputs are columns of `inputs`; returns output_dim x batch.
  Matrix Forward(const Vector& params, const Matrix& inputs) const;

  // Forward pass, then backpropagates d(loss)/d(outputs) as returned by
  // `output_grad` (called with the outputs) and accumulates d(loss)/d(params)
  // into `grad`. Returns the outputs.
  Matrix ForwardBackward(const Vector& params, const Matrix& inputs,
                         const std::function<Matrix(const Matrix&)>& output_grad,
                         Vector& grad) const;

  // Orthogonal initialisation: gain sqrt(2) for hidden layers, `output_gain`
  // for the last layer, zero biases.
  Vector Initialize(double output_gain, Rng& rng) const;

 private:
  std::vector<int> sizes_;
  std::vector<int> weight_offsets_;
  std::vector<int> bias_offsets_;
  int num_params_ = 0;
};

// Random matrix with orthonormal rows or columns (whichever is shorter),
// scaled by `gain`.
Matrix OrthogonalMatrix(int rows, int cols, double gain, Rng& rng);

}  // namespace dppg

#endif  // DPPG_MLP_H_
