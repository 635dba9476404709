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

#ifndef DPPG_ADAM_H_
#define DPPG_ADAM_H_

#include <cstdint>

#include "dppg/types.h"

namespace dppg {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Vector m;
  Vector v;
  // Number of steps taken; drives bias correction.
  int64_t step = 0;

  static AdamState Zero(int dim) { return {Vector::Zero(dim), Vector::Zero(dim), 0}; }
};

// Advances the moments with `grad` and returns the ascent step
// lr * m_hat / (sqrt(v_hat) + eps).
Vector AdamStep(const AdamConfig& cfg, const Vector& grad, AdamState& state);

}  // namespace dppg

#endif  // DPPG_ADAM_H_
