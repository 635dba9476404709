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

#ifndef DPPG_TYPES_H_
#define DPPG_TYPES_H_

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace dppg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// All randomness in the library flows through explicitly passed engines of
// this type. Callers own them; they are not thread-safe.
using Rng = std::mt19937_64;

}  // namespace dppg

#endif  // DPPG_TYPES_H_
