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

#ifndef DPPG_ACCOUNTANT_H_
#define DPPG_ACCOUNTANT_H_

#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/types.h"

namespace dppg {

// Noise multiplier z, failure probability delta, per-user clipping norm S and
// users per update K. The released aggregate has sensitivity S / K and is
// perturbed with N(0, (z S / K)^2 I).
struct PrivacyParams {
  double z = 1.0;
  double delta = 1e-5;
  double clip_norm = 1.0;
  int users_per_update = 1;

  absl::Status Validate() const;
  // Standard deviation of the per-coordinate noise added to the K-user mean.
  // Exactly zero when z == 0, including the unclipped case S = inf.
  double NoiseStddev() const {
    return z == 0.0 ? 0.0 : z * clip_norm / users_per_update;
  }
};

// M1 is the classical Gaussian mechanism, valid only for epsilon < 1. M2 is
// the improved mechanism used for epsilon >= 1.
enum class Mechanism { kM1, kM2 };

std::string_view MechanismName(Mechanism m);

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  Mechanism mechanism = Mechanism::kM1;
};

// C1(delta) = sqrt(2 ln(1.25 / delta)).
absl::StatusOr<double> C1(double delta);

// C2(delta) = sqrt(ln(2 / (sqrt(16 delta + 1) - 1))). Requires the log argument
// to exceed 1, i.e. delta < 0.5.
absl::StatusOr<double> C2(double delta);

// Privacy budget of one Gaussian-mechanism release with noise multiplier z.
// Uses M1 when C1(delta) / z < 1 and M2 otherwise. Just below the switch M2
// can return an epsilon slightly under 1; it is reported unmodified, which
// produces the visible break of the z-epsilon curve at epsilon = 1.
absl::StatusOr<PrivacyBudget> EpsilonOfZ(double z, double delta);

// Inverse of EpsilonOfZ within each regime: C1 / epsilon for epsilon < 1,
// (C2 + sqrt(C2^2 + epsilon)) / (epsilon sqrt 2) otherwise.
absl::StatusOr<double> ZOfEpsilon(double epsilon, double delta);

struct ClipResult {
  Vector clipped;
  // 1 / max(|v| / S, 1), in (0, 1].
  double factor = 1.0;
};

// Scales v onto the L2 ball of radius clip_norm when it lies outside.
ClipResult ClipL2(const Vector& v, double clip_norm);

// v + N(0, sigma^2 I). sigma == 0 returns v unchanged and draws nothing.
Vector GaussianPerturb(const Vector& v, double sigma, Rng& rng);

}  // namespace dppg

#endif  // DPPG_ACCOUNTANT_H_
