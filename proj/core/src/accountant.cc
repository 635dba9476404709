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

#include "dppg/accountant.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "dppg/random.h"

namespace dppg {

namespace {

absl::Status CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status PrivacyParams::Validate() const {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    return absl::InvalidArgumentError(absl::StrCat("z must be >= 0, got ", z));
  }
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_norm must be > 0, got ", clip_norm));
  }
  if (users_per_update < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("users_per_update must be >= 1, got ", users_per_update));
  }
  return absl::OkStatus();
}

std::string_view MechanismName(Mechanism m) {
  return m == Mechanism::kM1 ? "M1" : "M2";
}

absl::StatusOr<double> C1(double delta) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  return std::sqrt(2.0 * std::log(1.25 / delta));
}

absl::StatusOr<double> C2(double delta) {
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  // sqrt(16 delta + 1) - 1 computed without cancellation for small delta.
  const double denom = 16.0 * delta / (std::sqrt(16.0 * delta + 1.0) + 1.0);
  const double arg = 2.0 / denom;
  if (!(arg > 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("C2 undefined for delta = ", delta, " (log argument ",
                     arg, " <= 1)"));
  }
  return std::sqrt(std::log(arg));
}

absl::StatusOr<PrivacyBudget> EpsilonOfZ(double z, double delta) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    return absl::InvalidArgumentError(absl::StrCat("z must be > 0, got ", z));
  }
  absl::StatusOr<double> c1 = C1(delta);
  if (!c1.ok()) return c1.status();
  const double eps_m1 = *c1 / z;
  if (eps_m1 < 1.0) return PrivacyBudget{eps_m1, delta, Mechanism::kM1};

  absl::StatusOr<double> c2 = C2(delta);
  if (!c2.ok()) return c2.status();
  const double eps_m2 = (1.0 + 2.0 * std::sqrt(2.0) * *c2 * z) / (2.0 * z * z);
  return PrivacyBudget{eps_m2, delta, Mechanism::kM2};
}

absl::StatusOr<double> ZOfEpsilon(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (epsilon < 1.0) {
    absl::StatusOr<double> c1 = C1(delta);
    if (!c1.ok()) return c1.status();
    return *c1 / epsilon;
  }
  absl::StatusOr<double> c2 = C2(delta);
  if (!c2.ok()) return c2.status();
  return (*c2 + std::sqrt(*c2 * *c2 + epsilon)) / (epsilon * std::sqrt(2.0));
}

ClipResult ClipL2(const Vector& v, double clip_norm) {
  const double norm = v.norm();
  if (norm <= clip_norm) return {v, 1.0};
  const double factor = 1.0 / (norm / clip_norm);
  Vector clipped = v * factor;
  // Rounding can leave the product a few ulps outside the ball.
  for (double n = clipped.norm(); n > clip_norm; n = clipped.norm()) {
    clipped *= std::nextafter(clip_norm / n, 0.0);
  }
  return {std::move(clipped), factor};
}

Vector GaussianPerturb(const Vector& v, double sigma, Rng& rng) {
  if (sigma == 0.0) return v;
  return v + sigma * StandardNormalVector(v.size(), rng);
}

}  // namespace dppg
