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

#ifndef DPPG_TESTS_TEST_UTIL_H_
#define DPPG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>

#include "dppg/random.h"
#include "dppg/types.h"
#include "gtest/gtest.h"

namespace dppg::testing {

#define DPPG_ASSERT_OK_AND_ASSIGN(lhs, expr) \
  auto lhs##_or = (expr);                    \
  ASSERT_TRUE(lhs##_or.ok()) << lhs##_or.status(); \
  auto lhs = *std::move(lhs##_or)

// Central differences of a scalar function, step h per coordinate.
inline Vector NumericalGradient(const std::function<double(const Vector&)>& f,
                                const Vector& x, double h = 1e-6) {
  Vector grad(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

// |a - b| / max(|a|, |b|, floor), the relative error used by gradient checks.
inline double RelativeError(const Vector& a, const Vector& b, double floor = 1e-6) {
  const double scale = std::max({a.norm(), b.norm(), floor});
  return (a - b).norm() / scale;
}

inline Vector RandomVector(int n, double scale, Rng& rng) {
  return scale * StandardNormalVector(n, rng);
}

// Random symmetric PSD matrix A A^T / n with A standard normal.
inline Matrix RandomPsd(int n, Rng& rng) {
  Matrix a(n, n);
  for (int j = 0; j < n; ++j) a.col(j) = StandardNormalVector(n, rng);
  return a * a.transpose() / n;
}

}  // namespace dppg::testing

#endif  // DPPG_TESTS_TEST_UTIL_H_
