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

#ifndef DPPG_SPECIAL_FUNCTIONS_H_
#define DPPG_SPECIAL_FUNCTIONS_H_

namespace dppg {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a) for
// a > 0, x >= 0. Series expansion below x = a + 1, Lentz continued fraction
// for Q = 1 - P above it; relative accuracy about 1e-14.
double RegularizedGammaP(double a, double x);

// Complement Q(a, x) = 1 - P(a, x), accurate in the upper tail.
double RegularizedGammaQ(double a, double x);

// CDF of the central chi-squared distribution with `dof` degrees of freedom.
double ChiSquaredCdf(double dof, double x);

}  // namespace dppg

#endif  // DPPG_SPECIAL_FUNCTIONS_H_
