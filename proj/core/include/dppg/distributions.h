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

#ifndef DPPG_DISTRIBUTIONS_H_
#define DPPG_DISTRIBUTIONS_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/fisher_matrix.h"
#include "dppg/types.h"

namespace dppg {

// chi^2(d, lambda): sum of d squared unit-variance normals whose squared means
// add up to lambda.
struct NoncentralChiSq {
  int dof = 1;
  double noncentrality = 0.0;

  absl::Status Validate() const;
};

// sum_i weights[i] * W_i with independent W_i ~ chi^2(1, noncentralities[i]).
struct GeneralizedChiSq {
  Vector weights;
  Vector noncentralities;

  absl::Status Validate() const;
};

// P[chi^2(d, lambda) <= x] as a Poisson(lambda / 2) mixture of central chi^2
// CDFs, truncated once the neglected Poisson mass drops below 1e-12.
double NcChiSqCdf(const NoncentralChiSq& dist, double x);

// Inverse of NcChiSqCdf by bracketed bisection. p must lie in (0, 1).
absl::StatusOr<double> NcChiSqQuantile(const NoncentralChiSq& dist, double p);

// Generalized chi^2 CDF by numerical Laplace-transform inversion (Euler
// summation of the Bromwich integral). Absolute error about 1e-9.
double GenChiSqCdf(const GeneralizedChiSq& dist, double x);

// Monte Carlo estimate of the same CDF from `samples` draws.
double GenChiSqCdfMonteCarlo(const GeneralizedChiSq& dist, double x,
                             int64_t samples, Rng& rng);

inline constexpr int64_t kDefaultMonteCarloSamples = 1'000'000;

// One draw of the L2 trust-region size (eta^2 / 2) |gbar + xi|^2 with
// xi ~ N(0, z^2 S^2 I).
double SampleTrustRegionSizeL2(double eta, double z, double clip_norm,
                               const Vector& gbar, Rng& rng);

// One draw of the KL trust-region size (eta^2 / 2) (gbar + xi)^T F (gbar + xi).
absl::StatusOr<double> SampleTrustRegionSizeKl(double eta, double z,
                                               double clip_norm,
                                               const Vector& gbar,
                                               const FisherMatrix& fisher,
                                               Rng& rng);

// Spectral representation of the KL trust-region size divided by
// eta^2 z^2 S^2 / 2: weights sigma_i(F), noncentralities (v_i^T gbar / zS)^2.
// Zero eigenvalues are dropped. Requires z S > 0.
absl::StatusOr<GeneralizedChiSq> KlTrustRegionSpectralForm(
    double z, double clip_norm, const Vector& gbar, const FisherMatrix& fisher);

// First two moments of the KL trust-region size.
//   mean     = (eta^2 / 2) (gbar^T F gbar + z^2 S^2 tr F)
//   variance = (eta^4 / 4) (4 z^2 S^2 |F gbar|^2 + 2 z^4 S^4 tr F^2)
// The variance assembles the cross-term variance |F gbar|^2 and the quadratic
// term variance 2 tr F^2 (the two are uncorrelated).
double KlTrustRegionSizeMean(double eta, double z, double clip_norm,
                             const Vector& gbar, const FisherMatrix& fisher);
double KlTrustRegionSizeVariance(double eta, double z, double clip_norm,
                                 const Vector& gbar, const FisherMatrix& fisher);

// (eta^2 / 2) (|gbar|^2 + z^2 S^2 d).
double L2TrustRegionSizeMean(double eta, double z, double clip_norm,
                             const Vector& gbar);

}  // namespace dppg

#endif  // DPPG_DISTRIBUTIONS_H_
