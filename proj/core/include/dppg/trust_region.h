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

#ifndef DPPG_TRUST_REGION_H_
#define DPPG_TRUST_REGION_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/accountant.h"
#include "dppg/fisher_matrix.h"
#include "dppg/policy.h"
#include "dppg/trajectory.h"
#include "dppg/types.h"

namespace dppg {

// Trust-region size alpha, failure probability beta, learning rate eta,
// noise multiplier z and parameter dimension d.
struct TrustRegionParams {
  double alpha = 1.0;
  double beta = 0.1;
  double eta = 1.0;
  double z = 1.0;
  int d = 1;

  absl::Status Validate() const;
};

// Slack lambda, failure probability beta2 and the norm of the (unclipped)
// gradient.
struct LossGapParams {
  double lambda = 1.0;
  double beta2 = 0.1;
  double grad_norm = 1.0;

  absl::Status Validate() const;
};

// Largest S such that P[(1/2) |delta theta|^2 <= alpha] >= 1 - beta for every
// |gbar| <= S, from the chi^2(d, 1/z^2) quantile:
//   S = (1 / (eta z)) sqrt(2 alpha / q_{1-beta}).
// At z = 0 the update is deterministic and the bound is sqrt(2 alpha) / eta.
absl::StatusOr<double> ClipNormL2Quantile(const TrustRegionParams& p);

// Markov-inequality version: S = (1 / eta) sqrt(2 alpha beta / (1 + z^2 d)).
absl::StatusOr<double> ClipNormL2Markov(const TrustRegionParams& p);

// KL trust region (1/2) dtheta^T F dtheta <= alpha via Markov:
//   S = (1 / eta) sqrt(2 alpha beta / (sigma_max(F) + z^2 tr F)).
// p.d must equal the dimension of F. With F = I this is bitwise equal to
// ClipNormL2Markov.
absl::StatusOr<double> ClipNormKl(const TrustRegionParams& p, const FisherMatrix& fisher);

// Largest S for which the linear surrogate of the noisy clipped step falls
// short of the noiseless unclipped step by more than the gap K with
// probability at most beta2 (Cantelli):
//   S = (lambda / (eta z |g|)) sqrt(beta2 / (1 - beta2)).
// Infinite at z = 0.
absl::StatusOr<double> ClipNormLossGap(const LossGapParams& p, double eta, double z);

// Which gap K the loss-gap event is measured against, with Sbar the clip
// factor of g:
//   kProof:     K = eta (1 - Sbar) |g|^2 + lambda  (the form the bound proves)
//   kStatement: K = eta (1 - Sbar) |g|   + lambda
enum class LossGapForm { kProof, kStatement };

// Empirical (F-)average of score outer products over every visited
// state-action pair, plus regularizer * I.
absl::StatusOr<FisherMatrix> FisherEstimate(const Policy& policy, const Vector& theta,
                                            const std::vector<Trajectory>& rollouts,
                                            double regularizer);

// (1/2) dtheta^T F dtheta.
absl::StatusOr<double> KlQuadratic(const FisherMatrix& fisher, const Vector& dtheta);

// Scales v so that |F^{1/2} v| <= clip_norm.
absl::StatusOr<ClipResult> MahalanobisClip(const Vector& v, const FisherMatrix& fisher,
                                           double clip_norm);

// C(delta) = sqrt(2 ln(2 / delta)).
absl::StatusOr<double> GaussFisherConstant(double delta);

// Mahalanobis-clips ghat to F-norm S and adds (C(delta) S / epsilon) zeta with
// zeta ~ N(0, F^{-1}). epsilon must lie in (0, 1); F must be nonsingular.
absl::StatusOr<Vector> GaussFisherMechanism(const Vector& ghat, const FisherMatrix& fisher,
                                            double clip_norm, double epsilon,
                                            double delta, Rng& rng);

// Monte Carlo frequency of an event with its binomial standard error.
struct ContainmentReport {
  int64_t trials = 0;
  int64_t hits = 0;

  double frequency() const;
  double std_error() const;
  // frequency >= target - 3 std_error.
  bool Passes(double target) const;
};

// Worst-case clipped mean: norm S along the top eigenvector of F (e_1 for the
// identity).
Vector WorstCaseMean(const FisherMatrix& fisher, double clip_norm);

// Frequency of (eta^2 / 2) |gbar + xi|^2 <= alpha, xi ~ N(0, z^2 S^2 I).
ContainmentReport L2Containment(double alpha, double eta, double z, double clip_norm,
                                const Vector& gbar, int64_t trials, Rng& rng);

// Frequency of (eta^2 / 2) (gbar + xi)^T F (gbar + xi) <= alpha.
absl::StatusOr<ContainmentReport> KlContainment(double alpha, double eta, double z,
                                                double clip_norm, const Vector& gbar,
                                                const FisherMatrix& fisher,
                                                int64_t trials, Rng& rng);

// Frequency of L(theta_noisy) >= L(theta_star) - K for the linear surrogate
// L(theta) = g^T (theta - theta_old), theta_noisy = theta_old + eta (Sbar g
// + xi) and theta_star = theta_old + eta g.
ContainmentReport LossGapFrequency(LossGapForm form, double lambda, double eta,
                                   double z, double clip_norm, const Vector& g,
                                   int64_t trials, Rng& rng);

}  // namespace dppg

#endif  // DPPG_TRUST_REGION_H_
