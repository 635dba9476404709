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

#include "dppg/trust_region.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dppg/distributions.h"
#include "dppg/random.h"

namespace dppg {

namespace {

// The region is closed; a few ulps of slack keep a mean sitting exactly on
// the boundary (the z = 0 case) inside despite rounding in S^2.
double InclusiveRadius(double alpha) { return alpha * (1.0 + 1e-12); }

// (1 / eta) sqrt(2 alpha beta / denominator), shared by the Markov bounds so
// that identical denominators give identical results.

double MarkovBound(double alpha, double beta, double eta, double denominator) {
  return std::sqrt(2.0 * alpha * beta / denominator) / eta;
}

}  // namespace

absl::Status TrustRegionParams::Validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError(absl::StrCat("alpha must be >= 0, got ", alpha));
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    return absl::InvalidArgumentError(absl::StrCat("eta must be > 0, got ", eta));
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    return absl::InvalidArgumentError(absl::StrCat("z must be >= 0, got ", z));
  }
  if (d < 1) return absl::InvalidArgumentError(absl::StrCat("d must be >= 1, got ", d));
  return absl::OkStatus();
}

absl::Status LossGapParams::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(absl::StrCat("lambda must be > 0, got ", lambda));
  }
  if (!(beta2 > 0.0 && beta2 < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta2 must lie in (0, 1), got ", beta2));
  }
  if (!(grad_norm > 0.0) || !std::isfinite(grad_norm)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "grad_norm must be > 0 (the bound is undefined otherwise), got ", grad_norm));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> ClipNormL2Quantile(const TrustRegionParams& p) {
  if (absl::Status s = p.Validate(); !s.ok()) return s;
  if (p.z == 0.0) return std::sqrt(2.0 * p.alpha) / p.eta;
  absl::StatusOr<double> q =
      NcChiSqQuantile({p.d, 1.0 / (p.z * p.z)}, 1.0 - p.beta);
  if (!q.ok()) return q.status();
  return std::sqrt(2.0 * p.alpha / *q) / (p.eta * p.z);
}

absl::StatusOr<double> ClipNormL2Markov(const TrustRegionParams& p) {
  if (absl::Status s = p.Validate(); !s.ok()) return s;
  return MarkovBound(p.alpha, p.beta, p.eta, 1.0 + p.z * p.z * p.d);
}

absl::StatusOr<double> ClipNormKl(const TrustRegionParams& p, const FisherMatrix& fisher) {
  if (absl::Status s = p.Validate(); !s.ok()) return s;
  if (fisher.dim() != p.d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Fisher matrix is ", fisher.dim(), "x", fisher.dim(), " but d = ", p.d));
  }
  const double sigma_max = fisher.max_eigenvalue();
  const double trace = fisher.trace();
  if (!(sigma_max > 0.0) && !(trace > 0.0)) {
    return absl::InvalidArgumentError("Fisher matrix is zero; the KL bound is undefined");
  }
  return MarkovBound(p.alpha, p.beta, p.eta, sigma_max + p.z * p.z * trace);
}

absl::StatusOr<double> ClipNormLossGap(const LossGapParams& p, double eta, double z) {
  if (absl::Status s = p.Validate(); !s.ok()) return s;
  if (!(eta > 0.0)) return absl::InvalidArgumentError(absl::StrCat("eta must be > 0, got ", eta));
  if (!(z >= 0.0)) return absl::InvalidArgumentError(absl::StrCat("z must be >= 0, got ", z));
  if (z == 0.0) return std::numeric_limits<double>::infinity();
  return p.lambda / (eta * z * p.grad_norm) * std::sqrt(p.beta2 / (1.0 - p.beta2));
}

absl::StatusOr<FisherMatrix> FisherEstimate(const Policy& policy, const Vector& theta,
                                            const std::vector<Trajectory>& rollouts,
                                            double regularizer) {
  if (!(regularizer >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("regularizer must be >= 0, got ", regularizer));
  }
  const int d = policy.num_params();
  Matrix sum = Matrix::Zero(d, d);
  int64_t count = 0;
  for (const Trajectory& traj : rollouts) {
    for (const Transition& tr : traj.steps) {
      const Vector score = policy.Score(theta, tr.state, tr.action);
      sum.selfadjointView<Eigen::Lower>().rankUpdate(score);
      ++count;
    }
  }
  if (count == 0) {
    return absl::InvalidArgumentError("cannot estimate a Fisher matrix from no data");
  }
  Matrix fisher = sum.selfadjointView<Eigen::Lower>();
  fisher /= static_cast<double>(count);
  fisher.diagonal().array() += regularizer;
  return FisherMatrix::Create(fisher);
}

absl::StatusOr<double> KlQuadratic(const FisherMatrix& fisher, const Vector& dtheta) {
  if (dtheta.size() != fisher.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dtheta has ", dtheta.size(), " entries, Fisher matrix is ", fisher.dim(),
        "-dimensional"));
  }
  return 0.5 * std::max(0.0, fisher.QuadraticForm(dtheta));
}

absl::StatusOr<ClipResult> MahalanobisClip(const Vector& v, const FisherMatrix& fisher,
                                           double clip_norm) {
  if (v.size() != fisher.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "vector has ", v.size(), " entries, Fisher matrix is ", fisher.dim(),
        "-dimensional"));
  }
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_norm must be > 0, got ", clip_norm));
  }
  ClipResult result{v, 1.0};
  const double norm = fisher.MahalanobisNorm(v);
  if (norm <= clip_norm) return result;
  result.factor = clip_norm / norm;
  result.clipped = v * result.factor;
  // Rounding can leave the scaled norm an ulp above the bound.
  for (double n = fisher.MahalanobisNorm(result.clipped); n > clip_norm;
       n = fisher.MahalanobisNorm(result.clipped)) {
    result.clipped *= std::nextafter(clip_norm / n, 0.0);
  }
  return result;
}

absl::StatusOr<double> GaussFisherConstant(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return std::sqrt(2.0 * std::log(2.0 / delta));
}

absl::StatusOr<Vector> GaussFisherMechanism(const Vector& ghat, const FisherMatrix& fisher,
                                            double clip_norm, double epsilon,
                                            double delta, Rng& rng) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gauss-Fisher mechanism needs epsilon in (0, 1), got ", epsilon));
  }
  absl::StatusOr<double> c = GaussFisherConstant(delta);
  if (!c.ok()) return c.status();
  absl::StatusOr<Matrix> factor = fisher.InverseSqrtFactor();
  if (!factor.ok()) return factor.status();
  absl::StatusOr<ClipResult> clipped = MahalanobisClip(ghat, fisher, clip_norm);
  if (!clipped.ok()) return clipped.status();
  const double scale = *c * clip_norm / epsilon;
  return Vector(clipped->clipped + scale * (*factor * StandardNormalVector(fisher.dim(), rng)));
}

double ContainmentReport::frequency() const {
  return trials == 0 ? 0.0 : static_cast<double>(hits) / trials;
}

double ContainmentReport::std_error() const {
  if (trials == 0) return 0.0;
  const double f = frequency();
  return std::sqrt(f * (1.0 - f) / trials);
}

bool ContainmentReport::Passes(double target) const {
  return frequency() >= target - 3.0 * std_error();
}

Vector WorstCaseMean(const FisherMatrix& fisher, double clip_norm) {
  return clip_norm * fisher.eigenvectors().col(0);
}

ContainmentReport L2Containment(double alpha, double eta, double z, double clip_norm,
                                const Vector& gbar, int64_t trials, Rng& rng) {
  ContainmentReport report{trials, 0};
  for (int64_t i = 0; i < trials; ++i) {
    if (SampleTrustRegionSizeL2(eta, z, clip_norm, gbar, rng) <= InclusiveRadius(alpha)) ++report.hits;
  }
  return report;
}

absl::StatusOr<ContainmentReport> KlContainment(double alpha, double eta, double z,
                                                double clip_norm, const Vector& gbar,
                                                const FisherMatrix& fisher,
                                                int64_t trials, Rng& rng) {
  ContainmentReport report{trials, 0};
  for (int64_t i = 0; i < trials; ++i) {
    absl::StatusOr<double> size =
        SampleTrustRegionSizeKl(eta, z, clip_norm, gbar, fisher, rng);
    if (!size.ok()) return size.status();
    if (*size <= InclusiveRadius(alpha)) ++report.hits;
  }
  return report;
}

ContainmentReport LossGapFrequency(LossGapForm form, double lambda, double eta,
                                   double z, double clip_norm, const Vector& g,
                                   int64_t trials, Rng& rng) {
  const double g_norm = g.norm();
  const double g_sq = g.squaredNorm();
  const ClipResult clip = ClipL2(g, clip_norm);
  const double sbar = clip.factor;
  const double gap = form == LossGapForm::kProof ? eta * (1.0 - sbar) * g_sq + lambda
                                                 : eta * (1.0 - sbar) * g_norm + lambda;
  const double sigma = z * clip_norm;
  // L(theta_star) = eta |g|^2 and L(theta_noisy) = eta (Sbar |g|^2 + g^T xi).
  const double l_star = eta * g_sq;
  ContainmentReport report{trials, 0};
  for (int64_t i = 0; i < trials; ++i) {
    const Vector xi = sigma * StandardNormalVector(g.size(), rng);
    const double l_noisy = eta * (sbar * g_sq + g.dot(xi));
    if (l_noisy >= l_star - gap) ++report.hits;
  }
  return report;
}

}  // namespace dppg
