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

#include "dppg/distributions.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "dppg/accountant.h"
#include "dppg/random.h"
#include "dppg/special_functions.h"

namespace dppg {

namespace {

// Poisson weights below this are dropped; the neglected tail mass is then a
// small multiple of it, well under 1e-12.
constexpr double kPoissonCutoff = 1e-17;

// Euler inversion parameters: discretization error ~exp(-kEulerA), the first
// kEulerTerms terms are summed directly and kEulerAveraging more are
// binomially averaged.
constexpr double kEulerA = 25.0;
constexpr int kEulerTerms = 60;
constexpr int kEulerAveraging = 16;

// Laplace transform of the CDF: E[exp(-sQ)] / s.
std::complex<double> CdfTransform(const GeneralizedChiSq& dist,
                                  std::complex<double> s) {
  std::complex<double> log_mgf = 0.0;
  for (Eigen::Index i = 0; i < dist.weights.size(); ++i) {
    const double w = dist.weights[i];
    const std::complex<double> denom = 1.0 + 2.0 * w * s;
    log_mgf += -0.5 * std::log(denom) - w * dist.noncentralities[i] * s / denom;
  }
  return std::exp(log_mgf) / s;
}

}  // namespace

absl::Status NoncentralChiSq::Validate() const {
  if (dof < 1) {
    return absl::InvalidArgumentError(absl::StrCat("dof must be >= 1, got ", dof));
  }
  if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noncentrality must be >= 0, got ", noncentrality));
  }
  return absl::OkStatus();
}

absl::Status GeneralizedChiSq::Validate() const {
  if (weights.size() < 1 || weights.size() != noncentralities.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "weights (", weights.size(), ") and noncentralities (",
        noncentralities.size(), ") must be non-empty and equally long"));
  }
  if (!(weights.array() > 0.0).all() || !weights.allFinite()) {
    return absl::InvalidArgumentError("all weights must be positive and finite");
  }
  if (!(noncentralities.array() >= 0.0).all() || !noncentralities.allFinite()) {
    return absl::InvalidArgumentError("noncentralities must be >= 0 and finite");
  }
  return absl::OkStatus();
}

double NcChiSqCdf(const NoncentralChiSq& dist, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double half_dof = 0.5 * dist.dof;
  const double half_x = 0.5 * x;
  if (dist.noncentrality == 0.0) return RegularizedGammaP(half_dof, half_x);

  const double mu = 0.5 * dist.noncentrality;
  const double mode = std::floor(mu);
  const double mode_weight =
      std::exp(-mu + mode * std::log(mu) - std::lgamma(mode + 1.0));

  double sum = mode_weight * RegularizedGammaP(half_dof + mode, half_x);
  // Upward from the mode.
  double w = mode_weight;
  for (double j = mode + 1.0;; j += 1.0) {
    w *= mu / j;
    if (w < kPoissonCutoff) break;
    const double p = RegularizedGammaP(half_dof + j, half_x);
    sum += w * p;
    // P(a, x) falls quickly in a once a > x; the rest contributes nothing.
    if (p < kPoissonCutoff) break;
  }
  // Downward from the mode.
  w = mode_weight;
  for (double j = mode; j >= 1.0; j -= 1.0) {
    w *= j / mu;
    if (w < kPoissonCutoff) break;
    sum += w * RegularizedGammaP(half_dof + j - 1.0, half_x);
  }
  return std::clamp(sum, 0.0, 1.0);
}

absl::StatusOr<double> NcChiSqQuantile(const NoncentralChiSq& dist, double p) {
  if (absl::Status s = dist.Validate(); !s.ok()) return s;
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("p must lie in (0, 1), got ", p));
  }
  const double mean = dist.dof + dist.noncentrality;
  const double sd = std::sqrt(2.0 * (dist.dof + 2.0 * dist.noncentrality));
  double lo = 0.0;
  double hi = mean + 10.0 * sd + 10.0;
  while (NcChiSqCdf(dist, hi) < p) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 400 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (NcChiSqCdf(dist, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double GenChiSqCdf(const GeneralizedChiSq& dist, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;

  constexpr double kPi = std::numbers::pi;
  const double scale = std::exp(0.5 * kEulerA) / x;
  std::array<double, kEulerAveraging + 1> partial{};
  double sum =
      0.5 * scale * CdfTransform(dist, {kEulerA / (2.0 * x), 0.0}).real();
  for (int k = 1; k <= kEulerTerms + kEulerAveraging; ++k) {
    const std::complex<double> s(kEulerA / (2.0 * x), k * kPi / x);
    const double term = scale * CdfTransform(dist, s).real();
    sum += (k % 2 == 0) ? term : -term;
    if (k >= kEulerTerms) partial[k - kEulerTerms] = sum;
  }
  // Binomial (Euler) averaging of the last partial sums.
  double result = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= kEulerAveraging; ++j) {
    result += binom * partial[j];
    binom *= static_cast<double>(kEulerAveraging - j) / (j + 1);
  }
  result /= std::pow(2.0, kEulerAveraging);
  return std::clamp(result, 0.0, 1.0);
}

double GenChiSqCdfMonteCarlo(const GeneralizedChiSq& dist, double x,
                             int64_t samples, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Vector shift = dist.noncentralities.cwiseSqrt();
  int64_t below = 0;
  for (int64_t n = 0; n < samples; ++n) {
    double q = 0.0;
    for (Eigen::Index i = 0; i < dist.weights.size(); ++i) {
      const double w = normal(rng) + shift[i];
      q += dist.weights[i] * w * w;
    }
    if (q <= x) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(samples);
}

double SampleTrustRegionSizeL2(double eta, double z, double clip_norm,
                               const Vector& gbar, Rng& rng) {
  const Vector update = GaussianPerturb(gbar, z * clip_norm, rng);
  return 0.5 * eta * eta * update.squaredNorm();
}

absl::StatusOr<double> SampleTrustRegionSizeKl(double eta, double z,
                                               double clip_norm,
                                               const Vector& gbar,
                                               const FisherMatrix& fisher,
                                               Rng& rng) {
  if (gbar.size() != fisher.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "gbar has dimension ", gbar.size(), " but F is ", fisher.dim(), "x",
        fisher.dim()));
  }
  const Vector update = GaussianPerturb(gbar, z * clip_norm, rng);
  return 0.5 * eta * eta * fisher.QuadraticForm(update);
}

absl::StatusOr<GeneralizedChiSq> KlTrustRegionSpectralForm(
    double z, double clip_norm, const Vector& gbar, const FisherMatrix& fisher) {
  if (!(z * clip_norm > 0.0)) {
    return absl::InvalidArgumentError("spectral form needs z * S > 0");
  }
  if (gbar.size() != fisher.dim()) {
    return absl::InvalidArgumentError("gbar and F dimensions differ");
  }
  const Vector nu = fisher.eigenvectors().transpose() * gbar / (z * clip_norm);
  const double cutoff =
      FisherMatrix::kTolerance * std::max(1.0, fisher.max_eigenvalue());
  int kept = 0;
  for (int i = 0; i < fisher.dim(); ++i) {
    if (fisher.eigenvalues()[i] > cutoff) ++kept;
  }
  if (kept == 0) return absl::InvalidArgumentError("F has no positive eigenvalue");
  GeneralizedChiSq out{Vector(kept), Vector(kept)};
  for (int i = 0, k = 0; i < fisher.dim(); ++i) {
    if (fisher.eigenvalues()[i] <= cutoff) continue;
    out.weights[k] = fisher.eigenvalues()[i];
    out.noncentralities[k] = nu[i] * nu[i];
    ++k;
  }
  return out;
}

double KlTrustRegionSizeMean(double eta, double z, double clip_norm,
                             const Vector& gbar, const FisherMatrix& fisher) {
  const double zs = z * clip_norm;
  return 0.5 * eta * eta * (fisher.QuadraticForm(gbar) + zs * zs * fisher.trace());
}

double KlTrustRegionSizeVariance(double eta, double z, double clip_norm,
                                 const Vector& gbar, const FisherMatrix& fisher) {
  const double zs = z * clip_norm;
  const double cross = (fisher.matrix() * gbar).squaredNorm();
  const double quad = 2.0 * (fisher.matrix() * fisher.matrix()).trace();
  const double eta2 = eta * eta;
  return 0.25 * eta2 * eta2 * (4.0 * zs * zs * cross + zs * zs * zs * zs * quad);
}

double L2TrustRegionSizeMean(double eta, double z, double clip_norm,
                             const Vector& gbar) {
  const double zs = z * clip_norm;
  return 0.5 * eta * eta * (gbar.squaredNorm() + zs * zs * gbar.size());
}

}  // namespace dppg
