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

#include "acceptance/criteria.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dppg/accountant.h"
#include "dppg/critic.h"
#include "dppg/distributions.h"
#include "dppg/dppg.h"
#include "dppg/fisher_matrix.h"
#include "dppg/policy.h"
#include "dppg/random.h"
#include "dppg/train_riverswim.h"
#include "dppg/trust_region.h"
#include "harness/commands.h"
#include "harness/config.h"

namespace dppg::acceptance {
namespace {

CriterionResult Error(const absl::Status& status) {
  return {false, absl::StrCat("error: ", status.ToString())};
}

std::string Verdict(bool ok) { return ok ? "ok" : "FAIL"; }

Matrix RandomPsd(int d, Rng& rng) {
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = StandardNormal(rng);
  }
  return a * a.transpose() / d + 0.05 * Matrix::Identity(d, d);
}

// Central-difference gradient.
Vector FiniteDifference(const std::function<double(const Vector&)>& f, const Vector& x,
                        double h = 1e-6) {
  Vector g(x.size());
  Vector y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y[i] = x[i] + h;
    const double up = f(y);
    y[i] = x[i] - h;
    const double down = f(y);
    y[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double RelativeError(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-6});
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------

CriterionResult AccountantFidelity(std::ostream&) {
  absl::StatusOr<PrivacyBudget> eps = EpsilonOfZ(1.0, 1e-5);
  absl::StatusOr<double> c1_2 = C1(1e-2);
  absl::StatusOr<double> c1_5 = C1(1e-5);
  if (!eps.ok()) return Error(eps.status());
  if (!c1_2.ok()) return Error(c1_2.status());
  if (!c1_5.ok()) return Error(c1_5.status());
  const bool a = std::abs(eps->epsilon - 5.00) <= 0.01;
  const bool b = std::abs(*c1_2 - 3.07) <= 0.01;
  const bool c = std::abs(*c1_5 - 4.845) <= 0.005;
  return {a && b && c,
          absl::StrFormat("epsilon(z=1,1e-5)=%.6f (5.00+-0.01 %s), C1(1e-2)=%.6f "
                          "(3.07+-0.01 %s), C1(1e-5)=%.6f (4.845+-0.005 %s)",
                          eps->epsilon, Verdict(a), *c1_2, Verdict(b), *c1_5, Verdict(c))};
}

CriterionResult DistributionCorrectness(std::ostream& log) {
  const std::vector<double> probs = {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
  constexpr int64_t kSamples = 10'000'000;
  double worst_roundtrip = 0.0;
  double worst_mc = 0.0;
  Rng rng = SeedTree(2).Stream("ncx2");
  for (int d : {1, 2, 7, 64}) {
    for (double lambda : {0.0, 1.5, 20.0}) {
      const NoncentralChiSq dist{d, lambda};
      std::vector<double> q;
      for (double p : probs) {
        absl::StatusOr<double> x = NcChiSqQuantile(dist, p);
        if (!x.ok()) return Error(x.status());
        worst_roundtrip = std::max(worst_roundtrip, std::abs(NcChiSqCdf(dist, *x) - p));
        q.push_back(*x);
      }
      // Independent sampler: (N(0,1) + sqrt(lambda))^2 + chi^2(d - 1).
      std::normal_distribution<double> normal;
      std::chi_squared_distribution<double> rest(std::max(d - 1, 1));
      const double mu = std::sqrt(lambda);
      std::vector<int64_t> below(q.size(), 0);
      for (int64_t i = 0; i < kSamples; ++i) {
        const double n = normal(rng) + mu;
        const double x = n * n + (d > 1 ? rest(rng) : 0.0);
        for (size_t k = 0; k < q.size(); ++k) below[k] += x <= q[k];
      }
      for (size_t k = 0; k < q.size(); ++k) {
        worst_mc = std::max(worst_mc,
                            std::abs(static_cast<double>(below[k]) / kSamples - probs[k]));
      }
      log << absl::StrFormat("  ncx2 d=%d lambda=%g done\n", d, lambda);
    }
  }

  // Generalized chi^2 CDF of the spectral form against draws of the KL
  // trust-region size itself.
  double worst_gx2 = 0.0;
  constexpr int kGx2Samples = 100'000;
  Rng gx2_rng = SeedTree(2).Stream("gx2");
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 7;
    absl::StatusOr<FisherMatrix> fisher = FisherMatrix::Create(RandomPsd(d, gx2_rng));
    if (!fisher.ok()) return Error(fisher.status());
    const double z = 0.5 + trial;
    const double s = 0.3;
    const double eta = 1.3;
    const Vector gbar = 0.2 * StandardNormalVector(d, gx2_rng);
    absl::StatusOr<GeneralizedChiSq> form = KlTrustRegionSpectralForm(z, s, gbar, *fisher);
    if (!form.ok()) return Error(form.status());
    const double scale = eta * eta * z * z * s * s / 2.0;
    std::vector<double> draws(kGx2Samples);
    for (double& x : draws) {
      absl::StatusOr<double> size = SampleTrustRegionSizeKl(eta, z, s, gbar, *fisher, gx2_rng);
      if (!size.ok()) return Error(size.status());
      x = *size / scale;
    }
    std::sort(draws.begin(), draws.end());
    for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      const double x = draws[static_cast<size_t>(p * kGx2Samples)];
      const double empirical =
          static_cast<double>(std::upper_bound(draws.begin(), draws.end(), x) - draws.begin()) /
          kGx2Samples;
      worst_gx2 = std::max(worst_gx2, std::abs(GenChiSqCdf(*form, x) - empirical));
    }
  }
  const bool a = worst_roundtrip <= 1e-6;
  const bool b = worst_mc <= 0.003;
  const bool c = worst_gx2 <= 0.01;
  return {a && b && c,
          absl::StrFormat("12 (d,lambda) pairs: max |cdf(quantile(p))-p|=%.2e (<=1e-6 %s), "
                          "max |MC-cdf| at 1e7=%.5f (<=0.003 %s); gx2 vs spectral MC at "
                          "1e5: max diff=%.5f (<=0.01 %s)",
                          worst_roundtrip, Verdict(a), worst_mc, Verdict(b), worst_gx2,
                          Verdict(c))};
}

CriterionResult TrustRegionContainment(std::ostream& log) {
  constexpr int64_t kTrials = 100'000;
  constexpr double kAlpha = 1.0;
  constexpr double kEta = 1.0;
  int cases = 0;
  int failed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_case;
  Rng psd_rng = SeedTree(3).Stream("fisher");
  for (int d : {2, 7, 64}) {
    absl::StatusOr<FisherMatrix> fisher = FisherMatrix::Create(RandomPsd(d, psd_rng));
    if (!fisher.ok()) return Error(fisher.status());
    for (double z : {0.5, 1.0, 4.845}) {
      for (double beta : {0.1, 0.4}) {
        const TrustRegionParams p{kAlpha, beta, kEta, z, d};
        const double target = 1.0 - beta;
        auto record = [&](const std::string& rule, const ContainmentReport& r) {
          ++cases;
          const double margin = r.frequency() - (target - 3.0 * r.std_error());
          if (!r.Passes(target)) ++failed;
          if (margin < worst_margin) {
            worst_margin = margin;
            worst_case = absl::StrFormat("%s d=%d z=%g beta=%g freq=%.4f", rule, d, z, beta,
                                         r.frequency());
          }
        };
        Rng rng = SeedTree(3).Stream(absl::StrCat("d", d, "z", z, "b", beta));
        const FisherMatrix identity = FisherMatrix::Identity(d);

        absl::StatusOr<double> s = ClipNormL2Quantile(p);
        if (!s.ok()) return Error(s.status());
        record("l2-quantile", L2Containment(kAlpha, kEta, z, *s, WorstCaseMean(identity, *s),
                                            kTrials, rng));

        s = ClipNormL2Markov(p);
        if (!s.ok()) return Error(s.status());
        record("l2-markov", L2Containment(kAlpha, kEta, z, *s, WorstCaseMean(identity, *s),
                                          kTrials, rng));

        s = ClipNormKl(p, *fisher);
        if (!s.ok()) return Error(s.status());
        absl::StatusOr<ContainmentReport> kl = KlContainment(
            kAlpha, kEta, z, *s, WorstCaseMean(*fisher, *s), *fisher, kTrials, rng);
        if (!kl.ok()) return Error(kl.status());
        record("kl", *kl);
      }
    }
    log << absl::StrFormat("  containment d=%d done\n", d);
  }
  return {failed == 0,
          absl::StrFormat("%d/%d (rule, d, z, beta) cases contain >= 1-beta-3SE at 1e5 draws; "
                          "tightest: %s (margin %.4f)",
                          cases - failed, cases, worst_case, worst_margin)};
}

CriterionResult ObjectiveGap(std::ostream&) {
  constexpr int64_t kTrials = 100'000;
  constexpr int kDim = 7;
  std::vector<std::string> parts;
  bool all = true;
  for (double beta2 : {0.1, 0.5}) {
    for (double z : {0.5, 1.0, 4.845}) {
      const LossGapParams p{0.1, beta2, 1.0};
      absl::StatusOr<double> s = ClipNormLossGap(p, 1.0, z);
      if (!s.ok()) return Error(s.status());
      Vector g = Vector::Zero(kDim);
      g[0] = p.grad_norm;
      Rng rng = SeedTree(4).Stream(absl::StrCat("b", beta2, "z", z));
      const ContainmentReport r =
          LossGapFrequency(LossGapForm::kProof, p.lambda, 1.0, z, *s, g, kTrials, rng);
      const bool ok = r.Passes(1.0 - beta2);
      all = all && ok;
      parts.push_back(absl::StrFormat("beta2=%g z=%g freq=%.4f %s", beta2, z, r.frequency(),
                                      Verdict(ok)));
    }
  }
  return {all, absl::StrCat("gap event >= 1-beta2-3SE at 1e5 draws: ",
                            absl::StrJoin(parts, "; "))};
}

CriterionResult MomentFormulas(std::ostream&) {
  constexpr int64_t kSamples = 1'000'000;
  double worst_mean = 0.0;
  double worst_var = 0.0;
  Rng rng = SeedTree(5).Stream("moments");
  for (int trial = 0; trial < 3; ++trial) {
    absl::StatusOr<FisherMatrix> fisher = FisherMatrix::Create(RandomPsd(7, rng));
    if (!fisher.ok()) return Error(fisher.status());
    const double eta = 0.7 + 0.3 * trial;
    const double z = 0.5 + trial;
    const double s = 0.4;
    const Vector gbar = 0.3 * StandardNormalVector(7, rng);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int64_t i = 0; i < kSamples; ++i) {
      absl::StatusOr<double> x = SampleTrustRegionSizeKl(eta, z, s, gbar, *fisher, rng);
      if (!x.ok()) return Error(x.status());
      sum += *x;
      sum_sq += *x * *x;
    }
    const double mean = sum / kSamples;
    const double var = (sum_sq - kSamples * mean * mean) / (kSamples - 1);
    const double m = KlTrustRegionSizeMean(eta, z, s, gbar, *fisher);
    const double v = KlTrustRegionSizeVariance(eta, z, s, gbar, *fisher);
    worst_mean = std::max(worst_mean, std::abs(mean - m) / m);
    worst_var = std::max(worst_var, std::abs(var - v) / v);
  }
  const bool a = worst_mean <= 0.01;
  const bool b = worst_var <= 0.03;
  return {a && b,
          absl::StrFormat("3 random 7x7 F at 1e6 draws: max rel. mean error %.4f (<=0.01 %s), "
                          "max rel. variance error %.4f (<=0.03 %s)",
                          worst_mean, Verdict(a), worst_var, Verdict(b))};
}

CriterionResult Sensitivity(std::ostream&) {
  constexpr int kBatches = 10'000;
  constexpr int kUsers = 8;
  Rng rng = SeedTree(6).Stream("sensitivity");
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  double worst_ratio = 0.0;
  double closest = std::numeric_limits<double>::infinity();
  int violations = 0;
  for (int b = 0; b < kBatches; ++b) {
    const int d = dim(rng);
    const double s = std::exp(log_scale(rng));
    PrivacyParams privacy;
    privacy.z = 0.0;
    privacy.clip_norm = s;
    privacy.users_per_update = kUsers;
    std::vector<Vector> updates;
    for (int u = 0; u < kUsers; ++u) {
      const Vector raw = s * std::exp(log_scale(rng) / 3.0) * StandardNormalVector(d, rng) /
                         std::sqrt(static_cast<double>(d));
      updates.push_back(ClipL2(raw, s).clipped);
    }
    absl::StatusOr<UpdateResult> full = AggregateAndPrivatize(updates, privacy, rng);
    if (!full.ok()) return Error(full.status());
    for (int u = 0; u < kUsers; ++u) {
      std::vector<Vector> removed = updates;
      removed[u].setZero();
      absl::StatusOr<UpdateResult> r = AggregateAndPrivatize(removed, privacy, rng);
      if (!r.ok()) return Error(r.status());
      const double shift = (full->mean - r->mean).norm();
      const double bound = s / kUsers;
      worst_ratio = std::max(worst_ratio, shift / bound);
      if (shift > bound * (1.0 + 1e-12)) ++violations;
      closest = std::min(closest, std::abs(shift - bound));
    }
  }
  const bool a = violations == 0;
  const bool b = closest <= 1e-6;
  return {a && b,
          absl::StrFormat("%d batches of K=8: %d removals exceed S/8 (max shift/(S/8)=%.12f %s); "
                          "tightest |shift-S/8|=%.2e (<=1e-6 %s)",
                          kBatches, violations, worst_ratio, Verdict(a), closest, Verdict(b))};
}

CriterionResult GradientCorrectness(std::ostream&) {
  constexpr int kInstances = 100;
  constexpr double kTolerance = 1e-4;
  double worst_score = 0.0;
  double worst_entropy = 0.0;
  double worst_critic = 0.0;
  double worst_surrogate = 0.0;
  Rng rng = SeedTree(7).Stream("gradients");
  std::uniform_int_distribution<int> small(2, 6);
  std::uniform_int_distribution<int> hidden(3, 10);
  for (int i = 0; i < kInstances; ++i) {
    const int obs_dim = small(rng);
    const int actions = small(rng);
    const ArchKind kind = i % 3 == 0   ? ArchKind::kLogLinearProduct
                          : i % 3 == 1 ? ArchKind::kLogLinearConcat
                                       : ArchKind::kMlp;
    const Architecture arch{kind, obs_dim, actions, hidden(rng)};
    std::unique_ptr<Policy> policy = MakePolicy(arch);
    const Vector theta = 0.5 * StandardNormalVector(policy->num_params(), rng);
    const Vector obs = StandardNormalVector(obs_dim, rng);
    const int action = std::uniform_int_distribution<int>(0, actions - 1)(rng);

    worst_score = std::max(
        worst_score,
        RelativeError(policy->Score(theta, obs, action),
                      FiniteDifference([&](const Vector& t) { return policy->LogProb(t, obs, action); },
                                       theta)));
    worst_entropy = std::max(
        worst_entropy,
        RelativeError(policy->EntropyGrad(theta, obs),
                      FiniteDifference([&](const Vector& t) { return policy->Entropy(t, obs); },
                                       theta)));

    MlpCritic critic(obs_dim, arch.hidden);
    const Vector psi = 0.5 * StandardNormalVector(critic.num_params(), rng);
    const double target = StandardNormal(rng);
    worst_critic = std::max(
        worst_critic,
        RelativeError(critic.LossGrad(psi, obs, target),
                      FiniteDifference(
                          [&](const Vector& p) {
                            const double e = critic.Value(p, obs) - target;
                            return 0.5 * e * e;
                          },
                          psi)));

    // Surrogate at a point near theta_old so the ratios are not all one.
    const int batch = 8;
    const Matrix states = Matrix::NullaryExpr(obs_dim, batch, [&] { return StandardNormal(rng); });
    std::vector<int> acts(batch);
    Vector old_log_probs(batch);
    const Vector theta_old = theta + 0.1 * StandardNormalVector(theta.size(), rng);
    for (int t = 0; t < batch; ++t) {
      acts[t] = policy->SampleAction(theta_old, states.col(t), rng).action;
      old_log_probs[t] = policy->LogProb(theta_old, states.col(t), acts[t]);
    }
    const Vector adv = StandardNormalVector(batch, rng);
    const double coef = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    Vector grad = Vector::Zero(theta.size());
    LocalSurrogate(*policy, theta, states, acts, old_log_probs, adv, coef, &grad);
    worst_surrogate = std::max(
        worst_surrogate,
        RelativeError(grad, FiniteDifference(
                                [&](const Vector& t) {
                                  return LocalSurrogate(*policy, t, states, acts, old_log_probs,
                                                        adv, coef, nullptr);
                                },
                                theta)));
  }
  const bool ok = std::max({worst_score, worst_entropy, worst_critic, worst_surrogate}) <=
                  kTolerance;
  return {ok, absl::StrFormat("max relative error over %d instances each (<=1e-4): score %.2e, "
                              "entropy %.2e, critic %.2e, surrogate %.2e",
                              kInstances, worst_score, worst_entropy, worst_critic,
                              worst_surrogate)};
}

CriterionResult Riverswim(std::ostream& log) {
  absl::StatusOr<harness::ExperimentConfig> cfg =
      harness::LoadConfig(std::string(DPPG_CONFIG_DIR) + "/riverswim.ini");
  if (!cfg.ok()) return Error(cfg.status());
  constexpr int kSeeds = 10;
  constexpr int kEpisodes = 500;
  RiverswimTrainConfig base = cfg->riverswim;
  base.episodes = kEpisodes;
  base.delta = 1e-5;
  base.env.reward_prob = 0.6;

  int always_right = 0;
  for (int i = 0; i < kSeeds; ++i) {
    RiverswimTrainConfig run = base;
    run.seed = cfg->seed + i;
    run.z = 0.0;
    absl::StatusOr<RiverswimResult> r = TrainLinearRiverswim(run);
    if (!r.ok()) return Error(r.status());
    always_right += r->always_right;
  }
  log << absl::StrFormat("  noiseless: always-right on %d/%d seeds\n", always_right, kSeeds);

  const double uniform = UniformPolicyRegret(base.env, kEpisodes);
  std::vector<std::string> parts;
  bool private_ok = true;
  for (RiverswimVariant variant : {RiverswimVariant::kL2, RiverswimVariant::kKl}) {
    std::vector<double> regrets;
    for (int i = 0; i < kSeeds; ++i) {
      RiverswimTrainConfig run = base;
      run.seed = cfg->seed + i;
      run.variant = variant;
      run.epsilon = 5.0;
      run.z.reset();
      absl::StatusOr<RiverswimResult> r = TrainLinearRiverswim(run);
      if (!r.ok()) return Error(r.status());
      regrets.push_back(r->episodes.back().cumulative_regret);
    }
    const double median = Median(regrets);
    const bool ok = median < uniform;
    private_ok = private_ok && ok;
    parts.push_back(absl::StrFormat("%s median regret %.3f %s", std::string(VariantName(variant)),
                                    median, Verdict(ok)));
    log << "  " << parts.back() << "\n";
  }
  const bool a = always_right >= 8;
  return {a && private_ok,
          absl::StrFormat("(a) z=0 always-right argmax on %d/%d seeds (>=8 %s); (b) at "
                          "epsilon=5 vs uniform-policy regret %.3f: %s",
                          always_right, kSeeds, Verdict(a), uniform,
                          absl::StrJoin(parts, ", "))};
}

// Trains every seed of `config` at its own z and counts runs whose best
// evaluation reaches `threshold`.
absl::StatusOr<std::pair<int, std::vector<double>>> CountSuccesses(const std::string& config,
                                                                   int seeds, double threshold,
                                                                   std::ostream& log) {
  absl::StatusOr<harness::ExperimentConfig> cfg =
      harness::LoadConfig(std::string(DPPG_CONFIG_DIR) + "/" + config);
  if (!cfg.ok()) return cfg.status();
  cfg->n_seeds = seeds;
  cfg->z_grid = {cfg->train.privacy.z};
  absl::StatusOr<std::vector<harness::SweepPoint>> points = harness::RunSweep(*cfg, &log);
  if (!points.ok()) return points.status();
  int hits = 0;
  std::vector<double> best;
  for (const harness::SweepRun& r : points->front().runs) {
    best.push_back(r.best_return);
    hits += r.best_return >= threshold;
  }
  return std::make_pair(hits, best);
}

std::string FormatReturns(const std::vector<double>& v) {
  return absl::StrJoin(v, ",", [](std::string* out, double x) {
    absl::StrAppend(out, absl::StrFormat("%.1f", x));
  });
}

CriterionResult CartPole(std::ostream& log) {
  auto np = CountSuccesses("cartpole_nonprivate.ini", 10, 450.0, log);
  if (!np.ok()) return Error(np.status());
  auto dp = CountSuccesses("cartpole.ini", 10, 400.0, log);
  if (!dp.ok()) return Error(dp.status());
  const bool a = np->first >= 7;
  const bool b = dp->first >= 6;
  return {a && b,
          absl::StrFormat("non-private >=450 on %d/10 seeds (>=7 %s) [%s]; z=1 >=400 on %d/10 "
                          "seeds (>=6 %s) [%s]",
                          np->first, Verdict(a), FormatReturns(np->second), dp->first,
                          Verdict(b), FormatReturns(dp->second))};
}

CriterionResult Acrobot(std::ostream& log) {
  auto dp = CountSuccesses("acrobot.ini", 10, -110.0, log);
  if (!dp.ok()) return Error(dp.status());
  const bool ok = dp->first >= 6;
  return {ok, absl::StrFormat("z=1 >=-110 on %d/10 seeds (>=6 %s) [%s]", dp->first,
                              Verdict(ok), FormatReturns(dp->second))};
}

// Kendall's tau-a between two equally long sequences.
double KendallTau(const std::vector<double>& x, const std::vector<double>& y) {
  int concordant = 0;
  int discordant = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = i + 1; j < x.size(); ++j) {
      const double s = (x[i] - x[j]) * (y[i] - y[j]);
      concordant += s > 0;
      discordant += s < 0;
    }
  }
  const double pairs = x.size() * (x.size() - 1) / 2.0;
  return (concordant - discordant) / pairs;
}

// Returns should fall as epsilon shrinks: Kendall's tau between z and the
// per-z median final return is negative, and the median at the smallest
// epsilon (which is below 1) sits under the median of the epsilon >= 1 points.
CriterionResult PrivacyUtility(std::ostream& log) {
  absl::StatusOr<harness::ExperimentConfig> cfg =
      harness::LoadConfig(std::string(DPPG_CONFIG_DIR) + "/cartpole.ini");
  if (!cfg.ok()) return Error(cfg.status());
  cfg->n_seeds = 10;
  cfg->z_grid = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  absl::StatusOr<std::vector<harness::SweepPoint>> points = harness::RunSweep(*cfg, &log);
  if (!points.ok()) return Error(points.status());
  std::vector<double> zs;
  std::vector<double> medians;
  std::vector<double> plateau;
  std::vector<std::string> parts;
  for (const harness::SweepPoint& p : *points) {
    std::vector<double> finals;
    for (const harness::SweepRun& r : p.runs) finals.push_back(r.final_return);
    zs.push_back(p.z);
    medians.push_back(Median(finals));
    if (p.epsilon >= 1.0) plateau.push_back(medians.back());
    parts.push_back(absl::StrFormat("eps=%.3g:%.1f", p.epsilon, medians.back()));
  }
  const double tau = KendallTau(zs, medians);
  const harness::SweepPoint& last = points->back();
  const double plateau_median = plateau.empty() ? std::nan("") : Median(plateau);
  const bool a = tau < 0.0;
  const bool b = last.epsilon < 1.0 && medians.back() < plateau_median;
  return {a && b,
          absl::StrFormat("seed-median final returns [%s]; Kendall tau(z, median)=%.3f (<0 %s); "
                          "median at eps=%.3g is %.1f vs eps>=1 median %.1f (below %s)",
                          absl::StrJoin(parts, " "), tau, Verdict(a), last.epsilon,
                          medians.back(), plateau_median, Verdict(b))};
}

}  // namespace

std::vector<Criterion> AllCriteria() {
  return {
      {1, "accountant fidelity", AccountantFidelity},
      {2, "distribution correctness", DistributionCorrectness},
      {3, "trust-region containment", TrustRegionContainment},
      {4, "objective-gap property", ObjectiveGap},
      {5, "moment formulas", MomentFormulas},
      {6, "sensitivity contract", Sensitivity},
      {7, "gradient correctness", GradientCorrectness},
      {8, "riverswim", Riverswim},
      {9, "cartpole", CartPole},
      {10, "acrobot", Acrobot},
      {11, "privacy-utility trend", PrivacyUtility},
  };
}

}  // namespace dppg::acceptance
