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

#include "harness/commands.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "dppg/accountant.h"
#include "dppg/envs/environment.h"
#include "dppg/fisher_matrix.h"
#include "dppg/policy.h"
#include "dppg/random.h"
#include "dppg/trajectory.h"
#include "dppg/train_riverswim.h"
#include "harness/output.h"
#include "json.hpp"

#ifndef DPPG_VERSION
#define DPPG_VERSION "unknown"
#endif

namespace dppg::harness {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinity; unbounded epsilon is written as null.
Json JsonNumber(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return IsConfigError(status) ? kExitUsage : kExitFailure;
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string RunDirectory(const std::string& base, uint64_t seed, int n_seeds) {
  return n_seeds == 1 ? base : absl::StrCat(base, "/seed_", seed);
}

absl::Status WriteCheckpoint(const std::string& path, const PolicyParams& policy) {
  std::ostringstream out;
  WritePolicyCheckpoint(out, policy);
  return WriteTextFile(path, out.str());
}

absl::Status WriteRunRecord(const std::string& dir, const RunRecord& record) {
  if (absl::Status s = WriteTextFile(dir + "/config.ini", record.config_snapshot); !s.ok()) {
    return s;
  }
  return MetricsTable(record.metrics).WriteFile(dir + "/metrics.csv");
}

absl::Status TrainDeepRun(const ExperimentConfig& cfg, const std::string& dir,
                          std::ostream& out) {
  if (absl::Status s = EnsureDirectory(dir); !s.ok()) return s;
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<TrainResult> result = TrainDeep(cfg.train);
  if (!result.ok()) return result.status();

  RunRecord record{WriteConfig(cfg), cfg.seed, result->metrics, SecondsSince(start),
                   DPPG_VERSION};
  if (absl::Status s = WriteRunRecord(dir, record); !s.ok()) return s;
  if (absl::Status s = EvalTable(result->evals).WriteFile(dir + "/evals.csv"); !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteCheckpoint(dir + "/policy.ckpt", result->policy); !s.ok()) {
    return s;
  }

  const EvalPoint& final_eval = result->final_eval();
  Json summary;
  summary["env"] = cfg.env;
  summary["algorithm"] = "dppg";
  summary["seed"] = cfg.seed;
  summary["z"] = cfg.train.privacy.z;
  summary["epsilon"] = JsonNumber(result->budget.epsilon);
  summary["delta"] = cfg.train.privacy.delta;
  summary["mechanism"] =
      cfg.train.privacy.z > 0.0 ? std::string(MechanismName(result->budget.mechanism)) : "none";
  summary["clip_norm"] = JsonNumber(cfg.train.privacy.clip_norm);
  summary["users_per_update"] = cfg.train.privacy.users_per_update;
  summary["iterations"] = result->metrics.size();
  summary["env_steps"] = result->metrics.empty() ? 0 : result->metrics.back().env_steps;
  summary["final_eval"] = {{"mean_return", final_eval.mean_return},
                           {"std_return", final_eval.std_return},
                           {"episodes", cfg.train.eval_episodes}};
  summary["best_eval_mean_return"] = result->best_eval();
  summary["wall_clock_seconds"] = record.wall_clock_seconds;
  summary["version"] = record.version;
  if (absl::Status s = WriteTextFile(dir + "/summary.json", summary.dump(2) + "\n"); !s.ok()) {
    return s;
  }
  out << absl::StrFormat("seed %d: final eval %.2f +- %.2f, best %.2f (%s)\n", cfg.seed,
                         final_eval.mean_return, final_eval.std_return, result->best_eval(),
                         dir);
  return absl::OkStatus();
}

absl::Status TrainRiverswimRun(const ExperimentConfig& cfg, const std::string& dir,
                               std::ostream& out) {
  if (absl::Status s = EnsureDirectory(dir); !s.ok()) return s;
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<RiverswimResult> result = TrainLinearRiverswim(cfg.riverswim);
  if (!result.ok()) return result.status();

  const CsvTable metrics = RiverswimMetricsTable(*result, cfg.riverswim.env.horizon);
  if (absl::Status s = WriteTextFile(dir + "/config.ini", WriteConfig(cfg)); !s.ok()) return s;
  if (absl::Status s = metrics.WriteFile(dir + "/metrics.csv"); !s.ok()) return s;
  if (absl::Status s = RegretTable(*result).WriteFile(dir + "/regret.csv"); !s.ok()) return s;
  if (absl::Status s = WriteCheckpoint(dir + "/policy.ckpt", result->policy); !s.ok()) {
    return s;
  }

  const double uniform = UniformPolicyRegret(cfg.riverswim.env, cfg.riverswim.episodes);
  const double regret = result->episodes.back().cumulative_regret;
  Json summary;
  summary["env"] = cfg.env;
  summary["algorithm"] = absl::StrCat("dppg-", std::string(VariantName(cfg.riverswim.variant)));
  summary["seed"] = cfg.seed;
  summary["z"] = result->z;
  summary["epsilon"] = JsonNumber(result->epsilon);
  summary["delta"] = cfg.riverswim.delta;
  summary["episodes"] = cfg.riverswim.episodes;
  summary["optimal_return"] = result->optimal_return;
  summary["final_expected_return"] = result->episodes.back().expected_return;
  summary["cumulative_regret"] = regret;
  summary["uniform_policy_regret"] = uniform;
  summary["always_right"] = result->always_right;
  summary["wall_clock_seconds"] = SecondsSince(start);
  summary["version"] = DPPG_VERSION;
  if (absl::Status s = WriteTextFile(dir + "/summary.json", summary.dump(2) + "\n"); !s.ok()) {
    return s;
  }
  out << absl::StrFormat(
      "seed %d: cumulative regret %.3f (uniform policy %.3f), always-right %s (%s)\n",
      cfg.seed, regret, uniform, result->always_right ? "yes" : "no", dir);
  return absl::OkStatus();
}

// Runs every seed of a config; riverswim or deep according to run.env.
int TrainAllSeeds(ExperimentConfig cfg, std::ostream& out, std::ostream& err) {
  const bool riverswim = cfg.env == "riverswim";
  if (riverswim) {
    if (cfg.riverswim.z.has_value()) {
      out << PrivacyBanner(*cfg.riverswim.z, cfg.riverswim.delta);
    } else {
      absl::StatusOr<double> z = ZOfEpsilon(cfg.riverswim.epsilon, cfg.riverswim.delta);
      if (!z.ok()) return Fail(err, z.status());
      out << absl::StrFormat("privacy: epsilon=%.17g delta=%.17g z=%.17g (from epsilon)\n",
                             cfg.riverswim.epsilon, cfg.riverswim.delta, *z);
    }
  } else {
    out << PrivacyBanner(cfg.train.privacy.z, cfg.train.privacy.delta);
  }
  const uint64_t first = cfg.seed;
  for (int i = 0; i < cfg.n_seeds; ++i) {
    cfg.seed = first + i;
    cfg.Finalize();
    const std::string dir = RunDirectory(cfg.output_dir, cfg.seed, cfg.n_seeds);
    const absl::Status s =
        riverswim ? TrainRiverswimRun(cfg, dir, out) : TrainDeepRun(cfg, dir, out);
    if (!s.ok()) return Fail(err, s);
  }
  return kExitOk;
}

absl::StatusOr<std::vector<double>> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    double z = 0.0;
    if (!absl::SimpleAtod(item, &z) || !(z >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("config error: bad z grid entry '", std::string(item), "'"));
    }
    grid.push_back(z);
  }
  if (grid.empty()) return absl::InvalidArgumentError("config error: z grid is empty");
  return grid;
}

}  // namespace

std::string PrivacyBanner(double z, double delta) {
  if (z == 0.0) {
    return absl::StrFormat("privacy: none (z=0, delta=%.17g): updates are not private\n", delta);
  }
  absl::StatusOr<PrivacyBudget> budget = EpsilonOfZ(z, delta);
  if (!budget.ok()) return absl::StrCat("privacy: ", budget.status().message(), "\n");
  return absl::StrFormat("privacy: epsilon=%.17g delta=%.17g mechanism=%s z=%.17g\n",
                         budget->epsilon, delta, std::string(MechanismName(budget->mechanism)), z);
}

int CmdTrain(const std::string& config_path, const std::optional<std::string>& output_dir,
             std::ostream& out, std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = LoadConfig(config_path);
  if (!cfg.ok()) return Fail(err, cfg.status());
  if (output_dir.has_value()) cfg->output_dir = *output_dir;
  return TrainAllSeeds(*cfg, out, err);
}

int CmdTrainRiverswim(const std::string& config_path,
                      const std::optional<std::string>& variant,
                      const std::optional<std::string>& output_dir, std::ostream& out,
                      std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = LoadConfig(config_path);
  if (!cfg.ok()) return Fail(err, cfg.status());
  if (cfg->env != "riverswim") {
    err << "error: train-riverswim needs run.env = riverswim, config has '" << cfg->env
        << "'\n";
    return kExitUsage;
  }
  if (variant.has_value()) {
    absl::StatusOr<RiverswimVariant> v = ParseVariant(*variant);
    if (!v.ok()) {
      err << "error: " << v.status().message() << "\n";
      return kExitUsage;
    }
    cfg->riverswim.variant = *v;
  }
  if (output_dir.has_value()) cfg->output_dir = *output_dir;
  return TrainAllSeeds(*cfg, out, err);
}

absl::StatusOr<std::vector<SweepPoint>> RunSweep(const ExperimentConfig& cfg,
                                                 std::ostream* progress) {
  if (cfg.env == "riverswim") {
    return absl::InvalidArgumentError("config error: sweep trains deep policies; "
                                      "run.env must be cartpole or acrobot");
  }
  std::vector<SweepPoint> points;
  for (double z : cfg.z_grid) {
    SweepPoint point;
    point.z = z;
    point.epsilon = std::numeric_limits<double>::infinity();
    if (z > 0.0) {
      absl::StatusOr<PrivacyBudget> b = EpsilonOfZ(z, cfg.train.privacy.delta);
      if (!b.ok()) return b.status();
      point.epsilon = b->epsilon;
    }
    std::vector<double> finals;
    for (int i = 0; i < cfg.n_seeds; ++i) {
      ExperimentConfig run = cfg;
      run.seed = cfg.seed + i;
      run.train.privacy.z = z;
      run.Finalize();
      absl::StatusOr<TrainResult> result = TrainDeep(run.train);
      if (!result.ok()) return result.status();
      SweepRun r{z, run.seed, point.epsilon, result->final_eval().mean_return,
                 result->best_eval()};
      finals.push_back(r.final_return);
      point.runs.push_back(r);
      if (progress != nullptr) {
        *progress << absl::StrFormat("z=%g seed=%d epsilon=%s final=%.2f best=%.2f\n", z,
                                     run.seed, Num(point.epsilon), r.final_return,
                                     r.best_return);
      }
    }
    std::tie(point.mean_return, point.std_return) = MeanStd(finals);
    points.push_back(std::move(point));
  }
  return points;
}

int CmdSweep(const std::string& config_path, const std::optional<std::string>& z_grid,
             const std::optional<std::string>& output_dir, std::ostream& out,
             std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = LoadConfig(config_path);
  if (!cfg.ok()) return Fail(err, cfg.status());
  if (z_grid.has_value()) {
    absl::StatusOr<std::vector<double>> grid = ParseGrid(*z_grid);
    if (!grid.ok()) return Fail(err, grid.status());
    cfg->z_grid = *grid;
  }
  if (output_dir.has_value()) cfg->output_dir = *output_dir;
  if (absl::Status s = EnsureDirectory(cfg->output_dir); !s.ok()) return Fail(err, s);

  absl::StatusOr<std::vector<SweepPoint>> points = RunSweep(*cfg, &out);
  if (!points.ok()) return Fail(err, points.status());

  CsvTable curve({"z", "epsilon", "mean_return", "std_return"});
  CsvTable runs({"z", "seed", "epsilon", "final_return", "best_return"});
  for (const SweepPoint& p : *points) {
    curve.AddRow({Num(p.z), Num(p.epsilon), Num(p.mean_return), Num(p.std_return)})
        .IgnoreError();
    for (const SweepRun& r : p.runs) {
      runs.AddRow({Num(r.z), absl::StrCat(r.seed), Num(r.epsilon), Num(r.final_return),
                   Num(r.best_return)})
          .IgnoreError();
    }
  }
  const std::string dir = cfg->output_dir;
  for (const absl::Status& s :
       {curve.WriteFile(dir + "/privacy_utility.csv"), runs.WriteFile(dir + "/sweep_runs.csv"),
        ZEpsilonTable(cfg->z_grid, cfg->train.privacy.delta).WriteFile(dir + "/z_eps.csv"),
        WriteTextFile(dir + "/config.ini", WriteConfig(*cfg))}) {
    if (!s.ok()) return Fail(err, s);
  }
  out << "wrote " << dir << "/privacy_utility.csv and " << dir << "/z_eps.csv\n";
  return kExitOk;
}

int CmdEvaluate(const std::string& checkpoint, const std::string& env_name, int episodes,
                uint64_t seed, std::ostream& out, std::ostream& err) {
  if (episodes < 1) {
    err << "error: episodes must be >= 1, got " << episodes << "\n";
    return kExitUsage;
  }
  std::ifstream in(checkpoint);
  if (!in) {
    err << "error: cannot open checkpoint " << checkpoint << "\n";
    return kExitFailure;
  }
  absl::StatusOr<PolicyParams> params = ReadPolicyCheckpoint(in);
  if (!params.ok()) return Fail(err, params.status());
  absl::StatusOr<std::unique_ptr<Environment>> env = MakeEnvironment(env_name);
  if (!env.ok()) {
    err << "error: " << env.status().message() << "\n";
    return kExitUsage;
  }
  if (params->arch.input_dim != (*env)->observation_dim() ||
      params->arch.num_actions != (*env)->num_actions()) {
    err << "error: checkpoint architecture " << params->arch.Tag() << " does not fit env "
        << env_name << " (" << (*env)->observation_dim() << " observations, "
        << (*env)->num_actions() << " actions)\n";
    return kExitUsage;
  }
  const std::unique_ptr<Policy> policy = MakePolicy(params->arch);
  Rng rng = SeedTree(seed).Stream("evaluate");
  const auto [mean, sd] =
      MeanStd(EvaluateEpisodes(**env, *policy, params->theta, episodes, rng));
  out << absl::StrFormat("%s: mean return %.4f +- %.4f over %d episodes\n", env_name, mean, sd,
                         episodes);
  return kExitOk;
}

int CmdAccountant(std::optional<double> z, std::optional<double> epsilon, double delta,
                  std::ostream& out, std::ostream& err) {
  if (z.has_value() == epsilon.has_value()) {
    err << "error: pass exactly one of --z and --epsilon\n";
    return kExitUsage;
  }
  if (z.has_value()) {
    absl::StatusOr<PrivacyBudget> b = EpsilonOfZ(*z, delta);
    if (!b.ok()) return Fail(err, b.status());
    out << absl::StrFormat("z=%.17g delta=%.17g epsilon=%.17g mechanism=%s\n", *z, delta,
                           b->epsilon, std::string(MechanismName(b->mechanism)));
    return kExitOk;
  }
  absl::StatusOr<double> zz = ZOfEpsilon(*epsilon, delta);
  if (!zz.ok()) return Fail(err, zz.status());
  out << absl::StrFormat("epsilon=%.17g delta=%.17g z=%.17g mechanism=%s\n", *epsilon, delta,
                         *zz, *epsilon < 1.0 ? "M1" : "M2");
  return kExitOk;
}

namespace {

absl::StatusOr<FisherMatrix> LoadFisher(const ClipnormArgs& args) {
  if (!args.fisher_path.has_value()) return FisherMatrix::Identity(args.d);
  std::ifstream in(*args.fisher_path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open Fisher file ", *args.fisher_path));
  }
  return ReadFisherMatrix(in);
}

}  // namespace

absl::StatusOr<double> ComputeClipNorm(const ClipnormArgs& args) {
  const TrustRegionParams p{args.alpha, args.beta, args.eta, args.z, args.d};
  if (args.rule == "l2-quantile") return ClipNormL2Quantile(p);
  if (args.rule == "l2-markov") return ClipNormL2Markov(p);
  if (args.rule == "kl") {
    absl::StatusOr<FisherMatrix> fisher = LoadFisher(args);
    if (!fisher.ok()) return fisher.status();
    return ClipNormKl(p, *fisher);
  }
  if (args.rule == "loss-gap") {
    return ClipNormLossGap({args.lambda, args.beta2, args.grad_norm}, args.eta, args.z);
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "config error: unknown rule '", args.rule,
      "' (expected l2-quantile, l2-markov, kl or loss-gap)"));
}

int CmdClipnorm(const ClipnormArgs& args, std::ostream& out, std::ostream& err) {
  absl::StatusOr<double> s = ComputeClipNorm(args);
  if (!s.ok()) return Fail(err, s.status());
  out << absl::StrFormat("%.17g\n", *s);
  return kExitOk;
}

absl::StatusOr<VerifyReport> VerifyTrustRegion(const VerifyArgs& args) {
  if (args.trials < 1) {
    return absl::InvalidArgumentError("config error: trials must be >= 1");
  }
  absl::StatusOr<double> clip_norm = ComputeClipNorm(args.clip);
  if (!clip_norm.ok()) return clip_norm.status();
  VerifyReport report;
  report.clip_norm = *clip_norm;
  Rng rng = SeedTree(args.seed).Stream("verify-tr");
  const ClipnormArgs& c = args.clip;
  if (c.rule == "loss-gap") {
    report.target = 1.0 - c.beta2;
    Vector g = Vector::Zero(c.d);
    g[0] = c.grad_norm;
    report.containment =
        LossGapFrequency(args.form, c.lambda, c.eta, c.z, report.clip_norm, g, args.trials, rng);
  } else if (c.rule == "kl") {
    absl::StatusOr<FisherMatrix> fisher = LoadFisher(c);
    if (!fisher.ok()) return fisher.status();
    report.target = 1.0 - c.beta;
    absl::StatusOr<ContainmentReport> r =
        KlContainment(c.alpha, c.eta, c.z, report.clip_norm,
                      WorstCaseMean(*fisher, report.clip_norm), *fisher, args.trials, rng);
    if (!r.ok()) return r.status();
    report.containment = *r;
  } else {
    report.target = 1.0 - c.beta;
    report.containment =
        L2Containment(c.alpha, c.eta, c.z, report.clip_norm,
                      WorstCaseMean(FisherMatrix::Identity(c.d), report.clip_norm),
                      args.trials, rng);
  }
  report.passed = report.containment.Passes(report.target);
  return report;
}

std::string FormatVerifyReport(const VerifyReport& report) {
  const ContainmentReport& c = report.containment;
  return absl::StrFormat(
      "S=%.17g trials=%d contained=%d frequency=%.6f target=%.6f se=%.6f "
      "threshold=%.6f %s\n",
      report.clip_norm, c.trials, c.hits, c.frequency(), report.target,
      c.std_error(), report.target - 3.0 * c.std_error(), report.passed ? "PASS" : "FAIL");
}

int CmdVerifyTr(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  absl::StatusOr<VerifyReport> report = VerifyTrustRegion(args);
  if (!report.ok()) return Fail(err, report.status());
  out << FormatVerifyReport(*report);
  return report->passed ? kExitOk : kExitFailure;
}

}  // namespace dppg::harness
