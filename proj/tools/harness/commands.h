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

#ifndef DPPG_HARNESS_COMMANDS_H_
#define DPPG_HARNESS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dppg/train.h"
#include "dppg/trust_region.h"
#include "harness/config.h"

namespace dppg::harness {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Snapshot of one training run as written to disk.
struct RunRecord {
  std::string config_snapshot;
  uint64_t seed = 0;
  std::vector<IterationMetrics> metrics;
  double wall_clock_seconds = 0.0;
  std::string version;
};

// Banner line with the run's (epsilon, delta), printed before training.
std::string PrivacyBanner(double z, double delta);

int CmdTrain(const std::string& config_path, const std::optional<std::string>& output_dir,
             std::ostream& out, std::ostream& err);

int CmdTrainRiverswim(const std::string& config_path,
                      const std::optional<std::string>& variant,
                      const std::optional<std::string>& output_dir, std::ostream& out,
                      std::ostream& err);

// One (z, seed) training run of a sweep.
struct SweepRun {
  double z = 0.0;
  uint64_t seed = 0;
  double epsilon = 0.0;
  double final_return = 0.0;
  double best_return = 0.0;
};

struct SweepPoint {
  double z = 0.0;
  double epsilon = 0.0;
  // Mean and standard deviation over seeds of the final evaluation return.
  double mean_return = 0.0;
  double std_return = 0.0;
  std::vector<SweepRun> runs;
};

// Trains one deep run per (z, seed) of the config's grid and seeds.
absl::StatusOr<std::vector<SweepPoint>> RunSweep(const ExperimentConfig& cfg,
                                                 std::ostream* progress);

int CmdSweep(const std::string& config_path, const std::optional<std::string>& z_grid,
             const std::optional<std::string>& output_dir, std::ostream& out,
             std::ostream& err);

int CmdEvaluate(const std::string& checkpoint, const std::string& env, int episodes,
                uint64_t seed, std::ostream& out, std::ostream& err);

int CmdAccountant(std::optional<double> z, std::optional<double> epsilon, double delta,
                  std::ostream& out, std::ostream& err);

struct ClipnormArgs {
  std::string rule;
  double alpha = 3.5;
  double beta = 0.4;
  double eta = 1.0;
  double z = 1.0;
  int d = 1;
  std::optional<std::string> fisher_path;
  // loss-gap rule only.
  double lambda = 0.1;
  double beta2 = 0.1;
  double grad_norm = 1.0;
};

// Clipping norm for a rule: l2-quantile, l2-markov, kl or loss-gap.
absl::StatusOr<double> ComputeClipNorm(const ClipnormArgs& args);

int CmdClipnorm(const ClipnormArgs& args, std::ostream& out, std::ostream& err);

struct VerifyArgs {
  ClipnormArgs clip;
  int64_t trials = 100'000;
  uint64_t seed = 0;
  LossGapForm form = LossGapForm::kProof;
};

struct VerifyReport {
  double clip_norm = 0.0;
  double target = 0.0;
  ContainmentReport containment;
  bool passed = false;
};

absl::StatusOr<VerifyReport> VerifyTrustRegion(const VerifyArgs& args);
// One line; depends only on the report, so rules that reduce to each other
// print identical lines.
std::string FormatVerifyReport(const VerifyReport& report);

int CmdVerifyTr(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace dppg::harness

#endif  // DPPG_HARNESS_COMMANDS_H_
