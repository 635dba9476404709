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

// Command-line entry point: dppg <subcommand> [options].

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "harness/commands.h"

namespace {

using dppg::harness::ClipnormArgs;
using dppg::harness::VerifyArgs;

void AddClipnormOptions(CLI::App* cmd, ClipnormArgs& args) {
  cmd->add_option("--rule", args.rule, "l2-quantile, l2-markov, kl or loss-gap")->required();
  cmd->add_option("--alpha", args.alpha, "trust-region radius");
  cmd->add_option("--beta", args.beta, "allowed violation probability");
  cmd->add_option("--eta", args.eta, "global step size");
  cmd->add_option("--z", args.z, "noise multiplier");
  cmd->add_option("--d", args.d, "parameter dimension");
  cmd->add_option("--fisher", args.fisher_path, "Fisher matrix file (kl rule; default I)");
  cmd->add_option("--lambda", args.lambda, "loss-gap tolerance (loss-gap rule)");
  cmd->add_option("--beta2", args.beta2, "loss-gap violation probability");
  cmd->add_option("--grad-norm", args.grad_norm, "|g| (loss-gap rule)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = dppg::harness;
  CLI::App app{"Differentially private policy gradient experiments"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> output_dir;
  std::optional<std::string> variant;
  std::optional<std::string> z_grid;

  CLI::App* train = app.add_subcommand("train", "train on the env named in a config");
  train->add_option("config", config, "INI config file")->required();
  train->add_option("--output-dir", output_dir, "overrides run.output_dir");

  CLI::App* river = app.add_subcommand("train-riverswim", "train the linear Riverswim policy");
  river->add_option("config", config, "INI config file")->required();
  river->add_option("--variant", variant, "l2 or kl; overrides riverswim.variant");
  river->add_option("--output-dir", output_dir, "overrides run.output_dir");

  CLI::App* sweep = app.add_subcommand("sweep", "train over a grid of noise multipliers");
  sweep->add_option("config", config, "INI config file")->required();
  sweep->add_option("--z-grid", z_grid, "comma-separated z values; overrides sweep.z_grid");
  sweep->add_option("--output-dir", output_dir, "overrides run.output_dir");

  std::string checkpoint;
  std::string env;
  int episodes = 20;
  uint64_t seed = 0;
  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a policy checkpoint");
  evaluate->add_option("checkpoint", checkpoint, "policy checkpoint")->required();
  evaluate->add_option("--env", env, "riverswim, cartpole or acrobot")->required();
  evaluate->add_option("--episodes", episodes, "evaluation episodes");
  evaluate->add_option("--seed", seed, "evaluation seed");

  std::optional<double> z;
  std::optional<double> epsilon;
  double delta = 1e-5;
  CLI::App* accountant = app.add_subcommand("accountant", "convert between z and epsilon");
  accountant->add_option("--z", z, "noise multiplier");
  accountant->add_option("--epsilon", epsilon, "target epsilon");
  accountant->add_option("--delta", delta, "delta");

  ClipnormArgs clip;
  CLI::App* clipnorm = app.add_subcommand("clipnorm", "clipping norm for a trust-region rule");
  AddClipnormOptions(clipnorm, clip);

  VerifyArgs verify;
  std::string form = "proof";
  CLI::App* verify_tr =
      app.add_subcommand("verify-tr", "Monte Carlo containment check of a clipping rule");
  AddClipnormOptions(verify_tr, verify.clip);
  verify_tr->add_option("--trials", verify.trials, "noise draws");
  verify_tr->add_option("--seed", verify.seed, "sampling seed");
  verify_tr->add_option("--form", form, "loss-gap bound form: proof or statement")
      ->check(CLI::IsMember({"proof", "statement"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? h::kExitOk : h::kExitUsage;
  }

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  if (*train) return h::CmdTrain(config, output_dir, out, err);
  if (*river) return h::CmdTrainRiverswim(config, variant, output_dir, out, err);
  if (*sweep) return h::CmdSweep(config, z_grid, output_dir, out, err);
  if (*evaluate) return h::CmdEvaluate(checkpoint, env, episodes, seed, out, err);
  if (*accountant) return h::CmdAccountant(z, epsilon, delta, out, err);
  if (*clipnorm) return h::CmdClipnorm(clip, out, err);
  verify.form =
      form == "proof" ? dppg::LossGapForm::kProof : dppg::LossGapForm::kStatement;
  return h::CmdVerifyTr(verify, out, err);
}
