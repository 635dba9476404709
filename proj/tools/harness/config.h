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

#ifndef DPPG_HARNESS_CONFIG_H_
#define DPPG_HARNESS_CONFIG_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dppg/train.h"
#include "dppg/train_riverswim.h"

namespace dppg::harness {

// Everything one experiment needs. Parsed from an INI file with sections
// [run], [privacy], [policy], [ppo], [critic], [riverswim] and [sweep]; the
// key reference lives in README.md.
struct ExperimentConfig {
  std::string env;
  uint64_t seed = 0;
  int n_seeds = 1;
  std::string output_dir = "runs/default";
  // Local minibatches per epoch; the minibatch size is ceil(T / this).
  int num_minibatches = 2;
  TrainConfig train;
  RiverswimTrainConfig riverswim;
  std::vector<double> z_grid = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};

  // Copies the shared fields (env, seed, delta, minibatch size) into the
  // algorithm configs. Idempotent.
  void Finalize();
  absl::Status Validate() const;
};

// Parses and validates an INI config. Unknown keys, malformed values and a
// missing run.env are errors naming the offending key. The DPPG_SEED
// environment variable, when set, replaces run.seed.
absl::StatusOr<ExperimentConfig> ParseConfig(std::istream& in);
absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path);

// Canonical INI text of a config; ParseConfig(WriteConfig(c)) reproduces c
// exactly (doubles are printed with 17 significant digits).
std::string WriteConfig(const ExperimentConfig& cfg);

// True for errors caused by the config content rather than I/O.
bool IsConfigError(const absl::Status& status);

}  // namespace dppg::harness

#endif  // DPPG_HARNESS_CONFIG_H_
