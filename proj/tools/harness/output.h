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

#ifndef DPPG_HARNESS_OUTPUT_H_
#define DPPG_HARNESS_OUTPUT_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "dppg/train.h"
#include "dppg/train_riverswim.h"

namespace dppg::harness {

// Minimal CSV table: a header and rows of the same width.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  // Fails when the row width differs from the header.
  absl::Status AddRow(std::vector<std::string> row);
  std::string ToString() const;
  absl::Status WriteFile(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// %.10g, with "nan", "inf" and "-inf" spelled out.
std::string Num(double v);

CsvTable MetricsTable(const std::vector<IterationMetrics>& metrics);
// One row per episode; mean_return is the sampled episode's return.
CsvTable RiverswimMetricsTable(const RiverswimResult& result, int horizon);
CsvTable RegretTable(const RiverswimResult& result);
CsvTable EvalTable(const std::vector<EvalPoint>& evals);
// Dense z grid plus `extra` points: z,epsilon,mechanism.
CsvTable ZEpsilonTable(const std::vector<double>& extra, double delta);

absl::Status WriteTextFile(const std::string& path, const std::string& text);
absl::Status EnsureDirectory(const std::string& path);

}  // namespace dppg::harness

#endif  // DPPG_HARNESS_OUTPUT_H_
