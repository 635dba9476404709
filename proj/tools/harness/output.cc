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

#include "harness/output.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dppg/accountant.h"

namespace dppg::harness {

absl::Status CsvTable::AddRow(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    return absl::InternalError(absl::StrCat("CSV row has ", row.size(), " fields, header has ",
                                            header_.size()));
  }
  rows_.push_back(std::move(row));
  return absl::OkStatus();
}

std::string CsvTable::ToString() const {
  std::string out = absl::StrCat(absl::StrJoin(header_, ","), "\n");
  for (const auto& row : rows_) absl::StrAppend(&out, absl::StrJoin(row, ","), "\n");
  return out;
}

absl::Status CsvTable::WriteFile(const std::string& path) const {
  return WriteTextFile(path, ToString());
}

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.10g", v);
}

CsvTable MetricsTable(const std::vector<IterationMetrics>& metrics) {
  CsvTable table({"iteration", "users_seen", "env_steps", "mean_return", "grad_norm",
                  "clip_fraction", "S", "epsilon"});
  for (const IterationMetrics& m : metrics) {
    table
        .AddRow({absl::StrCat(m.iteration), absl::StrCat(m.users_seen),
                 absl::StrCat(m.env_steps), Num(m.mean_return), Num(m.grad_norm),
                 Num(m.clip_fraction), Num(m.clip_norm), Num(m.epsilon)})
        .IgnoreError();
  }
  return table;
}

CsvTable RiverswimMetricsTable(const RiverswimResult& result, int horizon) {
  std::vector<IterationMetrics> metrics;
  for (const RiverswimEpisode& e : result.episodes) {
    IterationMetrics m;
    m.iteration = e.episode;
    m.users_seen = e.episode + 1;
    m.env_steps = static_cast<int64_t>(e.episode + 1) * horizon;
    m.mean_return = e.episode_return;
    m.grad_norm = e.grad_norm;
    m.clip_fraction = e.clipped ? 1.0 : 0.0;
    m.clip_norm = e.clip_norm;
    m.epsilon = result.epsilon;
    metrics.push_back(m);
  }
  return MetricsTable(metrics);
}

CsvTable RegretTable(const RiverswimResult& result) {
  CsvTable table({"episode", "cumulative_regret", "S_used"});
  for (const RiverswimEpisode& e : result.episodes) {
    table.AddRow({absl::StrCat(e.episode), Num(e.cumulative_regret), Num(e.clip_norm)})
        .IgnoreError();
  }
  return table;
}

CsvTable EvalTable(const std::vector<EvalPoint>& evals) {
  CsvTable table({"env_steps", "mean_return", "std_return"});
  for (const EvalPoint& e : evals) {
    table.AddRow({absl::StrCat(e.env_steps), Num(e.mean_return), Num(e.std_return)})
        .IgnoreError();
  }
  return table;
}

CsvTable ZEpsilonTable(const std::vector<double>& extra, double delta) {
  std::vector<double> zs;
  for (int i = 1; i <= 200; ++i) zs.push_back(0.05 * i);
  for (double z : extra) {
    if (z > 0.0) zs.push_back(z);
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  CsvTable table({"z", "epsilon", "mechanism"});
  for (double z : zs) {
    absl::StatusOr<PrivacyBudget> b = EpsilonOfZ(z, delta);
    if (!b.ok()) continue;
    table.AddRow({Num(z), Num(b->epsilon), std::string(MechanismName(b->mechanism))})
        .IgnoreError();
  }
  return table;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << text;
  if (!out) return absl::UnavailableError(absl::StrCat("write to ", path, " failed"));
  return absl::OkStatus();
}

absl::Status EnsureDirectory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create directory ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

}  // namespace dppg::harness
