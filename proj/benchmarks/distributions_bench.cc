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

#include "benchmark/benchmark.h"
#include "dppg/distributions.h"
#include "dppg/random.h"

namespace dppg {
namespace {

void BM_NcChiSqCdf(benchmark::State& state) {
  const NoncentralChiSq dist{static_cast<int>(state.range(0)), 4.0};
  const double x = dist.dof + 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(NcChiSqCdf(dist, x));
}
BENCHMARK(BM_NcChiSqCdf)->Arg(2)->Arg(64)->Arg(4096);

void BM_NcChiSqQuantile(benchmark::State& state) {
  const NoncentralChiSq dist{static_cast<int>(state.range(0)), 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(NcChiSqQuantile(dist, 0.6));
}
BENCHMARK(BM_NcChiSqQuantile)->Arg(2)->Arg(64)->Arg(4096);

void BM_GenChiSqCdf(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  GeneralizedChiSq dist{Vector::LinSpaced(d, 0.1, 2.0),
                        StandardNormalVector(d, rng).cwiseAbs2()};
  const double x = dist.weights.dot(Vector::Ones(d) + dist.noncentralities);
  for (auto _ : state) benchmark::DoNotOptimize(GenChiSqCdf(dist, x));
}
BENCHMARK(BM_GenChiSqCdf)->Arg(7)->Arg(64);

}  // namespace
}  // namespace dppg
