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

#ifndef DPPG_RANDOM_H_
#define DPPG_RANDOM_H_

#include <cstdint>
#include <string_view>

#include "dppg/types.h"

namespace dppg {

uint64_t SplitMix64(uint64_t x);

// 64-bit FNV-1a; stable across platforms, unlike std::hash.
uint64_t HashName(std::string_view name);

// Derives named, independent substreams ("rollout"/u, "noise"/iteration,
// "init", ...) from one root seed so subsystems can be reseeded separately.
class SeedTree {
 public:
  explicit SeedTree(uint64_t root) : root_(root) {}

  uint64_t root() const { return root_; }
  uint64_t Derive(std::string_view name, uint64_t index = 0) const;
  Rng Stream(std::string_view name, uint64_t index = 0) const {
    return Rng(Derive(name, index));
  }

 private:
  uint64_t root_;
};

// Fills a vector with i.i.d. N(0, 1) draws.
Vector StandardNormalVector(Eigen::Index n, Rng& rng);

double StandardNormal(Rng& rng);
double Uniform(double lo, double hi, Rng& rng);

}  // namespace dppg

#endif  // DPPG_RANDOM_H_
