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

#ifndef DPPG_POLICY_H_
#define DPPG_POLICY_H_

#include <iosfwd>
#include <memory>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "dppg/mlp.h"
#include "dppg/types.h"

namespace dppg {

enum class ArchKind {
  // phi(s, a) = obs(s) (x) onehot(a): one preference per (state, action).
  kLogLinearProduct,
  // phi(s, a) = [obs(s); a]: the state part cancels in the softmax, so action
  // preferences do not depend on the state.
  kLogLinearConcat,
  // tanh MLP with two hidden layers producing action logits.
  kMlp,
};

struct Architecture {
  ArchKind kind = ArchKind::kMlp;
  int input_dim = 1;
  int num_actions = 2;
  int hidden = 64;

  int NumParams() const;
  // Tags: "loglinear-product:6x2", "loglinear-concat:6x2", "mlp:4-64-64-2".
  std::string Tag() const;
  static absl::StatusOr<Architecture> FromTag(absl::string_view tag);

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// Categorical policy pi_theta(a | s) over a flat parameter vector. Instances
// carry only the architecture, so evaluation is const and thread-safe.
class Policy {
 public:
  virtual ~Policy() = default;

  const Architecture& arch() const { return arch_; }
  int num_params() const { return arch_.NumParams(); }
  int num_actions() const { return arch_.num_actions; }

  // Observations are the columns of `obs`; logits are num_actions x batch.
  virtual Matrix Logits(const Vector& theta, const Matrix& obs) const = 0;
  // Logits, then accumulates J^T (dlogits) into grad, where dlogits is the
  // gradient of some scalar w.r.t. the logits.
  virtual Matrix ForwardBackward(
      const Vector& theta, const Matrix& obs,
      const std::function<Matrix(const Matrix&)>& dlogits, Vector& grad) const = 0;
  virtual Vector InitialParams(Rng& rng) const = 0;

  Vector LogProbs(const Vector& theta, const Vector& obs) const;
  double LogProb(const Vector& theta, const Vector& obs, int action) const;
  // grad_theta log pi(action | obs).
  Vector Score(const Vector& theta, const Vector& obs, int action) const;
  double Entropy(const Vector& theta, const Vector& obs) const;
  Vector EntropyGrad(const Vector& theta, const Vector& obs) const;

  struct Sample {
    int action = 0;
    double log_prob = 0.0;
  };
  Sample SampleAction(const Vector& theta, const Vector& obs, Rng& rng) const;

 protected:
  explicit Policy(Architecture arch) : arch_(arch) {}

 private:
  Architecture arch_;
};

// Numerically stable log-softmax over each column.
Matrix LogSoftmax(const Matrix& logits);

class LogLinearPolicy final : public Policy {
 public:
  explicit LogLinearPolicy(Architecture arch);

  // phi(s, a) for the configured feature map.
  Vector Features(const Vector& obs, int action) const;

  Matrix Logits(const Vector& theta, const Matrix& obs) const override;
  Matrix ForwardBackward(const Vector& theta, const Matrix& obs,
                         const std::function<Matrix(const Matrix&)>& dlogits,
                         Vector& grad) const override;
  // Zero parameters: the uniform policy.
  Vector InitialParams(Rng& rng) const override;
};

class MlpPolicy final : public Policy {
 public:
  explicit MlpPolicy(Architecture arch);

  Matrix Logits(const Vector& theta, const Matrix& obs) const override;
  Matrix ForwardBackward(const Vector& theta, const Matrix& obs,
                         const std::function<Matrix(const Matrix&)>& dlogits,
                         Vector& grad) const override;
  Vector InitialParams(Rng& rng) const override;

 private:
  Mlp net_;
};

std::unique_ptr<Policy> MakePolicy(const Architecture& arch);

// Parameter vector plus the architecture it belongs to.
struct PolicyParams {
  Architecture arch;
  Vector theta;
};

// Checkpoint format: a header line `arch=<tag> d=<int>` followed by d decimal
// floats, one per line, printed with round-trip precision.
void WritePolicyCheckpoint(std::ostream& out, const PolicyParams& params);
absl::StatusOr<PolicyParams> ReadPolicyCheckpoint(std::istream& in);

}  // namespace dppg

#endif  // DPPG_POLICY_H_
