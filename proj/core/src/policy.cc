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

#include "dppg/policy.h"

#include <cassert>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dppg/random.h"

namespace dppg {

int Architecture::NumParams() const {
  switch (kind) {
    case ArchKind::kLogLinearProduct:
      return input_dim * num_actions;
    case ArchKind::kLogLinearConcat:
      return input_dim + 1;
    case ArchKind::kMlp:
      return hidden * input_dim + hidden + hidden * hidden + hidden +
             num_actions * hidden + num_actions;
  }
  return 0;
}

std::string Architecture::Tag() const {
  switch (kind) {
    case ArchKind::kLogLinearProduct:
      return absl::StrCat("loglinear-product:", input_dim, "x", num_actions);
    case ArchKind::kLogLinearConcat:
      return absl::StrCat("loglinear-concat:", input_dim, "x", num_actions);
    case ArchKind::kMlp:
      return absl::StrCat("mlp:", input_dim, "-", hidden, "-", hidden, "-",
                          num_actions);
  }
  return "";
}

absl::StatusOr<Architecture> Architecture::FromTag(absl::string_view tag) {
  auto bad = [&] {
    return absl::InvalidArgumentError(absl::StrCat("bad architecture tag '", tag, "'"));
  };
  std::vector<absl::string_view> parts = absl::StrSplit(tag, ':');
  if (parts.size() != 2) return bad();
  Architecture arch;
  if (parts[0] == "mlp") {
    std::vector<absl::string_view> dims = absl::StrSplit(parts[1], '-');
    int h2 = 0;
    if (dims.size() != 4 || !absl::SimpleAtoi(dims[0], &arch.input_dim) ||
        !absl::SimpleAtoi(dims[1], &arch.hidden) || !absl::SimpleAtoi(dims[2], &h2) ||
        !absl::SimpleAtoi(dims[3], &arch.num_actions) || h2 != arch.hidden) {
      return bad();
    }
    arch.kind = ArchKind::kMlp;
  } else if (parts[0] == "loglinear-product" || parts[0] == "loglinear-concat") {
    std::vector<absl::string_view> dims = absl::StrSplit(parts[1], 'x');
    if (dims.size() != 2 || !absl::SimpleAtoi(dims[0], &arch.input_dim) ||
        !absl::SimpleAtoi(dims[1], &arch.num_actions)) {
      return bad();
    }
    arch.kind = parts[0] == "loglinear-product" ? ArchKind::kLogLinearProduct
                                                : ArchKind::kLogLinearConcat;
  } else {
    return bad();
  }
  if (arch.input_dim < 1 || arch.num_actions < 2 || arch.hidden < 1) return bad();
  return arch;
}

Matrix LogSoftmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const double m = logits.col(j).maxCoeff();
    const double lse = m + std::log((logits.col(j).array() - m).exp().sum());
    out.col(j) = logits.col(j).array() - lse;
  }
  return out;
}

Vector Policy::LogProbs(const Vector& theta, const Vector& obs) const {
  return LogSoftmax(Logits(theta, obs)).col(0);
}

double Policy::LogProb(const Vector& theta, const Vector& obs, int action) const {
  return LogProbs(theta, obs)[action];
}

Vector Policy::Score(const Vector& theta, const Vector& obs, int action) const {
  Vector grad = Vector::Zero(num_params());
  ForwardBackward(theta, obs,
                  [action](const Matrix& logits) {
                    // d log pi(a) / d logits = onehot(a) - pi.
                    Matrix d = -LogSoftmax(logits).array().exp().matrix();
                    d(action, 0) += 1.0;
                    return d;
                  },
                  grad);
  return grad;
}

double Policy::Entropy(const Vector& theta, const Vector& obs) const {
  const Vector logp = LogProbs(theta, obs);
  return std::max(0.0, -(logp.array().exp() * logp.array()).sum());
}

Vector Policy::EntropyGrad(const Vector& theta, const Vector& obs) const {
  Vector grad = Vector::Zero(num_params());
  ForwardBackward(theta, obs,
                  [](const Matrix& logits) {
                    // dH / dz_j = -pi_j (log pi_j + H).
                    const Matrix logp = LogSoftmax(logits);
                    const Matrix p = logp.array().exp();
                    const double h = -(p.array() * logp.array()).sum();
                    return Matrix(-(p.array() * (logp.array() + h)));
                  },
                  grad);
  return grad;
}

Policy::Sample Policy::SampleAction(const Vector& theta, const Vector& obs,
                                    Rng& rng) const {
  const Vector logp = LogProbs(theta, obs);
  const double u = Uniform(0.0, 1.0, rng);
  double cumulative = 0.0;
  int action = static_cast<int>(logp.size()) - 1;
  for (Eigen::Index a = 0; a < logp.size(); ++a) {
    cumulative += std::exp(logp[a]);
    if (u < cumulative) {
      action = static_cast<int>(a);
      break;
    }
  }
  return {action, logp[action]};
}

LogLinearPolicy::LogLinearPolicy(Architecture arch) : Policy(arch) {
  assert(arch.kind != ArchKind::kMlp);
}

Vector LogLinearPolicy::Features(const Vector& obs, int action) const {
  const int n = arch().input_dim;
  Vector phi = Vector::Zero(num_params());
  if (arch().kind == ArchKind::kLogLinearProduct) {
    phi.segment(action * n, n) = obs;
  } else {
    phi.head(n) = obs;
    phi[n] = action;
  }
  return phi;
}

Matrix LogLinearPolicy::Logits(const Vector& theta, const Matrix& obs) const {
  const int n = arch().input_dim;
  const int actions = num_actions();
  Matrix logits(actions, obs.cols());
  if (arch().kind == ArchKind::kLogLinearProduct) {
    Eigen::Map<const Matrix> w(theta.data(), n, actions);
    logits = w.transpose() * obs;
  } else {
    const Eigen::RowVectorXd shared = theta.head(n).transpose() * obs;
    for (int a = 0; a < actions; ++a) logits.row(a) = shared.array() + theta[n] * a;
  }
  return logits;
}

Matrix LogLinearPolicy::ForwardBackward(
    const Vector& theta, const Matrix& obs,
    const std::function<Matrix(const Matrix&)>& dlogits, Vector& grad) const {
  const int n = arch().input_dim;
  Matrix logits = Logits(theta, obs);
  const Matrix d = dlogits(logits);
  if (arch().kind == ArchKind::kLogLinearProduct) {
    Eigen::Map<Matrix>(grad.data(), n, num_actions()).noalias() += obs * d.transpose();
  } else {
    grad.head(n) += obs * d.colwise().sum().transpose();
    for (int a = 0; a < num_actions(); ++a) grad[n] += a * d.row(a).sum();
  }
  return logits;
}

Vector LogLinearPolicy::InitialParams(Rng&) const { return Vector::Zero(num_params()); }

MlpPolicy::MlpPolicy(Architecture arch)
    : Policy(arch),
      net_({arch.input_dim, arch.hidden, arch.hidden, arch.num_actions}) {
  assert(arch.kind == ArchKind::kMlp);
}

Matrix MlpPolicy::Logits(const Vector& theta, const Matrix& obs) const {
  return net_.Forward(theta, obs);
}

Matrix MlpPolicy::ForwardBackward(const Vector& theta, const Matrix& obs,
                                  const std::function<Matrix(const Matrix&)>& dlogits,
                                  Vector& grad) const {
  return net_.ForwardBackward(theta, obs, dlogits, grad);
}

Vector MlpPolicy::InitialParams(Rng& rng) const { return net_.Initialize(0.01, rng); }

std::unique_ptr<Policy> MakePolicy(const Architecture& arch) {
  if (arch.kind == ArchKind::kMlp) return std::make_unique<MlpPolicy>(arch);
  return std::make_unique<LogLinearPolicy>(arch);
}

void WritePolicyCheckpoint(std::ostream& out, const PolicyParams& params) {
  out << "arch=" << params.arch.Tag() << " d=" << params.theta.size() << "\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < params.theta.size(); ++i) out << params.theta[i] << "\n";
}

absl::StatusOr<PolicyParams> ReadPolicyCheckpoint(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    return absl::InvalidArgumentError("policy checkpoint is empty");
  }
  std::vector<absl::string_view> fields =
      absl::StrSplit(absl::StripAsciiWhitespace(header), ' ', absl::SkipEmpty());
  absl::string_view tag;
  absl::string_view dim;
  if (fields.size() != 2 || !absl::ConsumePrefix(&fields[0], "arch=") ||
      !absl::ConsumePrefix(&fields[1], "d=")) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bad checkpoint header '", header, "', expected arch=<tag> d=<int>"));
  }
  tag = fields[0];
  dim = fields[1];
  absl::StatusOr<Architecture> arch = Architecture::FromTag(tag);
  if (!arch.ok()) return arch.status();
  int d = 0;
  if (!absl::SimpleAtoi(dim, &d) || d != arch->NumParams()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "checkpoint d=", dim, " does not match ", tag, " (", arch->NumParams(),
        " parameters)"));
  }
  PolicyParams params{*arch, Vector(d)};
  for (int i = 0; i < d; ++i) {
    if (!(in >> params.theta[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("checkpoint truncated after ", i, " of ", d, " values"));
    }
  }
  return params;
}

}  // namespace dppg
