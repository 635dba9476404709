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

#include "dppg/fisher_matrix.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"

namespace dppg {

namespace {

double OffDiagonalNorm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing a(p, q); accumulates the rotation into v.
void Rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

absl::StatusOr<SymmetricEigen> JacobiEigen(const Matrix& symmetric,
                                           double tolerance, int max_sweeps) {
  if (symmetric.rows() != symmetric.cols() || symmetric.rows() == 0) {
    return absl::InvalidArgumentError("JacobiEigen needs a non-empty square matrix");
  }
  const Eigen::Index n = symmetric.rows();
  Matrix a = 0.5 * (symmetric + symmetric.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (OffDiagonalNorm(a) <= tolerance * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        // Skip entries already negligible next to both diagonal entries.
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        if (apq < 1e-3 * std::numeric_limits<double>::epsilon() *
                      std::min(std::abs(a(p, p)), std::abs(a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        Rotate(a, v, p, q);
      }
    }
  }
  if (!converged && OffDiagonalNorm(a) > tolerance * scale) {
    return absl::InternalError(
        absl::StrCat("Jacobi iteration did not converge in ", max_sweeps,
                     " sweeps"));
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i) > a(j, j);
  });
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

absl::StatusOr<FisherMatrix> FisherMatrix::Create(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Fisher matrix must be square and non-empty, got ",
                     matrix.rows(), "x", matrix.cols()));
  }
  if (!matrix.allFinite()) {
    return absl::InvalidArgumentError("Fisher matrix has non-finite entries");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > kTolerance * scale) {
    return absl::InvalidArgumentError(
        absl::StrCat("Fisher matrix is not symmetric (max asymmetry ", asym, ")"));
  }
  absl::StatusOr<SymmetricEigen> eig = JacobiEigen(matrix);
  if (!eig.ok()) return eig.status();
  const double smallest = eig->values[eig->values.size() - 1];
  if (smallest < -kTolerance * scale) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Fisher matrix is not positive semi-definite (eigenvalue ", smallest, ")"));
  }
  Vector values = eig->values.cwiseMax(0.0);
  Matrix sym = 0.5 * (matrix + matrix.transpose());
  return FisherMatrix(std::move(sym), std::move(values), std::move(eig->vectors));
}

FisherMatrix FisherMatrix::Identity(int dim) {
  return FisherMatrix(Matrix::Identity(dim, dim), Vector::Ones(dim),
                      Matrix::Identity(dim, dim));
}

double FisherMatrix::QuadraticForm(const Vector& v) const {
  return v.dot(matrix_ * v);
}

double FisherMatrix::MahalanobisNorm(const Vector& v) const {
  return std::sqrt(std::max(0.0, QuadraticForm(v)));
}

absl::StatusOr<Matrix> FisherMatrix::InverseSqrtFactor() const {
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (!(min_eigenvalue() > kTolerance * scale)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Fisher matrix is singular (smallest eigenvalue ", min_eigenvalue(),
        "); regularize it before inverting"));
  }
  return eigenvectors_ * eigenvalues_.cwiseSqrt().cwiseInverse().asDiagonal();
}

absl::StatusOr<FisherMatrix> ReadFisherMatrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    return absl::InvalidArgumentError("Fisher file is empty");
  }
  absl::string_view rest = absl::StripAsciiWhitespace(header);
  int d = 0;
  if (!absl::ConsumePrefix(&rest, "d=") || !absl::SimpleAtoi(rest, &d) || d < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad Fisher header '", header, "', expected d=<int>"));
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(in >> m(i, j))) {
        return absl::InvalidArgumentError(
            absl::StrCat("Fisher file truncated at entry (", i, ",", j, ")"));
      }
    }
  }
  return FisherMatrix::Create(m);
}

void WriteFisherMatrix(std::ostream& out, const FisherMatrix& fisher) {
  const Matrix& m = fisher.matrix();
  out << "d=" << m.rows() << "\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << (j ? " " : "") << m(i, j);
    }
    out << "\n";
  }
}

}  // namespace dppg
