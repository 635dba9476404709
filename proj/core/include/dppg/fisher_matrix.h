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

#ifndef DPPG_FISHER_MATRIX_H_
#define DPPG_FISHER_MATRIX_H_

#include <iosfwd>

#include "absl/status/statusor.h"
#include "dppg/types.h"

namespace dppg {

struct SymmetricEigen {
  Vector values;   // nonincreasing
  Matrix vectors;  // column i is the eigenvector of values[i]
};

// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Sweeps until the
// off-diagonal Frobenius norm falls below `tolerance` times the input norm.
absl::StatusOr<SymmetricEigen> JacobiEigen(const Matrix& symmetric,
                                           double tolerance = 1e-15,
                                           int max_sweeps = 100);

// A symmetric positive semi-definite matrix together with its spectral
// decomposition F = V diag(sigma) V^T, eigenvalues sorted nonincreasing.
// Holding one of these means the PSD check already passed.
class FisherMatrix {
 public:
  // Tolerance applied to symmetry and to negative eigenvalues, relative to
  // max(1, largest |entry|).
  static constexpr double kTolerance = 1e-10;

  static absl::StatusOr<FisherMatrix> Create(const Matrix& matrix);
  static FisherMatrix Identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  double trace() const { return matrix_.trace(); }
  double max_eigenvalue() const { return eigenvalues_[0]; }
  double min_eigenvalue() const { return eigenvalues_[dim() - 1]; }

  // v^T F v.
  double QuadraticForm(const Vector& v) const;
  // ||F^{1/2} v||_2.
  double MahalanobisNorm(const Vector& v) const;
  // V diag(sigma^{-1/2}); maps N(0, I) draws to N(0, F^{-1}). Fails when F is
  // singular to within kTolerance.
  absl::StatusOr<Matrix> InverseSqrtFactor() const;

 private:
  FisherMatrix(Matrix matrix, Vector eigenvalues, Matrix eigenvectors)
      : matrix_(std::move(matrix)),
        eigenvalues_(std::move(eigenvalues)),
        eigenvectors_(std::move(eigenvectors)) {}

  Matrix matrix_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

// Plain-text format: a header line `d=<int>` followed by d rows of d
// whitespace-separated floats (row-major).
absl::StatusOr<FisherMatrix> ReadFisherMatrix(std::istream& in);
void WriteFisherMatrix(std::ostream& out, const FisherMatrix& fisher);

}  // namespace dppg

#endif  // DPPG_FISHER_MATRIX_H_
