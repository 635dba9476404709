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

#include <Eigen/Eigenvalues>
#include <sstream>

#include "test_util.h"

namespace dppg {
namespace {

TEST(JacobiEigenTest, MatchesEigenSelfAdjointSolver) {
  Rng rng(2);
  for (int n : {1, 2, 5, 12, 40}) {
    Matrix a(n, n);
    for (int j = 0; j < n; ++j) a.col(j) = StandardNormalVector(n, rng);
    const Matrix sym = (a + a.transpose()) / 2.0;
    DPPG_ASSERT_OK_AND_ASSIGN(eig, JacobiEigen(sym));
    const Eigen::SelfAdjointEigenSolver<Matrix> ref(sym);
    // Eigen sorts ascending; ours is nonincreasing.
    EXPECT_LT((eig.values - ref.eigenvalues().reverse()).norm(), 1e-11 * sym.norm()) << n;
    const Matrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    EXPECT_LT((rebuilt - sym).norm(), 1e-11 * sym.norm());
    EXPECT_LT((eig.vectors.transpose() * eig.vectors - Matrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(JacobiEigenTest, RejectsNonSquareInput) {
  EXPECT_FALSE(JacobiEigen(Matrix::Zero(2, 3)).ok());
}

TEST(FisherMatrixTest, CreateRejectsAsymmetricAndIndefinite) {
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  EXPECT_FALSE(FisherMatrix::Create(asym).ok());
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -0.1;
  EXPECT_FALSE(FisherMatrix::Create(indefinite).ok());
  EXPECT_TRUE(FisherMatrix::Create(Matrix::Zero(3, 3)).ok());
}

TEST(FisherMatrixTest, FormsAgreeWithDenseAlgebra) {
  Rng rng(4);
  const Matrix m = testing::RandomPsd(6, rng);
  DPPG_ASSERT_OK_AND_ASSIGN(f, FisherMatrix::Create(m));
  const Vector v = testing::RandomVector(6, 1.0, rng);
  EXPECT_NEAR(f.QuadraticForm(v), v.dot(m * v), 1e-12);
  EXPECT_NEAR(f.MahalanobisNorm(v), std::sqrt(v.dot(m * v)), 1e-12);
  EXPECT_NEAR(f.trace(), m.trace(), 1e-12);
  EXPECT_GE(f.max_eigenvalue(), f.min_eigenvalue());
}

TEST(FisherMatrixTest, InverseSqrtFactorWhitens) {
  Rng rng(6);
  DPPG_ASSERT_OK_AND_ASSIGN(f, FisherMatrix::Create(testing::RandomPsd(5, rng) +
                                                    0.1 * Matrix::Identity(5, 5)));
  DPPG_ASSERT_OK_AND_ASSIGN(l, f.InverseSqrtFactor());
  EXPECT_LT((l.transpose() * f.matrix() * l - Matrix::Identity(5, 5)).norm(), 1e-10);
  EXPECT_LT((l * l.transpose() - f.matrix().inverse()).norm(), 1e-9);

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  EXPECT_FALSE(FisherMatrix::Create(singular)->InverseSqrtFactor().ok());
}

TEST(FisherMatrixTest, TextRoundTripIsExact) {
  Rng rng(8);
  DPPG_ASSERT_OK_AND_ASSIGN(f, FisherMatrix::Create(testing::RandomPsd(4, rng)));
  std::stringstream io;
  WriteFisherMatrix(io, f);
  DPPG_ASSERT_OK_AND_ASSIGN(back, ReadFisherMatrix(io));
  EXPECT_EQ(back.matrix(), f.matrix());
}

TEST(FisherMatrixTest, ReadRejectsMalformedText) {
  std::stringstream missing("d=2\n1 0\n0\n");
  EXPECT_FALSE(ReadFisherMatrix(missing).ok());
  std::stringstream header("dim 2\n1 0\n0 1\n");
  EXPECT_FALSE(ReadFisherMatrix(header).ok());
  std::stringstream ok("d=2\n1 0\n0 1\n");
  EXPECT_TRUE(ReadFisherMatrix(ok).ok());
}

TEST(FisherMatrixTest, IdentityHasUnitSpectrum) {
  const FisherMatrix id = FisherMatrix::Identity(3);
  EXPECT_EQ(id.eigenvalues(), Vector::Ones(3));
  EXPECT_EQ(id.matrix(), Matrix::Identity(3, 3));
}

}  // namespace
}  // namespace dppg
