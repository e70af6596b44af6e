// Copyright 2026 The QCG Authors
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

#include "qcg/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"

namespace qcg {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

Operator op(const oracle::Dense& m) { return Operator(Matrix(m)); }

Ket plus_ket() { return (basis_ket(2, 0) + basis_ket(2, 1)) / sqrt2; }

TEST(OperatorTest, RejectsUnsupportedDimensions) {
  EXPECT_THROW(Operator(Matrix::Identity(3, 3)), DimensionError);
  EXPECT_THROW(Operator(Matrix::Identity(2, 4)), DimensionError);
  EXPECT_THROW(Operator::identity(1), DimensionError);
  EXPECT_NO_THROW(Operator::identity(8));
}

TEST(OperatorTest, HermitianFactoryChecksResidual) {
  Matrix m = sigma_x().matrix();
  EXPECT_NO_THROW(Operator::hermitian(m));
  m(0, 1) += 1e-6;
  EXPECT_THROW(Operator::hermitian(m), NotHermitianError);
}

TEST(OperatorTest, MixedDimensionArithmeticThrows) {
  EXPECT_THROW(sigma_x() + Operator::identity(4), DimensionError);
  EXPECT_THROW(sigma_x() * Operator::identity(4), DimensionError);
}

TEST(TensorTest, IdentityTimesSigmaZOnBasis01) {
  const Operator zz = tensor(identity2(), sigma_z());
  const Ket k01 = basis_ket(4, 1);
  EXPECT_LT((zz.apply(k01) + k01).norm(), 1e-15);
}

TEST(TensorTest, SumOfLocalZHasExpectedDiagonal) {
  const Operator s = tensor(sigma_z(), identity2()) + tensor(identity2(), sigma_z());
  const double expected[] = {2, 0, 0, -2};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(s(i, i), Complex(expected[i], 0));
  }
  EXPECT_LT((s.matrix() - s.matrix().diagonal().asDiagonal().toDenseMatrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(TensorTest, ProductOfExcitedProjectors) {
  const Operator p1 = Operator::outer(basis_ket(2, 1));
  const Operator p = tensor(p1, p1);
  Matrix expected = Matrix::Zero(4, 4);
  expected(3, 3) = 1.0;
  EXPECT_EQ(p.matrix(), expected);
}

TEST(TensorTest, MatchesKroneckerOracle) {
  std::mt19937 rng(7);
  const auto a = oracle::random_hermitian(2, rng);
  const auto b = oracle::random_hermitian(4, rng);
  EXPECT_LT(tensor(op(a), op(b)).max_abs_diff(op(oracle::kron(a, b))), 1e-15);
}

TEST(TensorTest, RefusesDimensionAboveEight) {
  EXPECT_THROW(tensor(Operator::identity(4), Operator::identity(4)),
               DimensionError);
}

TEST(CommutatorTest, PauliAlgebra) {
  const Complex two_i(0, 2);
  EXPECT_LT(commutator(sigma_z(), sigma_x()).max_abs_diff(two_i * sigma_y()),
            1e-15);
  EXPECT_LT(commutator(sigma_x(), sigma_y()).max_abs_diff(two_i * sigma_z()),
            1e-15);
  const Operator h = sigma_x() + 0.3 * sigma_z();
  EXPECT_LT(commutator(h, h).max_abs_diff(Operator::zero(2)), 1e-15);
}

TEST(HermExpTest, DiagonalExponential) {
  const Operator u = herm_exp(sigma_z(), pi / 2);
  EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -pi / 2)), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, pi / 2)), 1e-15);
  EXPECT_LT(std::abs(u(0, 1)), 1e-15);
}

TEST(HermExpTest, ZeroTimeIsIdentity) {
  std::mt19937 rng(3);
  const Operator h = op(oracle::random_hermitian(4, rng));
  EXPECT_LT(herm_exp(h, 0.0).max_abs_diff(Operator::identity(4)), 1e-15);
}

TEST(HermExpTest, PauliPeriod) {
  EXPECT_LT(herm_exp(sigma_x(), pi).max_abs_diff(-identity2()), 1e-12);
}

TEST(HermExpTest, AgreesWithTaylorOracleAndIsUnitary) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> s_dist(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 << (trial % 3);
    const auto h = oracle::random_hermitian(dim, rng);
    const double s = s_dist(rng);
    const Operator u = herm_exp(op(h), s);
    EXPECT_LT(u.max_abs_diff(op(oracle::expm_h(h, s))), 1e-10);
    EXPECT_LT((u.adjoint() * u).max_abs_diff(Operator::identity(dim)), 1e-12);
  }
}

TEST(EighTest, RejectsNonHermitian) {
  Matrix m = sigma_x().matrix();
  m(0, 1) = 2.0;
  EXPECT_THROW(eigh(Operator(m)), NotHermitianError);
}

TEST(NormTest, TraceNormExamples) {
  EXPECT_NEAR(trace_norm(sigma_x() + sigma_z()), 2 * sqrt2, 1e-14);
  EXPECT_NEAR(trace_norm(identity2()), 2.0, 1e-14);
}

TEST(NormTest, OtherNormsOnPaulis) {
  const Operator h = sigma_x() + sigma_z();
  EXPECT_NEAR(operator_norm(h), sqrt2, 1e-14);
  EXPECT_NEAR(frobenius_norm(h), 2.0, 1e-14);
}

TEST(NormTest, TraceNormUnitarilyInvariant) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 << (trial % 3);
    const auto h = oracle::random_hermitian(dim, rng, 3.0);
    const auto u = oracle::random_unitary(dim, rng);
    const Operator rotated = op(u * h * u.adjoint());
    EXPECT_NEAR(trace_norm(rotated), trace_norm(op(h)), 1e-10);
  }
}

TEST(DensityMatrixTest, ValidatesTraceHermiticityPositivity) {
  EXPECT_THROW(DensityMatrix{identity2()}, std::invalid_argument);
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix(Operator(neg)), std::invalid_argument);
  Matrix skew(2, 2);
  skew << 0.5, 0.1, -0.1, 0.5;
  EXPECT_THROW(DensityMatrix(Operator(skew)), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(8));
}

TEST(DensityMatrixTest, PurityOfPureAndMixed) {
  EXPECT_NEAR(DensityMatrix::pure(plus_ket()).purity(), 1.0, 1e-15);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(PartialTraceTest, BellStateReducesToMaximallyMixed) {
  const Ket bell = (basis_ket(4, 0) + basis_ket(4, 3)) / sqrt2;
  const int dims[] = {2, 2};
  const DensityMatrix r = partial_trace(DensityMatrix::pure(bell), 0, dims);
  EXPECT_LT(r.op().max_abs_diff(0.5 * identity2()), 1e-15);
}

TEST(PartialTraceTest, ProductStateRoundTrips) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = oracle::random_unitary(2, rng);
    const auto v = oracle::random_unitary(4, rng);
    const Ket a = Ket(u.col(0));
    const Ket b = Ket(v.col(0));
    const DensityMatrix ra = DensityMatrix::pure(a);
    const DensityMatrix rb = DensityMatrix::pure(b);
    const DensityMatrix full(tensor(ra.op(), rb.op()));
    const int dims[] = {2, 4};
    EXPECT_LT(partial_trace(full, 0, dims).op().max_abs_diff(ra.op()), 1e-14);
    EXPECT_LT(partial_trace(full, 1, dims).op().max_abs_diff(rb.op()), 1e-14);
  }
}

TEST(PartialTraceTest, ThreeFactorsPreserveTraceAndHermiticity) {
  std::mt19937 rng(13);
  const auto u = oracle::random_unitary(8, rng);
  Matrix mixed = Matrix::Zero(8, 8);
  for (int k = 0; k < 3; ++k) {
    const Ket col = Ket(u.col(k));
    mixed += (1.0 / 3.0) * col * col.adjoint();
  }
  const DensityMatrix rho{Operator(mixed)};
  const int dims[] = {2, 2, 2};
  for (std::size_t keep = 0; keep < 3; ++keep) {
    const DensityMatrix r = partial_trace(rho, keep, dims);
    EXPECT_NEAR(r.op().trace().real(), 1.0, 1e-12);
    EXPECT_LT(r.op().hermiticity_residual(), 1e-15);
  }
  // Middle factor by brute force over basis indices.
  Matrix mid = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          mid(i, j) += mixed(4 * a + 2 * i + c, 4 * a + 2 * j + c);
        }
      }
    }
  }
  EXPECT_LT(partial_trace(rho, 1, dims).op().max_abs_diff(Operator(mid)), 1e-15);
}

TEST(PartialTraceTest, RejectsBadLayouts) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(4);
  const int wrong[] = {2, 4};
  EXPECT_THROW(partial_trace(rho, 0, wrong), DimensionError);
  const int ok[] = {2, 2};
  EXPECT_THROW(partial_trace(rho, 2, ok), DimensionError);
}

TEST(BlochTest, Examples) {
  const BlochVector plus = bloch_vector(DensityMatrix::pure(plus_ket()));
  EXPECT_NEAR(plus.x, 1.0, 1e-15);
  EXPECT_NEAR(plus.y, 0.0, 1e-15);
  EXPECT_NEAR(plus.z, 0.0, 1e-15);
  const BlochVector mixed = bloch_vector(DensityMatrix::maximally_mixed(2));
  EXPECT_NEAR(mixed.norm(), 0.0, 1e-15);
  const BlochVector zero = bloch_vector(DensityMatrix::pure(basis_ket(2, 0)));
  EXPECT_NEAR(zero.z, 1.0, 1e-15);
}

TEST(BlochTest, ReconstructsRandomStates) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    BlochVector b{d(rng), d(rng), d(rng)};
    if (b.norm() > 1.0) continue;
    const DensityMatrix rho = from_bloch(b);
    const Matrix expected =
        0.5 * (identity2().matrix() + b.x * sigma_x().matrix() +
               b.y * sigma_y().matrix() + b.z * sigma_z().matrix());
    EXPECT_LT(rho.op().max_abs_diff(Operator(expected)), 1e-12);
    EXPECT_LT(bloch_vector(rho).distance(b), 1e-12);
  }
}

TEST(BlochTest, OnlyForSingleQubits) {
  EXPECT_THROW(bloch_vector(DensityMatrix::maximally_mixed(4)), DimensionError);
}

}  // namespace
}  // namespace qcg
