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

// Dense complex linear algebra on 1-3 qubit Hilbert spaces.
//
// Every operator in the library is a square complex matrix of dimension
// 2, 4 or 8. Storage is an Eigen matrix with a compile-time maximum of 8x8,
// so nothing here touches the heap. Values are immutable once built; all
// operations are free functions returning new values.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcg/errors.hpp"

namespace qcg {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::ColMajor, kMaxDim, kMaxDim>;
using Ket = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor,
                          kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                                 kMaxDim, 1>;

/// True for the dimensions the library supports: 2, 4 and 8.
constexpr bool is_supported_dim(long dim) {
  return dim == 2 || dim == 4 || dim == 8;
}

class Operator {
 public:
  /// Validates the shape only. Use `Operator::hermitian` when the caller
  /// promises Hermiticity and wants it checked.
  explicit Operator(Matrix m);

  static Operator identity(int dim);
  static Operator zero(int dim);
  /// Throws NotHermitianError if max|m - m^dagger| >= 1e-12.
  static Operator hermitian(Matrix m);
  /// |ket><ket|; the ket need not be normalized.
  static Operator outer(const Ket& ket);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  /// max_ij |H_ij - conj(H_ji)|.
  double hermiticity_residual() const;
  bool is_hermitian(double tol = 1e-12) const {
    return hermiticity_residual() < tol;
  }
  /// max_ij |A_ij - B_ij|.
  double max_abs_diff(const Operator& other) const;

  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(const Operator& rhs) const;
  Operator operator-() const { return Operator(-m_); }
  friend Operator operator*(Complex s, const Operator& op) {
    return Operator(s * op.m_);
  }
  friend Operator operator*(double s, const Operator& op) {
    return Operator(s * op.m_);
  }

  Ket apply(const Ket& ket) const;

 private:
  Matrix m_;
};

// Pauli matrices and the 2x2 identity, in the basis {|0>, |1>} with
// sigma_z|0> = |0>.
const Operator& sigma_x();
const Operator& sigma_y();
const Operator& sigma_z();
const Operator& identity2();

/// |0> or |1> of a single qubit.
Ket basis_ket(int dim, int index);

/// Kronecker product; the result dimension must not exceed 8.
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

/// a*b - b*a.
Operator commutator(const Operator& a, const Operator& b);

struct EigenSystem {
  RealVector values;  ///< ascending
  Matrix vectors;     ///< columns are the eigenvectors
};

/// Eigendecomposition of a Hermitian operator.
EigenSystem eigh(const Operator& h);

/// exp(-i*s*h) for Hermitian h, via the spectral decomposition.
Operator herm_exp(const Operator& h, double s);

/// Sum of |eigenvalues| of a Hermitian operator.
double trace_norm(const Operator& h);
/// Largest |eigenvalue| of a Hermitian operator.
double operator_norm(const Operator& h);
/// sqrt(tr(h^dagger h)).
double frobenius_norm(const Operator& h);

class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kPositivityTol = -1e-8;

  /// Validates unit trace, Hermiticity and positivity at the tolerances above.
  explicit DensityMatrix(Operator op);

  static DensityMatrix pure(const Ket& ket);
  static DensityMatrix maximally_mixed(int dim);

  const Operator& op() const { return op_; }
  int dim() const { return op_.dim(); }
  double purity() const;
  double min_eigenvalue() const;
  /// |tr(rho) - 1|
  double trace_drift() const;

 private:
  struct Unchecked {};
  DensityMatrix(Operator op, Unchecked) : op_(std::move(op)) {}
  friend DensityMatrix unchecked_density(Operator op);

  Operator op_;
};

/// Builds a DensityMatrix without validation; the caller vouches for it.
/// Used by integrators that check their own invariants once per step.
DensityMatrix unchecked_density(Operator op);

/// Reduced state of factor `keep` of a tensor product with factor
/// dimensions `dims` (most significant factor first).
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep,
                            std::span<const int> dims);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  double distance(const BlochVector& other) const;
};

BlochVector bloch_vector(const DensityMatrix& rho);
/// (1 + x sx + y sy + z sz)/2.
DensityMatrix from_bloch(const BlochVector& b);

/// |<a|b>|^2 between a pure state and a density matrix: <a|rho|a>.
double overlap(const Ket& a, const DensityMatrix& rho);

}  // namespace qcg
