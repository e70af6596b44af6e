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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcg {
namespace {

void require_dim(long dim, const char* what) {
  if (!is_supported_dim(dim)) {
    std::ostringstream msg;
    msg << what << ": dimension " << dim << " is not one of 2, 4, 8";
    throw DimensionError(msg.str());
  }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw DimensionError(msg.str());
  }
}

void require_hermitian(const Operator& h, double tol, const char* what) {
  const double r = h.hermiticity_residual();
  if (!(r < tol)) {
    std::ostringstream msg;
    msg << what << ": operator is not Hermitian (residual " << r << ")";
    throw NotHermitianError(msg.str());
  }
}

Operator make_pauli(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return Operator(m);
}

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("Operator: matrix is not square");
  }
  require_dim(m_.rows(), "Operator");
}

Operator Operator::identity(int dim) {
  require_dim(dim, "Operator::identity");
  return Operator(Matrix::Identity(dim, dim));
}

Operator Operator::zero(int dim) {
  require_dim(dim, "Operator::zero");
  return Operator(Matrix::Zero(dim, dim));
}

Operator Operator::hermitian(Matrix m) {
  Operator op(std::move(m));
  require_hermitian(op, 1e-12, "Operator::hermitian");
  return op;
}

Operator Operator::outer(const Ket& ket) {
  return Operator(ket * ket.adjoint());
}

double Operator::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::max_abs_diff(const Operator& other) const {
  require_same_dim(*this, other, "max_abs_diff");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Operator Operator::operator+(const Operator& rhs) const {
  require_same_dim(*this, rhs, "operator+");
  return Operator(m_ + rhs.m_);
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same_dim(*this, rhs, "operator-");
  return Operator(m_ - rhs.m_);
}

Operator Operator::operator*(const Operator& rhs) const {
  require_same_dim(*this, rhs, "operator*");
  return Operator(m_ * rhs.m_);
}

Ket Operator::apply(const Ket& ket) const {
  if (ket.size() != dim()) {
    throw DimensionError("Operator::apply: ket dimension mismatch");
  }
  return m_ * ket;
}

const Operator& sigma_x() {
  static const Operator op = make_pauli(0.0, 1.0, 1.0, 0.0);
  return op;
}

const Operator& sigma_y() {
  static const Operator op =
      make_pauli(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0);
  return op;
}

const Operator& sigma_z() {
  static const Operator op = make_pauli(1.0, 0.0, 0.0, -1.0);
  return op;
}

const Operator& identity2() {
  static const Operator op = Operator::identity(2);
  return op;
}

Ket basis_ket(int dim, int index) {
  if (dim < 1 || dim > kMaxDim || index < 0 || index >= dim) {
    throw DimensionError("basis_ket: index out of range");
  }
  Ket k = Ket::Zero(dim);
  k(index) = 1.0;
  return k;
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim();
  const int db = b.dim();
  if (da * db > kMaxDim) {
    std::ostringstream msg;
    msg << "tensor: product dimension " << da * db << " exceeds " << kMaxDim;
    throw DimensionError(msg.str());
  }
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return Operator(out);
}

Ket tensor(const Ket& a, const Ket& b) {
  const long da = a.size();
  const long db = b.size();
  if (da * db > kMaxDim) {
    throw DimensionError("tensor: ket product dimension exceeds 8");
  }
  Ket out(da * db);
  for (long i = 0; i < da; ++i) {
    out.segment(i * db, db) = a(i) * b;
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

EigenSystem eigh(const Operator& h) {
  require_hermitian(h, 1e-9, "eigh");
  // Symmetrize so round-off in the input cannot bias the solver.
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

Operator herm_exp(const Operator& h, double s) {
  const EigenSystem es = eigh(h);
  const long n = es.values.size();
  Ket phases(n);
  for (long k = 0; k < n; ++k) {
    phases(k) = std::polar(1.0, -s * es.values(k));
  }
  return Operator(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

double trace_norm(const Operator& h) {
  return eigh(h).values.cwiseAbs().sum();
}

double operator_norm(const Operator& h) {
  return eigh(h).values.cwiseAbs().maxCoeff();
}

double frobenius_norm(const Operator& h) { return h.matrix().norm(); }

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  const double drift = trace_drift();
  if (!(drift < kTraceTol)) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace deviates from 1 by " << drift;
    throw std::invalid_argument(msg.str());
  }
  require_hermitian(op_, kHermitianTol, "DensityMatrix");
  const double lo = min_eigenvalue();
  if (lo < kPositivityTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << lo;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const Ket& ket) {
  const double n2 = ket.squaredNorm();
  if (!(n2 > 0.0)) {
    throw std::invalid_argument("DensityMatrix::pure: zero ket");
  }
  return DensityMatrix(Operator::outer(ket / std::sqrt(n2)));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix((1.0 / dim) * Operator::identity(dim));
}

double DensityMatrix::purity() const {
  return (op_.matrix() * op_.matrix()).trace().real();
}

double DensityMatrix::min_eigenvalue() const {
  return eigh(op_).values(0);
}

double DensityMatrix::trace_drift() const {
  return std::abs(op_.trace() - Complex(1.0, 0.0));
}

DensityMatrix unchecked_density(Operator op) {
  return DensityMatrix(std::move(op), DensityMatrix::Unchecked{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep,
                            std::span<const int> dims) {
  if (dims.empty() || keep >= dims.size()) {
    throw DimensionError("partial_trace: keep index out of range");
  }
  for (int d : dims) {
    if (d < 2) throw DimensionError("partial_trace: factor dimension < 2");
  }
  const int total =
      std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  if (total != rho.dim()) {
    std::ostringstream msg;
    msg << "partial_trace: factor dimensions multiply to " << total
        << " but state has dimension " << rho.dim();
    throw DimensionError(msg.str());
  }
  const int dk = dims[keep];
  // Stride of the kept factor in the flattened index.
  int stride = 1;
  for (std::size_t f = keep + 1; f < dims.size(); ++f) stride *= dims[f];
  const int rest = total / dk;

  // Map the "rest" multi-index r (kept digit removed) and kept digit a to the
  // full flattened index.
  auto full_index = [&](int a, int r) {
    const int low = r % stride;
    const int high = r / stride;
    return (high * dk + a) * stride + low;
  };

  if (!is_supported_dim(dk)) {
    throw DimensionError("partial_trace: kept factor must be a qubit register");
  }
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.op().matrix();
  for (int a = 0; a < dk; ++a) {
    for (int b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (int r = 0; r < rest; ++r) acc += m(full_index(a, r), full_index(b, r));
      out(a, b) = acc;
    }
  }
  return DensityMatrix(Operator(out));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double BlochVector::distance(const BlochVector& o) const {
  return std::sqrt((x - o.x) * (x - o.x) + (y - o.y) * (y - o.y) +
                   (z - o.z) * (z - o.z));
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("bloch_vector: state is not a single qubit");
  }
  const Matrix& m = rho.op().matrix();
  const Complex x = (m * sigma_x().matrix()).trace();
  const Complex y = (m * sigma_y().matrix()).trace();
  const Complex z = (m * sigma_z().matrix()).trace();
  return BlochVector{x.real(), y.real(), z.real()};
}

DensityMatrix from_bloch(const BlochVector& b) {
  return DensityMatrix(0.5 * (identity2() + b.x * sigma_x() +
                              b.y * sigma_y() + b.z * sigma_z()));
}

double overlap(const Ket& a, const DensityMatrix& rho) {
  return (a.adjoint() * rho.op().matrix() * a)(0, 0).real();
}

}  // namespace qcg
