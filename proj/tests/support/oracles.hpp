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

// Independent reference computations for the tests. Nothing here calls the
// library's exponential, eigensolver or integrators.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace qcg::oracle {

using C = std::complex<double>;
using Dense = Eigen::MatrixXcd;

/// exp(a) by Taylor series with scaling and squaring.
inline Dense expm(const Dense& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Dense scaled = a / std::ldexp(1.0, squarings);
  Dense term = Dense::Identity(a.rows(), a.cols());
  Dense sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// exp(-i s h).
inline Dense expm_h(const Dense& h, double s) { return expm(C(0, -s) * h); }

/// U(t1, t0) for dU/dt = -i H(t) U by classic RK4 on a fine grid.
inline Dense unitary_rk4(const std::function<Dense(double)>& h, double t0,
                         double t1, int steps) {
  const long n = h(t0).rows();
  Dense u = Dense::Identity(n, n);
  const double dt = (t1 - t0) / steps;
  const C mi(0, -1);
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Dense h0 = h(t);
    const Dense hm = h(t + dt / 2);
    const Dense h1 = h(t + dt);
    const Dense k1 = mi * h0 * u;
    const Dense k2 = mi * hm * (u + dt / 2 * k1);
    const Dense k3 = mi * hm * (u + dt / 2 * k2);
    const Dense k4 = mi * h1 * (u + dt * k3);
    u += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

inline Dense pauli(char which) {
  Dense m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Dense random_hermitian(int dim, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Dense a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = C(g(rng), g(rng));
  }
  return (a + a.adjoint()) / 2.0;
}

/// Haar-ish random unitary from the QR of a complex Gaussian matrix.
inline Dense random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Dense a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = C(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Dense> qr(a);
  return qr.householderQ() * Dense::Identity(dim, dim);
}

/// max |a - e^{i chi} b| minimized over the global phase chi.
inline double phase_insensitive_diff(const Dense& a, const Dense& b) {
  const C inner = (b.adjoint() * a).trace();
  const C phase = std::abs(inner) > 0 ? inner / std::abs(inner) : C(1, 0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qcg::oracle
