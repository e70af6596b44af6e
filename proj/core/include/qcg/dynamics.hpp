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

// Closed and open (dephasing) time evolution of protocol states.
//
// Closed evolution multiplies per-step unitaries; open evolution integrates
//
//   d rho/dt = -i[H, rho] + gamma sum_s (Z_s rho Z_s - rho)
//
// with classic RK4, re-Hermitizing and renormalizing after every step.
// Z_s is sigma_z on site s. Only the driven sites dephase.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qcg/hamiltonians.hpp"
#include "qcg/linalg.hpp"

namespace qcg {

inline constexpr int kOutputSamples = 201;

struct NoiseSpec {
  explicit NoiseSpec(double gamma = 0.0,
                     std::optional<std::vector<std::size_t>> sites = {});

  double gamma;
  /// Dephased sites; empty means "the protocol's driven sites".
  std::optional<std::vector<std::size_t>> sites;
};

enum class Integrator {
  kAuto,      ///< Magnus4 without noise, RK4 with noise
  kMagnus4,   ///< two-point Gauss Magnus exponential, 4th order
  kMidpoint,  ///< exp(-i h H(t + h/2)), 2nd order
  kRungeKutta4,
};

struct EvolutionSpec {
  /// Uses the protocol's default step density and no noise.
  EvolutionSpec(GateProtocol protocol, double t_end);

  GateProtocol protocol;
  double t_end;
  int steps_per_unit;  ///< steps per intended duration tau
  std::optional<NoiseSpec> noise;
  Integrator integrator = Integrator::kAuto;

  /// Total number of steps, a multiple of kOutputSamples - 1. Throws
  /// IntegrationError if the density is below the admissible minimum.
  int total_steps() const;
};

/// Minimum steps per tau: 1000, and 20 per Floquet cycle for FE.
int minimum_step_density(const GateProtocol& protocol);
/// Default steps per tau: max(1000, 64 * ratio).
int default_step_density(const GateProtocol& protocol);

struct IntegrationStats {
  double max_trace_drift = 0.0;  ///< before renormalization, over all steps
  double min_eigenvalue = 1.0;   ///< over all output samples
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  IntegrationStats stats;
};

/// Evolves `rho0` and samples kOutputSamples uniform times in [0, t_end].
Trajectory propagate(const EvolutionSpec& spec, const DensityMatrix& rho0);

/// Same as propagate for several initial states sharing one step grid.
std::vector<Trajectory> propagate_batch(const EvolutionSpec& spec,
                                        std::span<const DensityMatrix> rho0s);

/// U(t_end, 0). Rejects specs with noise.
Operator propagate_unitary_operator(const EvolutionSpec& spec);

/// Per-qubit Bloch series: result[q][k] is qubit q at sample k.
std::vector<std::vector<BlochVector>> reduce_trajectory(
    const Trajectory& traj, std::span<const int> layout);

// --- kernels -----------------------------------------------------------------

using HamiltonianFn = std::function<Operator(double)>;

/// sigma_z on `site` of a register of qubits `dims`.
Operator embed_sigma_z(std::span<const int> dims, std::size_t site);

/// Right-hand side of the dephasing master equation.
Matrix lindblad_rhs(const Matrix& h, const Matrix& rho, double gamma,
                    std::span<const Operator> dephasing_ops);

/// One closed step from t to t + dt.
Operator unitary_step(const HamiltonianFn& h, double t, double dt,
                      Integrator scheme);

/// Integrates [t0, t1] in `steps` equal steps with the given scheme and
/// returns the final state. No density checks; used for convergence studies
/// and by propagate itself.
Matrix evolve_density(const HamiltonianFn& h, const Matrix& rho0, double t0,
                      double t1, int steps, Integrator scheme, double gamma,
                      std::span<const Operator> dephasing_ops,
                      IntegrationStats* stats = nullptr);

}  // namespace qcg
