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

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "qcg/dynamics.hpp"
#include "qcg/hamiltonians.hpp"
#include "qcg/linalg.hpp"

namespace qcg {

/// Three probe states and their weights for the average gate infidelity.
struct ProbeSet {
  std::array<DensityMatrix, 3> states;
  std::array<double, 3> weights;

  /// diag(2/3, 1/3), all-1/2, 1/2 identity; equal weights.
  static ProbeSet single_qubit();
  /// Pairwise tensor products rho_i (x) rho_i of the single-qubit probes.
  static ProbeSet two_qubit();
  /// single_qubit() or two_qubit() by register dimension.
  static ProbeSet for_register(int register_dim);

  int dim() const { return states[0].dim(); }
};

/// J = 1 - sum_i w_i / tr[rho_i^2] * Re tr[U rho_i U^dag evolved_i].
/// Throws std::invalid_argument unless the weights sum to 1 within 1e-12.
double gate_infidelity(const Operator& target,
                       std::span<const DensityMatrix> evolved,
                       const ProbeSet& probes);

/// Initial composite state for probe `i` under `protocol`: the probe itself
/// for IE, the probe (x) |0><0| (or |1><1| for excited-start gates) for
/// auxiliary protocols.
DensityMatrix embed_probe(const GateProtocol& protocol,
                          const DensityMatrix& probe);

/// Register state of a full protocol state (ancilla traced out).
DensityMatrix register_state(const GateProtocol& protocol,
                             const DensityMatrix& full);

/// J(t) at every output sample, always against the final target.
struct InfidelitySeries {
  std::vector<double> times;
  std::vector<double> infidelity;
  IntegrationStats stats;  ///< worst case over the three probe runs
};

InfidelitySeries dynamical_infidelity(const EvolutionSpec& spec,
                                      const ProbeSet& probes);

/// Infidelity at t_end.
double final_infidelity(const EvolutionSpec& spec, const ProbeSet& probes);

enum class NormKind { kTrace, kOperator, kFrobenius };

std::string_view to_string(NormKind n);
/// "trace" | "operator" | "frobenius".
NormKind parse_norm_kind(std::string_view name);

double norm_of(const Operator& h, NormKind kind);

struct CostReport {
  double cost = 0.0;
  double tau = 0.0;
  int quadrature_points = 0;
};

/// (1/tau) * integral_0^tau ||H(t)|| dt by composite Simpson on at least
/// 2001 points, and at least 20 per Floquet cycle.
CostReport cost(const GateProtocol& protocol, NormKind norm = NormKind::kTrace);

}  // namespace qcg
