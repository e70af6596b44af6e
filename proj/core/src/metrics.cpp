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

#include "qcg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcg {
namespace {

constexpr int kMinQuadraturePoints = 2001;
constexpr int kQuadraturePerFloquetCycle = 40;

std::array<DensityMatrix, 3> single_probes() {
  Matrix r1(2, 2);
  r1 << 2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0;
  Matrix r2 = Matrix::Constant(2, 2, 0.5);
  return {DensityMatrix(Operator(r1)), DensityMatrix(Operator(r2)),
          DensityMatrix::maximally_mixed(2)};
}

constexpr std::array<double, 3> kEqualWeights = {1.0 / 3.0, 1.0 / 3.0,
                                                 1.0 / 3.0};

}  // namespace

ProbeSet ProbeSet::single_qubit() { return ProbeSet{single_probes(), kEqualWeights}; }

ProbeSet ProbeSet::two_qubit() {
  const auto p = single_probes();
  return ProbeSet{{DensityMatrix(tensor(p[0].op(), p[0].op())),
                   DensityMatrix(tensor(p[1].op(), p[1].op())),
                   DensityMatrix(tensor(p[2].op(), p[2].op()))},
                  kEqualWeights};
}

ProbeSet ProbeSet::for_register(int register_dim) {
  if (register_dim == 2) return single_qubit();
  if (register_dim == 4) return two_qubit();
  throw DimensionError("ProbeSet: register must hold one or two qubits");
}

double gate_infidelity(const Operator& target,
                       std::span<const DensityMatrix> evolved,
                       const ProbeSet& probes) {
  const double wsum = probes.weights[0] + probes.weights[1] + probes.weights[2];
  if (std::abs(wsum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "gate_infidelity: probe weights sum to " << wsum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  if (evolved.size() != 3) {
    throw std::invalid_argument("gate_infidelity: need three evolved states");
  }
  double fidelity = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Matrix& p = probes.states[i].op().matrix();
    if (evolved[i].dim() != target.dim() || p.rows() != target.dim()) {
      throw DimensionError("gate_infidelity: state and target dimensions differ");
    }
    const Matrix ideal = target.matrix() * p * target.matrix().adjoint();
    const double overlap = (ideal * evolved[i].op().matrix()).trace().real();
    fidelity += probes.weights[i] / probes.states[i].purity() * overlap;
  }
  return 1.0 - fidelity;
}

DensityMatrix embed_probe(const GateProtocol& protocol,
                          const DensityMatrix& probe) {
  if (probe.dim() != protocol.register_dim()) {
    throw DimensionError("embed_probe: probe does not fit the register");
  }
  if (!protocol.layout().auxiliary) return probe;
  const int aux_level = protocol.aux_start() == AuxStart::kExcited ? 1 : 0;
  return DensityMatrix(
      tensor(probe.op(), Operator::outer(basis_ket(2, aux_level))));
}

DensityMatrix register_state(const GateProtocol& protocol,
                             const DensityMatrix& full) {
  if (!protocol.layout().auxiliary) return full;
  // The ancilla is the last factor; fold the register into one factor.
  const int dims[] = {protocol.register_dim(), 2};
  return partial_trace(full, 0, dims);
}

InfidelitySeries dynamical_infidelity(const EvolutionSpec& spec,
                                      const ProbeSet& probes) {
  const GateProtocol& protocol = spec.protocol;
  std::vector<DensityMatrix> inits;
  for (const DensityMatrix& p : probes.states) {
    inits.push_back(embed_probe(protocol, p));
  }
  const std::vector<Trajectory> runs = propagate_batch(spec, inits);

  InfidelitySeries out;
  out.times = runs.front().times;
  out.infidelity.reserve(out.times.size());
  for (const Trajectory& r : runs) {
    out.stats.max_trace_drift =
        std::max(out.stats.max_trace_drift, r.stats.max_trace_drift);
    out.stats.min_eigenvalue =
        std::min(out.stats.min_eigenvalue, r.stats.min_eigenvalue);
  }
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    std::vector<DensityMatrix> reduced;
    reduced.reserve(3);
    for (const Trajectory& r : runs) {
      reduced.push_back(register_state(protocol, r.states[k]));
    }
    out.infidelity.push_back(
        gate_infidelity(protocol.target(), reduced, probes));
  }
  return out;
}

double final_infidelity(const EvolutionSpec& spec, const ProbeSet& probes) {
  return dynamical_infidelity(spec, probes).infidelity.back();
}

std::string_view to_string(NormKind n) {
  switch (n) {
    case NormKind::kTrace:
      return "trace";
    case NormKind::kOperator:
      return "operator";
    case NormKind::kFrobenius:
      return "frobenius";
  }
  return "?";
}

NormKind parse_norm_kind(std::string_view name) {
  for (auto n : {NormKind::kTrace, NormKind::kOperator, NormKind::kFrobenius}) {
    if (name == to_string(n)) return n;
  }
  throw ConfigError("unknown norm '" + std::string(name) +
                        "' (expected trace|operator|frobenius)",
                    "norm");
}

double norm_of(const Operator& h, NormKind kind) {
  switch (kind) {
    case NormKind::kTrace:
      return trace_norm(h);
    case NormKind::kOperator:
      return operator_norm(h);
    case NormKind::kFrobenius:
      return frobenius_norm(h);
  }
  return 0.0;
}

CostReport cost(const GateProtocol& protocol, NormKind norm) {
  const double tau = protocol.profile().tau();
  int points = kMinQuadraturePoints;
  if (protocol.floquet()) {
    points = std::max(points, static_cast<int>(std::ceil(
                                  kQuadraturePerFloquetCycle *
                                  protocol.floquet()->ratio)) + 1);
  }
  if (points % 2 == 0) ++points;  // Simpson needs an even interval count
  const int intervals = points - 1;
  const double h = tau / intervals;
  double acc = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * norm_of(protocol.hamiltonian(k * h), norm);
  }
  const double integral = acc * h / 3.0;
  return CostReport{integral / tau, tau, points};
}

}  // namespace qcg
