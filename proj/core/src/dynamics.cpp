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

#include "qcg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcg {
namespace {

constexpr int kMinStepsPerTau = 1000;
constexpr int kMinStepsPerFloquetCycle = 20;
constexpr int kDefaultStepsPerFloquetCycle = 64;
constexpr double kPositivityFailure = -1e-6;
constexpr double kRenormalizeDrift = 1e-9;

const Complex kI(0.0, 1.0);

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

std::vector<Operator> dephasing_operators(const EvolutionSpec& spec) {
  std::vector<Operator> ops;
  if (!spec.noise || spec.noise->gamma == 0.0) return ops;
  const auto& layout = spec.protocol.layout();
  const std::vector<std::size_t>& sites =
      spec.noise->sites && !spec.noise->sites->empty() ? *spec.noise->sites
                                                       : layout.driven;
  for (std::size_t s : sites) ops.push_back(embed_sigma_z(layout.dims, s));
  return ops;
}

Integrator resolve(Integrator scheme, double gamma) {
  if (scheme != Integrator::kAuto) return scheme;
  return gamma > 0.0 ? Integrator::kRungeKutta4 : Integrator::kMagnus4;
}

struct RkStage {
  Matrix h0, hm, h1;
};

Matrix rk4_step(const RkStage& hs, const Matrix& rho, double dt, double gamma,
                std::span<const Operator> ops) {
  const Matrix k1 = lindblad_rhs(hs.h0, rho, gamma, ops);
  const Matrix k2 = lindblad_rhs(hs.hm, rho + 0.5 * dt * k1, gamma, ops);
  const Matrix k3 = lindblad_rhs(hs.hm, rho + 0.5 * dt * k2, gamma, ops);
  const Matrix k4 = lindblad_rhs(hs.h1, rho + dt * k3, gamma, ops);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Hermitize, then renormalize when the trace has drifted.
Matrix clean_state(const Matrix& rho, IntegrationStats* stats) {
  Matrix out = hermitize(rho);
  const double tr = out.trace().real();
  const double drift = std::abs(tr - 1.0);
  if (stats) stats->max_trace_drift = std::max(stats->max_trace_drift, drift);
  if (drift > kRenormalizeDrift) out /= tr;
  return out;
}

void check_positivity(const Matrix& rho, double t, IntegrationStats& stats) {
  const double lo = eigh(Operator(rho)).values(0);
  stats.min_eigenvalue = std::min(stats.min_eigenvalue, lo);
  if (lo < kPositivityFailure) {
    std::ostringstream msg;
    msg << "integration failure: density matrix eigenvalue " << lo
        << " at t = " << t;
    throw IntegrationError(msg.str());
  }
}

}  // namespace

NoiseSpec::NoiseSpec(double g, std::optional<std::vector<std::size_t>> s)
    : gamma(g), sites(std::move(s)) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("NoiseSpec: gamma must be >= 0");
  }
}

int minimum_step_density(const GateProtocol& protocol) {
  int n = kMinStepsPerTau;
  if (protocol.floquet()) {
    n = std::max(n, static_cast<int>(std::ceil(kMinStepsPerFloquetCycle *
                                               protocol.floquet()->ratio)));
  }
  return n;
}

int default_step_density(const GateProtocol& protocol) {
  int n = kMinStepsPerTau;
  if (protocol.floquet()) {
    n = std::max(n, static_cast<int>(std::ceil(kDefaultStepsPerFloquetCycle *
                                               protocol.floquet()->ratio)));
  }
  return n;
}

EvolutionSpec::EvolutionSpec(GateProtocol p, double t)
    : protocol(std::move(p)),
      t_end(t),
      steps_per_unit(default_step_density(protocol)) {}

int EvolutionSpec::total_steps() const {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw IntegrationError("EvolutionSpec: t_end must be finite and >= 0");
  }
  if (steps_per_unit < minimum_step_density(protocol)) {
    std::ostringstream msg;
    msg << "EvolutionSpec: step density " << steps_per_unit
        << " per tau is below the minimum " << minimum_step_density(protocol);
    throw IntegrationError(msg.str());
  }
  const double raw = steps_per_unit * t_end / protocol.profile().tau();
  const int chunks = std::max(
      1, static_cast<int>(std::ceil(raw / (kOutputSamples - 1) - 1e-9)));
  return chunks * (kOutputSamples - 1);
}

Operator embed_sigma_z(std::span<const int> dims, std::size_t site) {
  if (site >= dims.size()) {
    throw DimensionError("embed_sigma_z: site out of range");
  }
  std::optional<Operator> acc;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (dims[f] != 2) throw DimensionError("embed_sigma_z: non-qubit factor");
    const Operator& factor = f == site ? sigma_z() : identity2();
    acc = acc ? tensor(*acc, factor) : factor;
  }
  return *acc;
}

Matrix lindblad_rhs(const Matrix& h, const Matrix& rho, double gamma,
                    std::span<const Operator> ops) {
  Matrix out = -kI * (h * rho - rho * h);
  if (gamma > 0.0) {
    for (const Operator& z : ops) {
      out += gamma * (z.matrix() * rho * z.matrix() - rho);
    }
  }
  return out;
}

Operator unitary_step(const HamiltonianFn& h, double t, double dt,
                      Integrator scheme) {
  switch (scheme) {
    case Integrator::kMidpoint:
      return herm_exp(h(t + 0.5 * dt), dt);
    case Integrator::kAuto:
    case Integrator::kMagnus4: {
      constexpr double kOffset = 0.5 - std::numbers::sqrt3 / 6.0;
      const Operator h1 = h(t + kOffset * dt);
      const Operator h2 = h(t + (1.0 - kOffset) * dt);
      const Operator eff =
          0.5 * (h1 + h2) +
          Complex(0.0, -std::numbers::sqrt3 * dt / 12.0) * commutator(h2, h1);
      // The commutator term is Hermitian up to round-off; symmetrize so the
      // eigensolver sees an exactly Hermitian matrix.
      return herm_exp(Operator(hermitize(eff.matrix())), dt);
    }
    case Integrator::kRungeKutta4:
      break;
  }
  throw std::invalid_argument("unitary_step: RK4 is not a unitary scheme");
}

Matrix evolve_density(const HamiltonianFn& h, const Matrix& rho0, double t0,
                      double t1, int steps, Integrator scheme, double gamma,
                      std::span<const Operator> ops, IntegrationStats* stats) {
  if (steps < 1) throw IntegrationError("evolve_density: steps must be >= 1");
  scheme = resolve(scheme, gamma);
  if (gamma > 0.0 && scheme != Integrator::kRungeKutta4) {
    throw IntegrationError("evolve_density: dephasing requires RK4");
  }
  const double dt = (t1 - t0) / steps;
  Matrix rho = rho0;
  for (int n = 0; n < steps; ++n) {
    const double t = t0 + n * dt;
    if (scheme == Integrator::kRungeKutta4) {
      const RkStage hs{h(t).matrix(), h(t + 0.5 * dt).matrix(),
                       h(t + dt).matrix()};
      rho = clean_state(rk4_step(hs, rho, dt, gamma, ops), stats);
    } else {
      const Matrix u = unitary_step(h, t, dt, scheme).matrix();
      rho = clean_state(u * rho * u.adjoint(), stats);
    }
  }
  return rho;
}

std::vector<Trajectory> propagate_batch(const EvolutionSpec& spec,
                                        std::span<const DensityMatrix> rho0s) {
  const int steps = spec.total_steps();
  const int stride = steps / (kOutputSamples - 1);
  const double gamma = spec.noise ? spec.noise->gamma : 0.0;
  const Integrator scheme = resolve(spec.integrator, gamma);
  if (gamma > 0.0 && scheme != Integrator::kRungeKutta4) {
    throw IntegrationError("propagate: dephasing requires the RK4 integrator");
  }
  const std::vector<Operator> ops = dephasing_operators(spec);
  const int dim = spec.protocol.dim();
  for (const DensityMatrix& r : rho0s) {
    if (r.dim() != dim) {
      std::ostringstream msg;
      msg << "propagate: initial state dimension " << r.dim()
          << " does not match protocol dimension " << dim;
      throw DimensionError(msg.str());
    }
  }

  const GateProtocol& protocol = spec.protocol;
  const HamiltonianFn h = [&protocol](double t) {
    return protocol.hamiltonian(t);
  };
  const double dt = spec.t_end / steps;

  std::vector<Trajectory> out(rho0s.size());
  std::vector<Matrix> rho(rho0s.size());
  for (std::size_t i = 0; i < rho0s.size(); ++i) {
    rho[i] = rho0s[i].op().matrix();
    out[i].times.reserve(kOutputSamples);
    out[i].states.reserve(kOutputSamples);
  }

  auto record = [&](int n) {
    const double t = n * dt;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      check_positivity(rho[i], t, out[i].stats);
      out[i].times.push_back(t);
      out[i].states.push_back(unchecked_density(Operator(rho[i])));
    }
  };

  record(0);
  for (int n = 0; n < steps; ++n) {
    const double t = n * dt;
    if (scheme == Integrator::kRungeKutta4) {
      const RkStage hs{h(t).matrix(), h(t + 0.5 * dt).matrix(),
                       h(t + dt).matrix()};
      for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = clean_state(rk4_step(hs, rho[i], dt, gamma, ops),
                             &out[i].stats);
      }
    } else {
      const Matrix u = unitary_step(h, t, dt, scheme).matrix();
      for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = clean_state(u * rho[i] * u.adjoint(), &out[i].stats);
      }
    }
    if ((n + 1) % stride == 0) record(n + 1);
  }
  return out;
}

Trajectory propagate(const EvolutionSpec& spec, const DensityMatrix& rho0) {
  return std::move(propagate_batch(spec, std::span(&rho0, 1)).front());
}

Operator propagate_unitary_operator(const EvolutionSpec& spec) {
  if (spec.noise && spec.noise->gamma > 0.0) {
    throw IntegrationError(
        "propagate_unitary_operator: evolution with noise is not unitary");
  }
  Integrator scheme = spec.integrator;
  if (scheme == Integrator::kRungeKutta4) {
    throw IntegrationError(
        "propagate_unitary_operator: RK4 does not produce a propagator");
  }
  const int steps = spec.total_steps();
  const double dt = spec.t_end / steps;
  const GateProtocol& protocol = spec.protocol;
  const HamiltonianFn h = [&protocol](double t) {
    return protocol.hamiltonian(t);
  };
  Matrix u = Matrix::Identity(protocol.dim(), protocol.dim());
  for (int n = 0; n < steps; ++n) {
    u = unitary_step(h, n * dt, dt, scheme).matrix() * u;
  }
  return Operator(u);
}

std::vector<std::vector<BlochVector>> reduce_trajectory(
    const Trajectory& traj, std::span<const int> layout) {
  std::vector<std::vector<BlochVector>> out(layout.size());
  for (std::size_t q = 0; q < layout.size(); ++q) {
    if (layout[q] != 2) {
      throw DimensionError("reduce_trajectory: every factor must be a qubit");
    }
    out[q].reserve(traj.states.size());
    for (const DensityMatrix& rho : traj.states) {
      out[q].push_back(layout.size() == 1
                           ? bloch_vector(rho)
                           : bloch_vector(partial_trace(rho, q, layout)));
    }
  }
  return out;
}

}  // namespace qcg
