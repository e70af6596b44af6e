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

#include "qcg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace qcg {
namespace {

constexpr std::string_view kScenarioNames[] = {
    "duration_sweep", "dynamical", "cost_sweep", "timing_sweep",
    "dephasing_sweep", "bloch", "sequence", "cz"};

std::vector<ProtocolKind> or_default(const std::vector<ProtocolKind>& v,
                                     std::vector<ProtocolKind> fallback) {
  return v.empty() ? fallback : v;
}

std::vector<RampKind> or_default(const std::vector<RampKind>& v,
                                 std::vector<RampKind> fallback) {
  return v.empty() ? fallback : v;
}

std::vector<double> or_default(const std::vector<double>& v,
                               std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

SweepRecord make_record(const ExperimentConfig& cfg, std::string_view param,
                        double value, std::string_view protocol,
                        std::string_view ramp) {
  SweepRecord r;
  r.scenario = std::string(to_string(cfg.scenario));
  r.protocol = std::string(protocol);
  r.ramp = std::string(ramp);
  r.param = std::string(param);
  r.value = value + 0.0;  // normalizes -0
  return r;
}

// Runs `body` and stores either its value or the exception text.
template <typename Fn>
void fill(SweepRecord& rec, const ExperimentConfig& cfg, bool is_cost,
          Fn&& body) {
  Stopwatch sw;
  try {
    const double v = body();
    if (is_cost) {
      rec.cost = v;
    } else {
      rec.infidelity = v;
    }
  } catch (const ConfigError&) {
    throw;  // a bad setting, not a numerical failure of this row
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.runtime_seconds = cfg.record_runtime ? sw.seconds() : 0.0;
}

ProtocolOptions options_for(const ExperimentConfig& cfg, ProtocolKind kind) {
  ProtocolOptions opts;
  if (kind == ProtocolKind::kFloquet) {
    opts.floquet = FloquetParams(cfg.ratio, cfg.harmonic);
  }
  return opts;
}

std::optional<NoiseSpec> noise_for(const ExperimentConfig& cfg,
                                   const GateProtocol& protocol,
                                   double gamma) {
  if (gamma <= 0.0) return std::nullopt;
  std::optional<std::vector<std::size_t>> sites;
  if (!protocol.layout().auxiliary && !cfg.ie_dephase_all_qubits) {
    sites = std::vector<std::size_t>{protocol.layout().driven.back()};
  }
  return NoiseSpec(gamma, sites);
}

}  // namespace

std::string_view to_string(Scenario s) {
  return kScenarioNames[static_cast<int>(s)];
}

Scenario parse_scenario(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kScenarioNames)); ++i) {
    if (name == kScenarioNames[i]) return static_cast<Scenario>(i);
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'",
                    "scenario");
}

void ExperimentConfig::validate() const {
  auto positive = [](const std::vector<double>& grid, const char* key) {
    for (double v : grid) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(key) + " must contain positive values",
                          key);
      }
    }
  };
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("tau must be positive", "tau");
  }
  positive(tau_grid, "tau_grid");
  for (double e : epsilon_grid) {
    if (!(e >= 0.0 && e <= TimingError::kMaxEpsilon)) {
      throw ConfigError("epsilon_grid values must lie in [0, 0.5]",
                        "epsilon_grid");
    }
  }
  for (double g : gamma_tau_grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ConfigError("gamma_tau_grid values must be >= 0",
                        "gamma_tau_grid");
    }
  }
  if (!(ratio >= FloquetParams::kMinRatio)) {
    throw ConfigError("ratio must be >= 10", "ratio");
  }
  if (!(fixed_gamma >= 0.0)) {
    throw ConfigError("fixed_gamma must be >= 0", "fixed_gamma");
  }
  if (!(bloch_gamma_tau >= 0.0)) {
    throw ConfigError("bloch_gamma_tau must be >= 0", "bloch_gamma_tau");
  }
  if (steps_per_unit < 0) {
    throw ConfigError("steps_per_unit must be >= 0", "steps_per_unit");
  }
}

int resolve_threads(int requested) {
  int n = requested > 0
              ? requested
              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("QCG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const auto workers =
      static_cast<std::size_t>(std::max(1, std::min<int>(threads, n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

GateTarget gate_target(const ExperimentConfig& cfg) {
  if (cfg.scenario == Scenario::kCz) return ControlledZ{};
  if (cfg.gate == GatePreset::kRotation) {
    try {
      return GateSpec::rotation(cfg.rotation_axis, cfg.rotation_phase);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), "rotation_axis");
    }
  }
  return GateSpec::hadamard();
}

GateProtocol make_protocol(const ExperimentConfig& cfg, ProtocolKind kind,
                           const GateTarget& gate, const RampProfile& profile) {
  return build_protocol(kind, gate, profile, options_for(cfg, kind));
}

EvolutionSpec make_spec(const ExperimentConfig& cfg, GateProtocol protocol,
                        double t_end) {
  EvolutionSpec spec(std::move(protocol), t_end);
  if (cfg.steps_per_unit > 0) spec.steps_per_unit = cfg.steps_per_unit;
  return spec;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo : std::pow(10.0, a + (b - a) * i / (n - 1));
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

// --- infidelity vs duration ----------------------------------------------------

std::vector<SweepRecord> run_duration_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols = or_default(
      cfg.protocols,
      {ProtocolKind::kUncontrolled, ProtocolKind::kCounterdiabatic,
       ProtocolKind::kFloquet, ProtocolKind::kInverseEngineered});
  const auto ramps = or_default(cfg.ramps, {RampKind::kLinear});
  const auto taus = or_default(cfg.tau_grid, logspace(0.1, 10.0, 40));
  const GateTarget gate = gate_target(cfg);

  std::vector<SweepRecord> out;
  for (ProtocolKind p : protocols) {
    for (RampKind r : ramps) {
      for (double tau : taus) {
        out.push_back(make_record(cfg, "tau", tau, to_string(p), to_string(r)));
      }
    }
  }
  const std::size_t per_protocol = ramps.size() * taus.size();
  parallel_for(out.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const ProtocolKind p = protocols[i / per_protocol];
    const RampKind r = ramps[(i % per_protocol) / taus.size()];
    const double tau = taus[i % taus.size()];
    fill(out[i], cfg, false, [&] {
      const RampProfile profile(r, tau);
      GateProtocol proto = make_protocol(cfg, p, gate, profile);
      const ProbeSet probes = ProbeSet::for_register(proto.register_dim());
      return final_infidelity(make_spec(cfg, std::move(proto), tau), probes);
    });
  });
  return out;
}

// --- infidelity vs time ------------------------------------------------------

std::vector<DynamicalSeries> run_dynamical_series(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols = or_default(
      cfg.protocols,
      {ProtocolKind::kUncontrolled, ProtocolKind::kCounterdiabatic,
       ProtocolKind::kFloquet, ProtocolKind::kInverseEngineered});
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const GateTarget gate = gate_target(cfg);
  const RampProfile profile(ramp, cfg.tau);

  std::vector<DynamicalSeries> out(protocols.size());
  parallel_for(protocols.size(), resolve_threads(cfg.threads),
               [&](std::size_t i) {
                 GateProtocol proto =
                     make_protocol(cfg, protocols[i], gate, profile);
                 const ProbeSet probes =
                     ProbeSet::for_register(proto.register_dim());
                 out[i] = DynamicalSeries{
                     protocols[i],
                     dynamical_infidelity(
                         make_spec(cfg, std::move(proto), cfg.tau), probes)};
               });
  return out;
}

std::vector<SweepRecord> run_dynamical(const ExperimentConfig& cfg) {
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  Stopwatch sw;
  const auto all = run_dynamical_series(cfg);
  const double runtime = cfg.record_runtime ? sw.seconds() : 0.0;
  std::vector<SweepRecord> out;
  for (const DynamicalSeries& s : all) {
    for (std::size_t k = 0; k < s.series.times.size(); ++k) {
      SweepRecord r = make_record(cfg, "t", s.series.times[k],
                                  to_string(s.protocol), to_string(ramp));
      r.infidelity = s.series.infidelity[k];
      r.runtime_seconds = runtime;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// --- cost vs duration --------------------------------------------------------

std::vector<SweepRecord> run_cost_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols = or_default(
      cfg.protocols,
      {ProtocolKind::kCounterdiabatic, ProtocolKind::kFloquet,
       ProtocolKind::kInverseEngineered});
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const auto taus = or_default(cfg.tau_grid, logspace(0.05, 20.0, 40));
  const GateTarget gate = gate_target(cfg);

  std::vector<SweepRecord> out;
  for (ProtocolKind p : protocols) {
    for (double tau : taus) {
      out.push_back(make_record(cfg, "tau", tau, to_string(p), to_string(ramp)));
    }
  }
  parallel_for(out.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const ProtocolKind p = protocols[i / taus.size()];
    const double tau = taus[i % taus.size()];
    fill(out[i], cfg, true, [&] {
      return cost(make_protocol(cfg, p, gate, RampProfile(ramp, tau)),
                  cfg.norm)
          .cost;
    });
  });
  return out;
}

// --- infidelity vs timing error ----------------------------------------------

std::vector<SweepRecord> run_timing_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols =
      or_default(cfg.protocols, {ProtocolKind::kInverseEngineered});
  const auto ramps = or_default(
      cfg.ramps, {RampKind::kLinear, RampKind::kPolynomial,
                  RampKind::kSinusoidal});
  std::vector<double> eps_default;
  for (int k = 0; k <= 30; ++k) eps_default.push_back(k / 100.0);
  const auto eps = or_default(cfg.epsilon_grid, eps_default);
  const GateTarget gate = gate_target(cfg);
  constexpr TimingSign kSigns[] = {TimingSign::kUndershoot,
                                   TimingSign::kOvershoot};

  struct Job {
    ProtocolKind p;
    RampKind r;
    TimingError err;
  };
  std::vector<Job> jobs;
  std::vector<SweepRecord> out;
  for (ProtocolKind p : protocols) {
    for (RampKind r : ramps) {
      for (TimingSign s : kSigns) {
        for (double e : eps) {
          jobs.push_back({p, r, TimingError(e, s)});
          out.push_back(make_record(cfg, "epsilon",
                                    static_cast<int>(s) * e, to_string(p),
                                    to_string(r)));
        }
      }
    }
  }
  parallel_for(out.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const Job& job = jobs[i];
    fill(out[i], cfg, false, [&] {
      const RampProfile profile(job.r, cfg.tau);
      GateProtocol proto = make_protocol(cfg, job.p, gate, profile);
      const ProbeSet probes = ProbeSet::for_register(proto.register_dim());
      return final_infidelity(
          make_spec(cfg, std::move(proto), effective_duration(profile, job.err)),
          probes);
    });
  });
  return out;
}

// --- infidelity vs dephasing -------------------------------------------------

std::vector<SweepRecord> run_dephasing_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols = or_default(
      cfg.protocols,
      {ProtocolKind::kCounterdiabatic, ProtocolKind::kInverseEngineered});
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const auto grid = or_default(cfg.gamma_tau_grid, linspace(0.0, 5.0, 26));
  const GateTarget gate = gate_target(cfg);

  std::vector<SweepRecord> out;
  for (ProtocolKind p : protocols) {
    for (double gt : grid) {
      out.push_back(
          make_record(cfg, "tau_gamma", gt, to_string(p), to_string(ramp)));
    }
  }
  parallel_for(out.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const ProtocolKind p = protocols[i / grid.size()];
    const double gt = grid[i % grid.size()];
    fill(out[i], cfg, false, [&] {
      double tau = cfg.tau;
      double gamma = gt / cfg.tau;
      if (cfg.dephasing_mode == DephasingSweepMode::kFixedGamma) {
        if (!(cfg.fixed_gamma > 0.0)) {
          throw ConfigError("fixed_gamma must be positive in fixed-gamma mode",
                            "fixed_gamma");
        }
        gamma = cfg.fixed_gamma;
        tau = gt / gamma;
        if (!(tau > 0.0)) {
          throw ConfigError("tau_gamma must be positive in fixed-gamma mode",
                            "gamma_tau_grid");
        }
      }
      GateProtocol proto = make_protocol(cfg, p, gate, RampProfile(ramp, tau));
      const ProbeSet probes = ProbeSet::for_register(proto.register_dim());
      EvolutionSpec spec = make_spec(cfg, std::move(proto), tau);
      spec.noise = noise_for(cfg, spec.protocol, gamma);
      return final_infidelity(spec, probes);
    });
  });
  return out;
}

// --- Bloch trajectories ------------------------------------------------------

BlochResult run_bloch(const ExperimentConfig& cfg) {
  cfg.validate();
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const GateTarget gate = gate_target(cfg);
  if (std::holds_alternative<ControlledZ>(gate)) {
    throw ConfigError("bloch trajectories are single-qubit only", "gate");
  }
  const RampProfile profile(ramp, cfg.tau);
  const double gamma = cfg.bloch_gamma_tau / cfg.tau;

  const Ket plus = (basis_ket(2, 0) + basis_ket(2, 1)) / std::numbers::sqrt2;
  const DensityMatrix plus_rho = DensityMatrix::pure(plus);

  GateProtocol ie = make_protocol(cfg, ProtocolKind::kInverseEngineered, gate,
                                  profile);
  GateProtocol cd =
      make_protocol(cfg, ProtocolKind::kCounterdiabatic, gate, profile);
  const DensityMatrix cd_init = embed_probe(cd, plus_rho);

  EvolutionSpec ie_spec = make_spec(cfg, ie, cfg.tau);
  ie_spec.noise = noise_for(cfg, ie_spec.protocol, gamma);
  EvolutionSpec cd_spec = make_spec(cfg, cd, cfg.tau);
  cd_spec.noise = noise_for(cfg, cd_spec.protocol, gamma);

  const Trajectory ie_traj = propagate(ie_spec, plus_rho);
  const Trajectory cd_traj = propagate(cd_spec, cd_init);

  const int one[] = {2};
  const auto ie_series = reduce_trajectory(ie_traj, one);
  const auto cd_series = reduce_trajectory(cd_traj, cd.layout().dims);

  BlochResult out;
  out.times = ie_traj.times;
  out.series = {ie_series[0], cd_series[0], cd_series[1]};
  for (std::size_t track = 0; track < out.series.size(); ++track) {
    for (std::size_t k = 0; k < out.times.size(); ++k) {
      out.samples.push_back(BlochSample{std::string(kBlochTracks[track]),
                                        out.times[k], out.series[track][k]});
    }
  }
  const std::vector<int>& dims = cd.layout().dims;
  for (const DensityMatrix& rho : cd_traj.states) {
    out.cd_register_purity.push_back(partial_trace(rho, 0, dims).purity());
    out.cd_auxiliary_purity.push_back(partial_trace(rho, 1, dims).purity());
  }
  return out;
}

// --- ground-start then excited-start sequence --------------------------------

SequenceResult run_sequence(const ExperimentConfig& cfg) {
  cfg.validate();
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const GateTarget first = gate_target(cfg);
  const auto* spec_gate = std::get_if<GateSpec>(&first);
  if (!spec_gate) {
    throw ConfigError("sequence scenario needs a single-qubit gate", "gate");
  }
  const GateSpec excited = excited_state_variant(*spec_gate);
  const RampProfile profile(ramp, cfg.tau);

  Stopwatch sw;
  const GateProtocol leg1 = make_protocol(
      cfg, ProtocolKind::kCounterdiabatic, *spec_gate, profile);
  const GateProtocol leg2 =
      make_protocol(cfg, ProtocolKind::kCounterdiabatic, excited, profile);
  const EvolutionSpec spec1 = make_spec(cfg, leg1, cfg.tau);
  const EvolutionSpec spec2 = make_spec(cfg, leg2, cfg.tau);

  const ProbeSet probes = ProbeSet::single_qubit();

  // Leg 2 alone, from rho_i (x) |1><1|.
  SweepRecord single = make_record(cfg, "leg", 2.0, "cd", to_string(ramp));
  fill(single, cfg, false,
       [&] { return final_infidelity(spec2, probes); });

  // Both legs: the register should return to its input (Hadamard^2 = 1).
  SweepRecord both = make_record(cfg, "legs", 2.0, "cd", to_string(ramp));
  std::vector<DensityMatrix> after;
  fill(both, cfg, false, [&] {
    std::vector<DensityMatrix> inits;
    for (const DensityMatrix& p : probes.states) {
      inits.push_back(embed_probe(leg1, p));
    }
    const auto mid = propagate_batch(spec1, inits);
    std::vector<DensityMatrix> mids;
    for (const Trajectory& t : mid) mids.push_back(t.states.back());
    const auto fin = propagate_batch(spec2, mids);
    std::vector<DensityMatrix> reduced;
    for (const Trajectory& t : fin) {
      reduced.push_back(register_state(leg2, t.states.back()));
    }
    const Operator expected = excited.target() * spec_gate->target();
    return gate_infidelity(expected, reduced, probes);
  });

  const Ket plus = (basis_ket(2, 0) + basis_ket(2, 1)) / std::numbers::sqrt2;
  const DensityMatrix start = embed_probe(leg1, DensityMatrix::pure(plus));
  const DensityMatrix mid = propagate(spec1, start).states.back();
  const DensityMatrix fin = propagate(spec2, mid).states.back();
  const int dims[] = {2, 2};
  const DensityMatrix reg = partial_trace(fin, 0, dims);
  const DensityMatrix aux = partial_trace(fin, 1, dims);
  const Operator applied = excited.target() * spec_gate->target();
  const Ket expected_reg = applied.apply(plus);

  const double runtime = cfg.record_runtime ? sw.seconds() : 0.0;
  single.runtime_seconds = runtime;
  both.runtime_seconds = runtime;
  return SequenceResult{{single, both},
                        fin,
                        overlap(expected_reg, reg),
                        overlap(basis_ket(2, 0), aux)};
}

// --- controlled-Z ------------------------------------------------------------

std::vector<SweepRecord> run_cz(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto protocols = or_default(
      cfg.protocols,
      {ProtocolKind::kCounterdiabatic, ProtocolKind::kInverseEngineered});
  const RampKind ramp = cfg.ramps.empty() ? RampKind::kLinear : cfg.ramps[0];
  const RampProfile profile(ramp, cfg.tau);
  const GateTarget gate = ControlledZ{};

  std::vector<SweepRecord> out;
  for (ProtocolKind p : protocols) {
    out.push_back(make_record(cfg, "tau", cfg.tau, to_string(p), to_string(ramp)));
    out.push_back(make_record(cfg, "tau", cfg.tau, to_string(p), to_string(ramp)));
  }
  parallel_for(out.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const ProtocolKind p = protocols[i / 2];
    const bool is_cost = i % 2 == 1;
    fill(out[i], cfg, is_cost, [&] {
      GateProtocol proto = make_protocol(cfg, p, gate, profile);
      if (is_cost) return cost(proto, cfg.norm).cost;
      const ProbeSet probes = ProbeSet::two_qubit();
      return final_infidelity(make_spec(cfg, std::move(proto), cfg.tau),
                              probes);
    });
  });
  return out;
}

std::vector<SweepRecord> run_scenario(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::kDurationSweep:
      return run_duration_sweep(cfg);
    case Scenario::kDynamical:
      return run_dynamical(cfg);
    case Scenario::kCostSweep:
      return run_cost_sweep(cfg);
    case Scenario::kTimingSweep:
      return run_timing_sweep(cfg);
    case Scenario::kDephasingSweep:
      return run_dephasing_sweep(cfg);
    case Scenario::kSequence:
      return run_sequence(cfg).records;
    case Scenario::kCz:
      return run_cz(cfg);
    case Scenario::kBloch:
      break;
  }
  throw ConfigError("bloch trajectories use their own output schema",
                    "scenario");
}

}  // namespace qcg
