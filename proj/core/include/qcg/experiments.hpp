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

// Scenario runners. Each returns plain records; nothing here writes files.
//
// Sweep points are independent jobs run on a small worker pool. Results are
// stored by job index, so the output order never depends on scheduling.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcg/dynamics.hpp"
#include "qcg/hamiltonians.hpp"
#include "qcg/metrics.hpp"
#include "qcg/ramps.hpp"

namespace qcg {

enum class Scenario {
  kDurationSweep,
  kDynamical,
  kCostSweep,
  kTimingSweep,
  kDephasingSweep,
  kBloch,
  kSequence,
  kCz,
};

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

enum class GatePreset { kHadamard, kRotation };

enum class DephasingSweepMode { kFixedTau, kFixedGamma };

struct ExperimentConfig {
  Scenario scenario = Scenario::kDurationSweep;

  std::vector<ProtocolKind> protocols;  ///< empty: scenario default
  std::vector<RampKind> ramps;          ///< empty: scenario default

  GatePreset gate = GatePreset::kHadamard;
  Axis rotation_axis;                   ///< for GatePreset::kRotation
  double rotation_phase = 3.141592653589793;

  double tau = 1.0;                     ///< fixed-duration scenarios
  std::vector<double> tau_grid;         ///< empty: scenario default
  std::vector<double> epsilon_grid;     ///< empty: 0..0.3 step 0.01
  std::vector<double> gamma_tau_grid;   ///< empty: 26 points on [0, 5]
  DephasingSweepMode dephasing_mode = DephasingSweepMode::kFixedTau;
  double fixed_gamma = 1.0;             ///< kFixedGamma only

  double ratio = 200.0;                 ///< w / w0 for FE
  FloquetHarmonic harmonic = FloquetHarmonic::kOdd;
  NormKind norm = NormKind::kTrace;
  int steps_per_unit = 0;               ///< 0: protocol default
  double bloch_gamma_tau = 0.0;
  bool ie_dephase_all_qubits = true;    ///< two-qubit IE noise sites
  bool record_runtime = true;           ///< false writes 0 runtimes
  int threads = 0;                      ///< 0: hardware concurrency

  /// Throws ConfigError on empty or non-positive grids.
  void validate() const;
};

/// One CSV row. Exactly one of infidelity / cost is set on success; on a
/// failed sweep point both are empty and `error` carries the diagnostic.
struct SweepRecord {
  std::string scenario;
  std::string protocol;
  std::string ramp;
  std::string param;
  double value = 0.0;
  std::optional<double> infidelity;
  std::optional<double> cost;
  double runtime_seconds = 0.0;
  std::optional<std::string> error;

  bool operator==(const SweepRecord&) const = default;
};

struct BlochSample {
  std::string track;  ///< "ie", "cd_computational", "cd_auxiliary"
  double t = 0.0;
  BlochVector r;
};

struct BlochResult {
  std::vector<BlochSample> samples;
  /// Series per track in the order of kBlochTracks.
  std::vector<std::vector<BlochVector>> series;
  std::vector<double> times;
  /// Register and ancilla purity of the CD composite at each sample.
  std::vector<double> cd_register_purity;
  std::vector<double> cd_auxiliary_purity;
};

inline constexpr std::string_view kBlochTracks[] = {"ie", "cd_computational",
                                                   "cd_auxiliary"};

struct SequenceResult {
  std::vector<SweepRecord> records;
  DensityMatrix final_state;     ///< composite after both legs, input |+>
  double register_overlap = 0;   ///< <+|rho_register|+>
  double auxiliary_overlap = 0;  ///< <0|rho_aux|0>
};

/// Worker count: `requested`, or hardware concurrency when it is 0, capped by
/// QCG_THREADS when that is set to a positive integer.
int resolve_threads(int requested);

/// Runs fn(0..n-1) on up to `threads` workers; results in index order.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

GateTarget gate_target(const ExperimentConfig& cfg);
GateProtocol make_protocol(const ExperimentConfig& cfg, ProtocolKind kind,
                           const GateTarget& gate, const RampProfile& profile);
EvolutionSpec make_spec(const ExperimentConfig& cfg, GateProtocol protocol,
                        double t_end);

std::vector<double> logspace(double lo, double hi, int n);
std::vector<double> linspace(double lo, double hi, int n);

std::vector<SweepRecord> run_duration_sweep(const ExperimentConfig& cfg);

struct DynamicalSeries {
  ProtocolKind protocol;
  InfidelitySeries series;
};
std::vector<DynamicalSeries> run_dynamical_series(const ExperimentConfig& cfg);
/// Rows with param "t".
std::vector<SweepRecord> run_dynamical(const ExperimentConfig& cfg);

std::vector<SweepRecord> run_cost_sweep(const ExperimentConfig& cfg);
/// Rows with param "epsilon"; value is sign * epsilon.
std::vector<SweepRecord> run_timing_sweep(const ExperimentConfig& cfg);
/// Rows with param "tau_gamma".
std::vector<SweepRecord> run_dephasing_sweep(const ExperimentConfig& cfg);
BlochResult run_bloch(const ExperimentConfig& cfg);
SequenceResult run_sequence(const ExperimentConfig& cfg);
std::vector<SweepRecord> run_cz(const ExperimentConfig& cfg);

/// Dispatches the record-producing scenarios. Bloch trajectories have their
/// own schema; kBloch here throws ConfigError, call run_bloch instead.
std::vector<SweepRecord> run_scenario(const ExperimentConfig& cfg);

}  // namespace qcg
