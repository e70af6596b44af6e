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

// Time-dependent Hamiltonians for controlled gate protocols.
//
// Auxiliary evolution couples the computational register to one driven
// ancilla through a sum of projector blocks,
//
//   H(t) = sum_k P_k (x) h_{phi_k}(lambda(t)),
//   h_phi(lambda) = -[cos(theta_f lambda) Z + sin(theta_f lambda)(cos phi X + sin phi Y)],
//
// so that adiabatically steering the ancilla from |0> to |1> imprints the
// phase e^{i phi_k} on block k. The ancilla is always the last tensor factor.
// Counterdiabatic (CD) and Floquet (FE) control act block by block on the
// ancilla. Inverse engineering (IE) drives the register directly.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qcg/linalg.hpp"
#include "qcg/ramps.hpp"

namespace qcg {

struct Axis {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

enum class AuxStart { kGround, kExcited };

/// Single-qubit gate realized as P+ + e^{i phase_minus} P-, with
/// P+- = (1 +- n.sigma)/2.
class GateSpec {
 public:
  static constexpr double kThetaF = 3.141592653589793;

  /// n = (1, 0, 1)/sqrt(2), phase_minus = pi: target (X + Z)/sqrt(2).
  static GateSpec hadamard();
  /// General rotation; the axis is normalized, a zero axis is rejected.
  static GateSpec rotation(Axis axis, double phase_minus);

  const Axis& axis() const { return axis_; }
  double phase_plus() const { return phase_plus_; }
  double phase_minus() const { return phase_minus_; }
  double theta_f() const { return theta_f_; }
  AuxStart aux_start() const { return aux_start_; }
  /// Ideal unitary on the computational qubit.
  const Operator& target() const { return target_; }

  Operator projector_plus() const;
  Operator projector_minus() const;

  friend GateSpec excited_state_variant(const GateSpec& gate);

 private:
  GateSpec(Axis axis, double phase_minus);

  Axis axis_;
  double phase_plus_ = 0.0;
  double phase_minus_;
  double theta_f_ = kThetaF;
  AuxStart aux_start_ = AuxStart::kGround;
  Operator target_;
};

/// Same computational gate, driven from the ancilla's excited state: block
/// phases are negated and the ancilla returns to |0>.
GateSpec excited_state_variant(const GateSpec& gate);

/// Two-qubit controlled-Z on (control, target); the auxiliary form drives a
/// third qubit.
struct ControlledZ {
  AuxStart aux_start = AuxStart::kGround;
};

using GateTarget = std::variant<GateSpec, ControlledZ>;

/// Coefficients alpha_k of the nested-commutator gauge potential.
struct AGPCoefficients {
  std::vector<double> alphas;
  std::size_t order() const { return alphas.size(); }
};

/// Which harmonic carries the derivative drive in the Floquet Hamiltonian.
///  - kOdd: lambda_dot * 2 w0 alpha_1 sin(w t). Its first-order
///    high-frequency expansion reproduces the l = 1 CD term. Orders k > 1
///    use sin((2k-1) w t) with the same 2 w0 alpha_k scaling.
///  - kLiteralDouble: lambda_dot * w0 alpha_1 sin(2 w t), kept for
///    comparison. It averages the CD term away and does not control.
enum class FloquetHarmonic { kOdd, kLiteralDouble };

std::string_view to_string(FloquetHarmonic h);
FloquetHarmonic parse_floquet_harmonic(std::string_view name);

struct FloquetParams {
  static constexpr double kMinRatio = 10.0;

  explicit FloquetParams(double ratio = 200.0,
                         FloquetHarmonic harmonic = FloquetHarmonic::kOdd);

  double ratio;  ///< w / w0
  FloquetHarmonic harmonic;
};

/// Basis angles of the inverse-engineered unitary
/// U(t) = |m+><m+| + e^{i pi lambda}|m-><m-| at one instant.
struct IEParams {
  double theta = 0.0;
  double phi = 0.0;
  double theta_dot = 0.0;
  double phi_dot = 0.0;

  /// theta = pi/4, phi = 0, static.
  static IEParams hadamard();
  /// Static basis aligned with the rotation axis of `gate`. Only gates with
  /// phase_minus = pi have an IE form; others throw ConfigError.
  static IEParams for_gate(const GateSpec& gate);
};

// --- auxiliary drive ---------------------------------------------------------

Operator aux_drive_h(double phi, double lam,
                     double theta_f = GateSpec::kThetaF);
/// d/d lambda of aux_drive_h.
Operator aux_drive_dh(double phi, double lam,
                      double theta_f = GateSpec::kThetaF);

/// P+ (x) h_{phi+}(lam) + P- (x) h_{phi-}(lam), computational factor first.
Operator aux_total_h(const GateSpec& gate, double lam);

// --- gauge potentials --------------------------------------------------------

/// i sum_{m != n} |m><m|dh|n><n| / (E_n - E_m). Throws
/// DegenerateSpectrumError when two levels are closer than 1e-10.
Operator exact_gauge_potential(const Operator& h, const Operator& dh);

/// i sum_k alpha_k ad_h^{2k-1}(dh).
Operator nested_commutator_agp(const Operator& h, const Operator& dh,
                               const AGPCoefficients& coeffs);

/// Minimizes S = Tr[G^2], G = dh - i[h, A], over the order-l ansatz.
/// S is quadratic in alpha, so this solves the l x l normal equations.
/// A rank-deficient system throws SingularSystemError.
AGPCoefficients minimize_action(const Operator& h, const Operator& dh,
                                std::size_t order);

// --- Floquet -----------------------------------------------------------------

/// [1 + r cos(w t)] h_phi(lambda) + lambda_dot * f(t) * dh_phi(lambda), with
/// w0 = 2 pi / tau and w = r w0. See FloquetHarmonic for f.
Operator floquet_h(double phi, double t, const RampProfile& profile,
                   const FloquetParams& fp, const AGPCoefficients& coeffs,
                   double theta_f = GateSpec::kThetaF);

// --- inverse engineering -----------------------------------------------------

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Field vector w such that H = w.sigma / 2 generates the IE unitary.
Vec3 ie_field(const IEParams& p, double lam, double lam_dot);
Operator ie_h(const IEParams& p, double lam, double lam_dot);
Operator ie_h(const IEParams& p, double t, const RampProfile& profile);

// --- controlled-Z ------------------------------------------------------------

/// Projectors on the (control, target) register for the two CZ blocks:
/// phase 0 on everything except |11>, phase pi on |11>.
Operator cz_block_projector(bool phase_block);

/// (|0><0| (x) 1 + |1><1| (x) |0><0|) (x) h_0 + |11><11| (x) h_pi; 8 x 8.
Operator cz_aux_h(double lam);

/// pi lambda_dot / 4 (1 (x) Z + Z (x) 1 - Z (x) Z).
Operator cz_ie_h(const RampProfile& profile, double t);

/// diag(1, 1, 1, -1).
Operator controlled_z();

// --- protocols ---------------------------------------------------------------

enum class ProtocolKind { kUncontrolled, kCounterdiabatic, kFloquet,
                          kInverseEngineered };

std::string_view to_string(ProtocolKind kind);
/// "uncontrolled" | "cd" | "fe" | "ie".
ProtocolKind parse_protocol_kind(std::string_view name);

/// How the CD term is evaluated at each instant.
enum class GaugeRoute { kSpectral, kVariational };

/// A fully bound control scheme: H(t) on a declared tensor layout.
class GateProtocol {
 public:
  using HamiltonianFn = std::function<Operator(double)>;

  struct Layout {
    std::vector<int> dims;                   ///< factor dimensions, all 2
    std::vector<std::size_t> computational;  ///< register qubit sites
    std::vector<std::size_t> driven;         ///< sites hit by the drive
    std::optional<std::size_t> auxiliary;    ///< ancilla site, if any
  };

  GateProtocol(ProtocolKind kind, RampProfile profile, Layout layout,
               Operator target, HamiltonianFn h,
               std::optional<FloquetParams> floquet, AuxStart aux_start);

  ProtocolKind kind() const { return kind_; }
  const RampProfile& profile() const { return profile_; }
  const Layout& layout() const { return layout_; }
  int dim() const;
  /// Ideal unitary on the computational register.
  const Operator& target() const { return target_; }
  const std::optional<FloquetParams>& floquet() const { return floquet_; }
  AuxStart aux_start() const { return aux_start_; }
  /// Dimension of the computational register (2 or 4).
  int register_dim() const;

  Operator hamiltonian(double t) const { return h_(t); }

 private:
  ProtocolKind kind_;
  RampProfile profile_;
  Layout layout_;
  Operator target_;
  HamiltonianFn h_;
  std::optional<FloquetParams> floquet_;
  AuxStart aux_start_;
};

struct ProtocolOptions {
  std::optional<FloquetParams> floquet;
  GaugeRoute gauge = GaugeRoute::kSpectral;
};

/// Binds a builder to a gate and ramp. FE requires `opts.floquet`; IE
/// requires a gate with an IE preset. Violations throw ConfigError.
GateProtocol build_protocol(ProtocolKind kind, const GateTarget& gate,
                            const RampProfile& profile,
                            const ProtocolOptions& opts = {});

}  // namespace qcg
