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

#include "qcg/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/LU>

namespace qcg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapTolerance = 1e-10;

struct Block {
  Operator projector;  // on the computational register
  double phase;
};

Operator embed_blocks(const std::vector<Block>& blocks,
                      const std::vector<Operator>& aux_terms) {
  Operator total = Operator::zero(blocks.front().projector.dim() * 2);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    total = total + tensor(blocks[k].projector, aux_terms[k]);
  }
  return total;
}

std::vector<Block> blocks_for(const GateTarget& gate) {
  if (const auto* g = std::get_if<GateSpec>(&gate)) {
    return {{g->projector_plus(), g->phase_plus()},
            {g->projector_minus(), g->phase_minus()}};
  }
  const auto& cz = std::get<ControlledZ>(gate);
  const double pi_phase = cz.aux_start == AuxStart::kExcited ? -kPi : kPi;
  return {{cz_block_projector(false), 0.0},
          {cz_block_projector(true), pi_phase}};
}

AuxStart aux_start_of(const GateTarget& gate) {
  if (const auto* g = std::get_if<GateSpec>(&gate)) return g->aux_start();
  return std::get<ControlledZ>(gate).aux_start;
}

Operator target_of(const GateTarget& gate) {
  if (const auto* g = std::get_if<GateSpec>(&gate)) return g->target();
  return controlled_z();
}

}  // namespace

// --- GateSpec ----------------------------------------------------------------

GateSpec::GateSpec(Axis axis, double phase_minus)
    : axis_(axis), phase_minus_(phase_minus), target_(Operator::zero(2)) {
  target_ = projector_plus() + std::polar(1.0, phase_minus_) * projector_minus();
}

GateSpec GateSpec::hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  return GateSpec(Axis{r, 0.0, r}, kPi);
}

GateSpec GateSpec::rotation(Axis axis, double phase_minus) {
  const double n = std::sqrt(axis.x * axis.x + axis.y * axis.y +
                             axis.z * axis.z);
  if (!(n > 1e-12) || !std::isfinite(n)) {
    throw std::invalid_argument("GateSpec::rotation: axis must be non-zero");
  }
  return GateSpec(Axis{axis.x / n, axis.y / n, axis.z / n}, phase_minus);
}

Operator GateSpec::projector_plus() const {
  return 0.5 * (identity2() + axis_.x * sigma_x() + axis_.y * sigma_y() +
                axis_.z * sigma_z());
}

Operator GateSpec::projector_minus() const {
  return 0.5 * (identity2() - axis_.x * sigma_x() - axis_.y * sigma_y() -
                axis_.z * sigma_z());
}

GateSpec excited_state_variant(const GateSpec& gate) {
  GateSpec out = gate;
  out.phase_plus_ = -gate.phase_plus_;
  out.phase_minus_ = -gate.phase_minus_;
  out.aux_start_ = gate.aux_start_ == AuxStart::kGround ? AuxStart::kExcited
                                                        : AuxStart::kGround;
  return out;
}

// --- parameters --------------------------------------------------------------

std::string_view to_string(FloquetHarmonic h) {
  return h == FloquetHarmonic::kOdd ? "odd" : "literal-double";
}

FloquetHarmonic parse_floquet_harmonic(std::string_view name) {
  if (name == "odd") return FloquetHarmonic::kOdd;
  if (name == "literal-double") return FloquetHarmonic::kLiteralDouble;
  throw ConfigError("unknown Floquet harmonic '" + std::string(name) +
                        "' (expected odd|literal-double)",
                    "floquet_harmonic");
}

FloquetParams::FloquetParams(double r, FloquetHarmonic h)
    : ratio(r), harmonic(h) {
  if (!(r >= kMinRatio) || !std::isfinite(r)) {
    std::ostringstream msg;
    msg << "Floquet ratio " << r << " below minimum " << kMinRatio;
    throw ConfigError(msg.str(), "ratio");
  }
}

IEParams IEParams::hadamard() {
  IEParams p;
  p.theta = kPi / 4.0;
  return p;
}

IEParams IEParams::for_gate(const GateSpec& gate) {
  if (std::abs(std::cos(gate.phase_minus()) + 1.0) > 1e-12) {
    throw ConfigError(
        "no inverse-engineering preset for a gate with phase other than pi",
        "gate");
  }
  const Axis& n = gate.axis();
  IEParams p;
  p.theta = std::acos(std::clamp(n.z, -1.0, 1.0));
  p.phi = std::atan2(n.y, n.x);
  return p;
}

// --- auxiliary drive ---------------------------------------------------------

Operator aux_drive_h(double phi, double lam, double theta_f) {
  const double a = theta_f * lam;
  return -(std::cos(a) * sigma_z() +
           std::sin(a) * (std::cos(phi) * sigma_x() + std::sin(phi) * sigma_y()));
}

Operator aux_drive_dh(double phi, double lam, double theta_f) {
  const double a = theta_f * lam;
  return -theta_f *
         (-std::sin(a) * sigma_z() +
          std::cos(a) * (std::cos(phi) * sigma_x() + std::sin(phi) * sigma_y()));
}

Operator aux_total_h(const GateSpec& gate, double lam) {
  return tensor(gate.projector_plus(),
                aux_drive_h(gate.phase_plus(), lam, gate.theta_f())) +
         tensor(gate.projector_minus(),
                aux_drive_h(gate.phase_minus(), lam, gate.theta_f()));
}

// --- gauge potentials --------------------------------------------------------

Operator exact_gauge_potential(const Operator& h, const Operator& dh) {
  if (h.dim() != dh.dim()) {
    throw DimensionError("exact_gauge_potential: dimension mismatch");
  }
  const EigenSystem es = eigh(h);
  const int n = h.dim();
  double min_gap = std::numeric_limits<double>::infinity();
  for (int k = 1; k < n; ++k) {
    min_gap = std::min(min_gap, es.values(k) - es.values(k - 1));
  }
  if (min_gap < kGapTolerance) {
    std::ostringstream msg;
    msg << "exact_gauge_potential: degenerate spectrum, minimum gap "
        << min_gap << " < " << kGapTolerance;
    throw DegenerateSpectrumError(msg.str(), min_gap);
  }
  // Matrix elements of dh in the eigenbasis, then divide off-diagonals by
  // the level spacing and rotate back.
  const Matrix& v = es.vectors;
  Matrix in_eig = v.adjoint() * dh.matrix() * v;
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      in_eig(m, k) = m == k ? Complex(0.0)
                            : Complex(0.0, 1.0) * in_eig(m, k) /
                                  (es.values(k) - es.values(m));
    }
  }
  return Operator(v * in_eig * v.adjoint());
}

Operator nested_commutator_agp(const Operator& h, const Operator& dh,
                               const AGPCoefficients& coeffs) {
  Operator acc = Operator::zero(h.dim());
  Operator nested = commutator(h, dh);  // ad_h^1
  for (std::size_t k = 0; k < coeffs.order(); ++k) {
    acc = acc + Complex(0.0, coeffs.alphas[k]) * nested;
    nested = commutator(h, commutator(h, nested));
  }
  return acc;
}

AGPCoefficients minimize_action(const Operator& h, const Operator& dh,
                                std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("minimize_action: order must be >= 1");
  }
  // even[k] = ad_h^{2(k+1)}(dh); G = dh + sum_k alpha_k even[k].
  std::vector<Operator> even;
  even.reserve(order);
  Operator nested = commutator(h, commutator(h, dh));
  for (std::size_t k = 0; k < order; ++k) {
    even.push_back(nested);
    nested = commutator(h, commutator(h, nested));
  }
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::MatrixXd normal(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    rhs(k) = -(dh * even[k]).trace().real();
    for (Eigen::Index j = 0; j < n; ++j) {
      normal(k, j) = (even[k] * even[j]).trace().real();
    }
  }
  AGPCoefficients out;
  if (rhs.cwiseAbs().maxCoeff() == 0.0) {
    out.alphas.assign(order, 0.0);
    return out;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  lu.setThreshold(1e-10);
  if (lu.rank() < n) {
    std::ostringstream msg;
    msg << "minimize_action: normal equations of order " << order
        << " are singular (rank " << lu.rank() << ")";
    throw SingularSystemError(msg.str());
  }
  const Eigen::VectorXd alpha = lu.solve(rhs);
  out.alphas.assign(alpha.data(), alpha.data() + n);
  return out;
}

// --- Floquet -----------------------------------------------------------------

Operator floquet_h(double phi, double t, const RampProfile& profile,
                   const FloquetParams& fp, const AGPCoefficients& coeffs,
                   double theta_f) {
  const double lam = profile.lambda(t);
  const double lam_dot = profile.lambda_dot(t);
  const double w0 = 2.0 * kPi / profile.tau();
  const double w = fp.ratio * w0;

  double drive = 0.0;
  if (fp.harmonic == FloquetHarmonic::kLiteralDouble) {
    if (coeffs.order() > 0) drive = w0 * coeffs.alphas[0] * std::sin(2.0 * w * t);
  } else {
    for (std::size_t k = 0; k < coeffs.order(); ++k) {
      const double harmonic = static_cast<double>(2 * k + 1);
      drive += 2.0 * w0 * coeffs.alphas[k] * std::sin(harmonic * w * t);
    }
  }
  return (1.0 + fp.ratio * std::cos(w * t)) * aux_drive_h(phi, lam, theta_f) +
         (lam_dot * drive) * aux_drive_dh(phi, lam, theta_f);
}

// --- inverse engineering -----------------------------------------------------

Vec3 ie_field(const IEParams& p, double lam, double lam_dot) {
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  const double sl = std::sin(kPi * lam);
  const double cl1 = std::cos(kPi * lam) - 1.0;
  const double td = p.theta_dot;
  const double pd = p.phi_dot;

  Vec3 w;
  w.x = cl1 * pd * cp * ct * st + (-pd * st * sl + cl1 * td) * sp +
        (td * ct * sl + kPi * lam_dot * st) * cp;
  w.y = cl1 * pd * sp * st * ct + (pd * st * sl - cl1 * td) * cp +
        (td * ct * sl + kPi * lam_dot * st) * sp;
  w.z = -td * st * sl - cl1 * pd * st * st + kPi * lam_dot * ct;
  return w;
}

Operator ie_h(const IEParams& p, double lam, double lam_dot) {
  const Vec3 w = ie_field(p, lam, lam_dot);
  return 0.5 * (w.x * sigma_x() + w.y * sigma_y() + w.z * sigma_z());
}

Operator ie_h(const IEParams& p, double t, const RampProfile& profile) {
  return ie_h(p, profile.lambda(t), profile.lambda_dot(t));
}

// --- controlled-Z ------------------------------------------------------------

Operator cz_block_projector(bool phase_block) {
  const Operator p11 = Operator::outer(basis_ket(4, 3));
  return phase_block ? p11 : Operator::identity(4) - p11;
}

Operator cz_aux_h(double lam) {
  return tensor(cz_block_projector(false), aux_drive_h(0.0, lam)) +
         tensor(cz_block_projector(true), aux_drive_h(kPi, lam));
}

Operator cz_ie_h(const RampProfile& profile, double t) {
  const double scale = kPi * profile.lambda_dot(t) / 4.0;
  return scale * (tensor(identity2(), sigma_z()) +
                  tensor(sigma_z(), identity2()) -
                  tensor(sigma_z(), sigma_z()));
}

Operator controlled_z() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return Operator(m);
}

// --- protocols ---------------------------------------------------------------

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kUncontrolled:
      return "uncontrolled";
    case ProtocolKind::kCounterdiabatic:
      return "cd";
    case ProtocolKind::kFloquet:
      return "fe";
    case ProtocolKind::kInverseEngineered:
      return "ie";
  }
  return "?";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  for (auto k : {ProtocolKind::kUncontrolled, ProtocolKind::kCounterdiabatic,
                 ProtocolKind::kFloquet, ProtocolKind::kInverseEngineered}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown protocol '" + std::string(name) +
                        "' (expected uncontrolled|cd|fe|ie)",
                    "protocol");
}

GateProtocol::GateProtocol(ProtocolKind kind, RampProfile profile,
                           Layout layout, Operator target, HamiltonianFn h,
                           std::optional<FloquetParams> floquet,
                           AuxStart aux_start)
    : kind_(kind),
      profile_(profile),
      layout_(std::move(layout)),
      target_(std::move(target)),
      h_(std::move(h)),
      floquet_(floquet),
      aux_start_(aux_start) {}

int GateProtocol::dim() const {
  int d = 1;
  for (int f : layout_.dims) d *= f;
  return d;
}

int GateProtocol::register_dim() const {
  return 1 << layout_.computational.size();
}

GateProtocol build_protocol(ProtocolKind kind, const GateTarget& gate,
                            const RampProfile& profile,
                            const ProtocolOptions& opts) {
  const bool is_cz = std::holds_alternative<ControlledZ>(gate);
  const std::size_t n_reg = is_cz ? 2 : 1;

  if (kind == ProtocolKind::kInverseEngineered) {
    GateProtocol::Layout layout;
    layout.dims.assign(n_reg, 2);
    for (std::size_t s = 0; s < n_reg; ++s) {
      layout.computational.push_back(s);
      layout.driven.push_back(s);
    }
    GateProtocol::HamiltonianFn h;
    if (is_cz) {
      h = [profile](double t) { return cz_ie_h(profile, t); };
    } else {
      const IEParams p = IEParams::for_gate(std::get<GateSpec>(gate));
      h = [profile, p](double t) { return ie_h(p, t, profile); };
    }
    return GateProtocol(kind, profile, std::move(layout), target_of(gate),
                        std::move(h), std::nullopt, AuxStart::kGround);
  }

  if (kind == ProtocolKind::kFloquet && !opts.floquet) {
    throw ConfigError("Floquet protocol requires Floquet parameters", "ratio");
  }

  GateProtocol::Layout layout;
  layout.dims.assign(n_reg + 1, 2);
  for (std::size_t s = 0; s < n_reg; ++s) layout.computational.push_back(s);
  layout.auxiliary = n_reg;
  layout.driven.push_back(n_reg);

  const double theta_f =
      is_cz ? GateSpec::kThetaF : std::get<GateSpec>(gate).theta_f();
  std::vector<Block> blocks = blocks_for(gate);
  const GaugeRoute route = opts.gauge;
  const std::optional<FloquetParams> fp = opts.floquet;

  auto h = [kind, profile, blocks, theta_f, route, fp](double t) {
    const double lam = profile.lambda(t);
    std::vector<Operator> aux_terms;
    aux_terms.reserve(blocks.size());
    for (const Block& b : blocks) {
      switch (kind) {
        case ProtocolKind::kUncontrolled:
          aux_terms.push_back(aux_drive_h(b.phase, lam, theta_f));
          break;
        case ProtocolKind::kCounterdiabatic: {
          const Operator hb = aux_drive_h(b.phase, lam, theta_f);
          const Operator dhb = aux_drive_dh(b.phase, lam, theta_f);
          const Operator gauge =
              route == GaugeRoute::kSpectral
                  ? exact_gauge_potential(hb, dhb)
                  : nested_commutator_agp(hb, dhb, minimize_action(hb, dhb, 1));
          aux_terms.push_back(hb + profile.lambda_dot(t) * gauge);
          break;
        }
        case ProtocolKind::kFloquet: {
          const Operator hb = aux_drive_h(b.phase, lam, theta_f);
          const Operator dhb = aux_drive_dh(b.phase, lam, theta_f);
          aux_terms.push_back(floquet_h(b.phase, t, profile, *fp,
                                        minimize_action(hb, dhb, 1), theta_f));
          break;
        }
        case ProtocolKind::kInverseEngineered:
          break;
      }
    }
    return embed_blocks(blocks, aux_terms);
  };

  return GateProtocol(kind, profile, std::move(layout), target_of(gate),
                      std::move(h),
                      kind == ProtocolKind::kFloquet ? fp : std::nullopt,
                      aux_start_of(gate));
}

}  // namespace qcg
