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
#include <string>
#include <string_view>

namespace qcg {

enum class RampKind { kLinear, kPolynomial, kSinusoidal };

inline constexpr std::array<RampKind, 3> kAllRampKinds = {
    RampKind::kLinear, RampKind::kPolynomial, RampKind::kSinusoidal};

std::string_view to_string(RampKind kind);
/// Accepts "linear" | "polynomial" | "sinusoidal"; throws ConfigError
/// listing the valid names otherwise.
RampKind parse_ramp_kind(std::string_view name);

/// Control schedule lambda(t) taking the drive parameter from 0 at t = 0 to
/// 1 at t = tau. Past tau the same closed form is used unclamped.
class RampProfile {
 public:
  RampProfile(RampKind kind, double tau);

  RampKind kind() const { return kind_; }
  double tau() const { return tau_; }

  double lambda(double t) const;
  double lambda_dot(double t) const;

 private:
  RampKind kind_;
  double tau_;
};

enum class TimingSign : int { kUndershoot = -1, kOvershoot = +1 };

std::string_view to_string(TimingSign sign);

/// Fractional over- or under-shoot of the drive duration.
struct TimingError {
  static constexpr double kMaxEpsilon = 0.5;

  TimingError() = default;
  TimingError(double epsilon, TimingSign sign);

  double epsilon = 0.0;
  TimingSign sign = TimingSign::kOvershoot;
};

/// tau * (1 + sign * epsilon).
double effective_duration(const RampProfile& profile, const TimingError& err);

}  // namespace qcg
