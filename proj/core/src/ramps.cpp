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

#include "qcg/ramps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcg/errors.hpp"

namespace qcg {
namespace {

void require_time(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "ramp evaluated at negative time " << t;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

std::string_view to_string(RampKind kind) {
  switch (kind) {
    case RampKind::kLinear:
      return "linear";
    case RampKind::kPolynomial:
      return "polynomial";
    case RampKind::kSinusoidal:
      return "sinusoidal";
  }
  return "?";
}

RampKind parse_ramp_kind(std::string_view name) {
  for (RampKind k : kAllRampKinds) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown ramp '" + std::string(name) +
                        "' (expected linear|polynomial|sinusoidal)",
                    "ramp");
}

RampProfile::RampProfile(RampKind kind, double tau) : kind_(kind), tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("RampProfile: tau must be positive and finite");
  }
}

double RampProfile::lambda(double t) const {
  require_time(t);
  const double s = t / tau_;
  switch (kind_) {
    case RampKind::kLinear:
      return s;
    case RampKind::kPolynomial:
      return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    case RampKind::kSinusoidal:
      return std::sin(std::numbers::pi * s / 2.0);
  }
  return 0.0;
}

double RampProfile::lambda_dot(double t) const {
  require_time(t);
  const double s = t / tau_;
  switch (kind_) {
    case RampKind::kLinear:
      return 1.0 / tau_;
    case RampKind::kPolynomial:
      return 30.0 * s * s * (1.0 - s) * (1.0 - s) / tau_;
    case RampKind::kSinusoidal:
      return std::numbers::pi / (2.0 * tau_) *
             std::cos(std::numbers::pi * s / 2.0);
  }
  return 0.0;
}

std::string_view to_string(TimingSign sign) {
  return sign == TimingSign::kOvershoot ? "overshoot" : "undershoot";
}

TimingError::TimingError(double eps, TimingSign s) : epsilon(eps), sign(s) {
  if (!(eps >= 0.0 && eps <= kMaxEpsilon)) {
    std::ostringstream msg;
    msg << "TimingError: epsilon " << eps << " outside [0, " << kMaxEpsilon
        << "]";
    throw std::invalid_argument(msg.str());
  }
}

double effective_duration(const RampProfile& profile, const TimingError& err) {
  return profile.tau() * (1.0 + static_cast<int>(err.sign) * err.epsilon);
}

}  // namespace qcg
