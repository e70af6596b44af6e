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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcg/errors.hpp"

namespace qcg {
namespace {

using std::numbers::pi;

class RampKindTest : public ::testing::TestWithParam<RampKind> {};

TEST_P(RampKindTest, Endpoints) {
  for (double tau : {0.01, 1.0, 7.5}) {
    const RampProfile r(GetParam(), tau);
    EXPECT_EQ(r.lambda(0.0), 0.0);
    EXPECT_NEAR(r.lambda(tau), 1.0, 1e-15);
  }
}

TEST_P(RampKindTest, MonotoneOnGrid) {
  const RampProfile r(GetParam(), 2.0);
  double prev = r.lambda(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double cur = r.lambda(2.0 * k / 1000);
    EXPECT_GE(cur, prev);
    prev = cur;
  }
}

TEST_P(RampKindTest, DerivativeMatchesFiniteDifference) {
  const double tau = 3.0;
  const RampProfile r(GetParam(), tau);
  const double h = 1e-5 * tau;
  for (int k = 1; k <= 100; ++k) {
    const double t = tau * k / 101.0;
    const double fd = (r.lambda(t + h) - r.lambda(t - h)) / (2 * h);
    EXPECT_LT(std::abs(fd - r.lambda_dot(t)), 1e-6) << "t = " << t;
  }
}

TEST_P(RampKindTest, RejectsNegativeTime) {
  const RampProfile r(GetParam(), 1.0);
  EXPECT_THROW(r.lambda(-0.1), std::invalid_argument);
  EXPECT_THROW(r.lambda_dot(-0.1), std::invalid_argument);
}

TEST_P(RampKindTest, NameRoundTrip) {
  EXPECT_EQ(parse_ramp_kind(to_string(GetParam())), GetParam());
}

INSTANTIATE_TEST_SUITE_P(AllKinds, RampKindTest,
                         ::testing::ValuesIn(kAllRampKinds),
                         [](const auto& info) {
                           return std::string(to_string(info.param));
                         });

TEST(RampTest, MidpointValues) {
  const double tau = 4.0;
  EXPECT_NEAR(RampProfile(RampKind::kLinear, tau).lambda(tau / 2), 0.5, 1e-15);
  EXPECT_NEAR(RampProfile(RampKind::kPolynomial, tau).lambda(tau / 2), 0.5,
              1e-15);
  EXPECT_NEAR(RampProfile(RampKind::kSinusoidal, tau).lambda(tau / 2),
              std::sqrt(2.0) / 2, 1e-15);
}

TEST(RampTest, Rates) {
  const double tau = 2.5;
  const RampProfile lin(RampKind::kLinear, tau);
  for (double t : {0.0, 0.3, 2.5, 3.0}) EXPECT_DOUBLE_EQ(lin.lambda_dot(t), 1 / tau);
  const RampProfile poly(RampKind::kPolynomial, tau);
  EXPECT_EQ(poly.lambda_dot(0.0), 0.0);
  EXPECT_NEAR(poly.lambda_dot(tau), 0.0, 1e-15);
  const RampProfile sine(RampKind::kSinusoidal, tau);
  EXPECT_NEAR(sine.lambda_dot(0.0), pi / (2 * tau), 1e-15);
  EXPECT_NEAR(sine.lambda_dot(tau), 0.0, 1e-15);
}

TEST(RampTest, OvershootUsesAnalyticExtension) {
  const double tau = 1.0;
  EXPECT_NEAR(RampProfile(RampKind::kLinear, tau).lambda(1.2), 1.2, 1e-15);
  // 10 s^3 - 15 s^4 + 6 s^5 at s = 1.2
  EXPECT_NEAR(RampProfile(RampKind::kPolynomial, tau).lambda(1.2), 1.10592,
              1e-12);
  EXPECT_NEAR(RampProfile(RampKind::kSinusoidal, tau).lambda(1.2),
              std::sin(0.6 * pi), 1e-15);
}

TEST(RampTest, RejectsBadDuration) {
  EXPECT_THROW(RampProfile(RampKind::kLinear, 0.0), std::invalid_argument);
  EXPECT_THROW(RampProfile(RampKind::kLinear, -1.0), std::invalid_argument);
  EXPECT_THROW(RampProfile(RampKind::kLinear, std::nan("")),
               std::invalid_argument);
}

TEST(RampTest, UnknownNameListsChoices) {
  try {
    parse_ramp_kind("cubic");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "ramp");
    EXPECT_NE(std::string(e.what()).find("linear|polynomial|sinusoidal"),
              std::string::npos);
  }
}

TEST(TimingErrorTest, EffectiveDuration) {
  const RampProfile r(RampKind::kLinear, 2.0);
  EXPECT_DOUBLE_EQ(effective_duration(r, TimingError(0.0, TimingSign::kOvershoot)), 2.0);
  EXPECT_DOUBLE_EQ(effective_duration(r, TimingError(0.2, TimingSign::kOvershoot)), 2.4);
  EXPECT_DOUBLE_EQ(effective_duration(r, TimingError(0.2, TimingSign::kUndershoot)), 1.6);
}

TEST(TimingErrorTest, EpsilonRange) {
  EXPECT_THROW(TimingError(-0.01, TimingSign::kOvershoot), std::invalid_argument);
  EXPECT_THROW(TimingError(0.51, TimingSign::kUndershoot), std::invalid_argument);
  EXPECT_NO_THROW(TimingError(0.5, TimingSign::kUndershoot));
}

}  // namespace
}  // namespace qcg
