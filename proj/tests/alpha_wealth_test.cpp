// Copyright 2026 The Authors.
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rai/alpha_wealth.hpp"

namespace rai {
namespace {

TEST(PassParameters, FirstPassAtLargeN) {
  const PassLevel l = pass_parameters(2000, 1);
  EXPECT_NEAR(l.tlvl, 31.6228, 1e-4);
  EXPECT_LT(l.alpha, 1e-100);
  EXPECT_GE(l.alpha, kMinAlpha);
}

TEST(PassParameters, FivePercentQuantile) {
  EXPECT_NEAR(two_sided_normal_tail(1.959964), 0.05, 1e-7);
  // sqrt(n) 2^(-s/2) = 1.959964 with s = 2 and n = 4 * 1.959964^2.
  EXPECT_NEAR(two_sided_normal_tail(std::sqrt(4 * 1.959964 * 1.959964) * 0.5), 0.05, 1e-7);
}

TEST(PassParameters, TwoPassesHalveThreshold) {
  for (int s = 1; s < 12; ++s) {
    EXPECT_NEAR(pass_parameters(777, s + 2).tlvl, pass_parameters(777, s).tlvl / 2, 1e-12);
  }
}

TEST(PassParameters, AlphaIncreasesWithPass) {
  for (int s = 1; s < 20; ++s) EXPECT_LE(pass_parameters(500, s).alpha, pass_parameters(500, s + 1).alpha);
}

TEST(PassParameters, RejectsBadArguments) {
  EXPECT_THROW(pass_parameters(0, 1), Error);
  EXPECT_THROW(pass_parameters(10, 0), Error);
}

TEST(TailProbability, MatchesKnownValues) {
  EXPECT_NEAR(two_sided_normal_tail(0.0), 1.0, 1e-15);
  EXPECT_NEAR(two_sided_normal_tail(1.0), 0.31731050786291415, 1e-15);
  EXPECT_NEAR(two_sided_normal_tail(3.0) / 0.0026997960632601866, 1.0, 1e-12);
  // Far tail keeps relative precision: 2 Phi(-10) = 1.523970604832e-23.
  EXPECT_NEAR(two_sided_normal_tail(10.0) / 1.5239706048320e-23, 1.0, 1e-10);
  EXPECT_EQ(two_sided_normal_tail(100.0), kMinAlpha);
}

TEST(WealthLedger, Spend) {
  WealthLedger w;
  w.spend(0.01, 0);
  EXPECT_NEAR(w.wealth(), 0.24, 1e-15);
  WealthLedger poor(0.005);
  try {
    poor.spend(0.01, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientWealth);
  }
  EXPECT_EQ(poor.wealth(), 0.005);
  EXPECT_TRUE(poor.events().empty());
  WealthLedger two;
  two.spend(0.1, 0);
  two.spend(0.1, 1);
  EXPECT_NEAR(two.wealth(), 0.05, 1e-15);
}

TEST(WealthLedger, Earn) {
  WealthLedger w;
  w.spend(0.01, 3);
  w.earn(3);
  EXPECT_NEAR(w.wealth(), 0.29, 1e-15);
  EXPECT_EQ(w.rejections(), 1u);
  w.spend(0.01, 4);
  EXPECT_NEAR(w.wealth(), 0.28, 1e-15);
  EXPECT_THROW(w.earn(3), Error);  // not the latest test
  w.earn(4);
  EXPECT_THROW(w.earn(4), Error);  // already rejected
}

TEST(WealthLedger, SkippedChargesCannotEarn) {
  WealthLedger w;
  w.spend(0.01, 1, 2, true);
  EXPECT_THROW(w.earn(1), Error);
}

TEST(WealthLedger, RejectsNonPositiveParameters) {
  EXPECT_THROW(WealthLedger(0.0), Error);
  EXPECT_THROW(WealthLedger(0.25, -1.0), Error);
}

TEST(WealthLedger, IdentityOverRandomSequences) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    WealthLedger w(0.25, 0.05);
    double spent = 0.0;
    std::size_t k = 0;
    for (std::size_t id = 0; id < 100; ++id) {
      const double alpha = 0.02 * unif(rng);
      if (!w.can_afford(alpha)) break;
      w.spend(alpha, id);
      spent += alpha;
      if (unif(rng) < 0.2) {
        w.earn(id);
        ++k;
      }
      ASSERT_GE(w.wealth(), 0.0);
    }
    EXPECT_NEAR(w.wealth(), 0.25 - spent + 0.05 * static_cast<double>(k), 1e-12);
    EXPECT_NEAR(w.replay(), w.wealth(), 1e-12);
    EXPECT_NEAR(w.total_spent(), spent, 1e-12);
    EXPECT_EQ(w.rejections(), k);
  }
}

TEST(Mfdr, Estimate) {
  EXPECT_EQ(mfdr_estimate({0, 17, 10}), 0.0);
  EXPECT_NEAR(mfdr_estimate({100, 100, 100}), 0.5, 1e-15);
  MfdrCounts a{1, 2, 3};
  a += MfdrCounts{4, 5, 6};
  EXPECT_EQ(a.false_rejections, 5u);
  EXPECT_EQ(a.rejections, 7u);
  EXPECT_EQ(a.replications, 9u);
  EXPECT_THROW(mfdr_estimate({}), Error);
}

}  // namespace
}  // namespace rai
