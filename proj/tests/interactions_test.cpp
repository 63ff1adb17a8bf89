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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rai/interactions.hpp"

namespace rai {
namespace {

std::vector<std::string> keys(const std::vector<FeatureTerm>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.key());
  std::sort(out.begin(), out.end());
  return out;
}

FeatureTerm X(std::size_t one_based) { return FeatureTerm::marginal(one_based - 1); }

TEST(FeatureTerm, KeyAndDisplay) {
  const FeatureTerm t = X(3) * X(4) * X(4);
  EXPECT_EQ(t.key(), "2:1,3:2");
  EXPECT_EQ(t.display(), "X3*X4^2");
  const std::vector<std::string> names{"a", "b", "c", "d"};
  EXPECT_EQ(t.display(names), "c*d^2");
  EXPECT_EQ(t.order(), 3u);
  EXPECT_FALSE(t.is_marginal());
  EXPECT_TRUE(X(2).is_marginal());
  EXPECT_EQ(FeatureTerm::from_key(t.key()), t);
  EXPECT_THROW(FeatureTerm::from_key("1-2"), Error);
  EXPECT_THROW(FeatureTerm({{1, 0u}}), Error);
}

TEST(FeatureTerm, ProductIsCommutative) {
  EXPECT_EQ(X(1) * X(2), X(2) * X(1));
  EXPECT_EQ((X(1) * X(2)) * X(3), X(1) * (X(2) * X(3)));
}

TEST(GenerateCandidates, SelfProduct) {
  EXPECT_EQ(keys(generate_candidates({X(1)}, X(1), {})), std::vector<std::string>{"0:2"});
}

TEST(GenerateCandidates, PairwiseInteraction) {
  const auto c = generate_candidates({X(1), X(2)}, X(2), {});
  EXPECT_EQ(keys(c), (std::vector<std::string>{"0:1,1:1", "1:2"}));
}

TEST(GenerateCandidates, FourWayTermReachable) {
  const std::vector<FeatureTerm> sel{X(7), X(8), X(7) * X(8), X(9), X(10), X(9) * X(10)};
  const auto c = generate_candidates(sel, X(9) * X(10), {});
  const FeatureTerm target = X(7) * X(8) * X(9) * X(10);
  EXPECT_NE(std::find(c.begin(), c.end(), target), c.end());
}

TEST(GenerateCandidates, SeenAndOrderCap) {
  const std::unordered_set<std::string> seen{(X(1) * X(2)).key()};
  EXPECT_EQ(keys(generate_candidates({X(1), X(2)}, X(2), seen)), std::vector<std::string>{"1:2"});
  const auto capped = generate_candidates({X(1), X(1) * X(2)}, X(1) * X(2), {}, 3u);
  EXPECT_EQ(keys(capped), std::vector<std::string>{"0:2,1:1"});
}

TEST(GenerateCandidates, NoDuplicateKeys) {
  std::mt19937_64 rng(1);
  std::vector<FeatureTerm> sel;
  std::unordered_set<std::string> seen;
  for (int step = 0; step < 12; ++step) {
    const FeatureTerm added = X(1 + rng() % 5) * (step % 3 == 0 ? X(1 + rng() % 5) : FeatureTerm::marginal(0));
    if (seen.contains(added.key())) continue;
    sel.push_back(added);
    seen.insert(added.key());
    const auto c = generate_candidates(sel, added, seen);
    for (const auto& t : c) {
      EXPECT_FALSE(seen.contains(t.key()));
      seen.insert(t.key());
    }
  }
}

TEST(Realize, MarginalMatchesStandardizedColumn) {
  std::mt19937_64 rng(3);
  const auto cols = oracle::random_columns(rng, 30, 3);
  const Dataset d = standardize(cols, oracle::random_response(rng, cols, {1, 0, 0}));
  const StandardizedColumn s = realize(X(2), d);
  for (std::size_t i = 0; i < d.n; ++i) EXPECT_NEAR(s.values[i], d.columns[1][i], 1e-15);
}

TEST(Realize, ConstantFactorCancels) {
  const std::vector<Vector> raw{{1, 2, 3}, {2, 2, 2}};
  EXPECT_EQ(raw_product(X(1) * X(2), raw), (Vector{2, 4, 6}));
  const StandardizedColumn a = realize(X(1) * X(2), raw);
  const StandardizedColumn b = realize(X(1), raw);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-15);
}

TEST(Realize, ProductMatchesEigen) {
  std::mt19937_64 rng(4);
  const auto cols = oracle::random_columns(rng, 40, 3);
  const FeatureTerm t = X(1) * X(2) * X(2);
  Eigen::VectorXd v = oracle::to_vector(cols[0]).array() * oracle::to_vector(cols[1]).array().square();
  v.array() -= v.mean();
  v /= v.norm();
  const StandardizedColumn s = realize(t, cols);
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_NEAR(s.values[static_cast<std::size_t>(i)], v(i), 1e-13);
}

TEST(Realize, ConstantProductThrows) {
  const std::vector<Vector> raw{{1, -1, 1, -1}};
  try {
    realize(X(1) * X(1), raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstantInteraction);
  }
}

}  // namespace
}  // namespace rai
