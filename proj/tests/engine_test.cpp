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

#include "oracles.hpp"
#include "rai/engine.hpp"

namespace rai {
namespace {

struct Instance {
  std::vector<Vector> cols;
  Vector y;
};

// Sparse linear signal plus optional product term, correlated design.
Instance make_instance(std::uint64_t seed, std::size_t n, std::size_t p, bool product) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Instance in;
  in.cols = oracle::random_columns(rng, n, p, unif(rng));
  for (auto& c : in.cols) {
    const double shift = 2.0 * (unif(rng) - 0.5) * 3.0;
    for (double& v : c) v += shift;
  }
  std::vector<double> coef(p, 0.0);
  const std::size_t active = 1 + rng() % 4;
  for (std::size_t a = 0; a < active; ++a) coef[rng() % p] = (unif(rng) < 0.5 ? -1 : 1) * (0.1 + unif(rng));
  in.y = oracle::random_response(rng, in.cols, coef);
  if (product) {
    for (std::size_t i = 0; i < n; ++i) in.y[i] += 0.4 * in.cols[0][i] * in.cols[1][i];
  }
  return in;
}

std::vector<std::string> selected_keys(const RaiResult& r) {
  std::vector<std::string> out;
  for (const auto& t : r.selected_terms()) out.push_back(t.key());
  return out;
}

TEST(RunRai, ExactFitSelectedOnFirstPass) {
  const Vector x{1, 3, 2, 7, 5, 4, 6, 9};
  const Dataset d = standardize({x}, x);
  const RaiResult r = run_rai(d, RaiConfig{});
  ASSERT_EQ(r.model.selected(), std::vector<std::size_t>{0});
  EXPECT_EQ(r.trace.first_rejection_pass(), 1);
  EXPECT_NEAR(r.model.r_squared(), 1.0, 1e-12);
  EXPECT_EQ(r.trace.tests.front().decision, Decision::kRejected);
}

TEST(TestCandidate, ThresholdIsStrict) {
  const Instance in = make_instance(5, 60, 3, false);
  const Dataset d = standardize(in.cols, in.y);
  const ModelState s(d);
  const double t = std::abs(s.t_statistic(std::size_t{1}));
  WealthLedger ledger;
  const TestOutcome at = test_candidate(s, ledger, d.columns[1], 1, PassLevel{t, 0.01}, 1);
  EXPECT_EQ(at.decision, Decision::kNotRejected);
  EXPECT_NEAR(ledger.wealth(), 0.24, 1e-15);
  const TestOutcome below = test_candidate(s, ledger, d.columns[1], 1, PassLevel{std::nextafter(t, 0.0), 0.01}, 1);
  EXPECT_EQ(below.decision, Decision::kRejected);
  EXPECT_NEAR(ledger.wealth(), 0.28, 1e-15);
}

TEST(TestCandidate, WealthGateRecordsNothing) {
  const Instance in = make_instance(6, 40, 2, false);
  const Dataset d = standardize(in.cols, in.y);
  const ModelState s(d);
  WealthLedger ledger(0.001);
  const TestOutcome o = test_candidate(s, ledger, d.columns[0], 0, PassLevel{0.0, 0.01}, 1);
  EXPECT_EQ(o.decision, Decision::kHaltedWealth);
  EXPECT_TRUE(ledger.events().empty());
  EXPECT_EQ(ledger.wealth(), 0.001);
}

TEST(TestCandidate, CollinearIsFree) {
  const Instance in = make_instance(7, 40, 3, false);
  const Dataset d = standardize(in.cols, in.y);
  ModelState s(d);
  s.add_feature(0);
  WealthLedger ledger;
  const TestOutcome o = test_candidate(s, ledger, d.columns[0], 0, PassLevel{0.0, 0.01}, 1);
  EXPECT_EQ(o.decision, Decision::kRemovedCollinear);
  EXPECT_TRUE(ledger.events().empty());
}

TEST(RunRai, DuplicateColumnRemovedAsCollinear) {
  const Instance in = make_instance(8, 80, 3, false);
  auto cols = in.cols;
  cols.push_back(cols[0]);
  Vector y = in.y;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += 3.0 * cols[0][i];
  const RaiResult r = run_rai(standardize(cols, y), RaiConfig{});
  ASSERT_FALSE(r.model.selected().empty());
  EXPECT_EQ(r.model.selected().front(), 0u);
  bool removed = false;
  for (const auto& t : r.trace.tests) removed = removed || (t.term_id == 3 && t.decision == Decision::kRemovedCollinear);
  EXPECT_TRUE(removed);
}

TEST(FirstPassingPass, SolvesThresholdInequality) {
  const std::size_t n = 500;
  const double t = std::sqrt(500.0) * std::exp2(-2.5) * 1.01;
  EXPECT_EQ(first_passing_pass(t, n, 1, 100), 5);
  EXPECT_EQ(first_passing_pass(0.0, n, 1, 100), std::nullopt);
  EXPECT_EQ(first_passing_pass(kPerfectFitT, n, 3, 100), 4);
  // Exactly at a threshold the strict comparison pushes to the next pass.
  EXPECT_EQ(first_passing_pass(pass_parameters(n, 6).tlvl, n, 1, 100), 7);
  // Capped.
  EXPECT_EQ(first_passing_pass(1e-6, n, 1, 12), 12);
}

TEST(SkipPasses, AllZeroIsNoFinitePass) {
  WealthLedger ledger;
  const std::vector<double> t{0.0, 0.0};
  const std::vector<std::size_t> ids{0, 1};
  try {
    skip_passes(t, ids, ledger, 1, 100, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFinitePass);
  }
}

TEST(SkipPasses, ChargesEverySkippedTest) {
  WealthLedger ledger;
  const std::size_t n = 400;
  const std::vector<double> t{std::sqrt(400.0) * std::exp2(-2.0) * 1.01, 0.5};
  const std::vector<std::size_t> ids{3, 9};
  const SkipOutcome o = skip_passes(t, ids, ledger, 1, n, 20);
  EXPECT_EQ(o.next_pass, 4);
  EXPECT_EQ(o.record.tests_charged, 4u);
  const double expect = 2 * (pass_parameters(n, 2).alpha + pass_parameters(n, 3).alpha);
  EXPECT_NEAR(o.record.alpha_charged, expect, 1e-15);
  EXPECT_NEAR(ledger.wealth(), 0.25 - expect, 1e-15);
  for (const auto& e : ledger.events()) EXPECT_TRUE(e.skipped);
}

TEST(RunRai, SkippingMatchesFullExecution) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance in = make_instance(1000 + seed, 40 + seed * 7, 5 + seed % 20, seed % 3 == 0);
    const Dataset d = standardize(in.cols, in.y);
    RaiConfig on;
    on.interactions = seed % 2 == 0;
    RaiConfig off = on;
    off.skip_passes = false;
    const RaiResult a = run_rai(d, on);
    const RaiResult b = run_rai(d, off);
    EXPECT_EQ(selected_keys(a), selected_keys(b)) << "seed " << seed;
    EXPECT_NEAR(a.ledger.wealth(), b.ledger.wealth(), 1e-12) << "seed " << seed;
    EXPECT_EQ(a.trace.termination, b.trace.termination) << "seed " << seed;
    EXPECT_EQ(a.ledger.events().size(), b.ledger.events().size()) << "seed " << seed;
  }
}

TEST(RunRai, Deterministic) {
  const Instance in = make_instance(77, 200, 30, true);
  const Dataset d = standardize(in.cols, in.y);
  RaiConfig c;
  c.interactions = true;
  const RaiResult a = run_rai(d, c);
  const RaiResult b = run_rai(d, c);
  EXPECT_EQ(selected_keys(a), selected_keys(b));
  ASSERT_EQ(a.trace.tests.size(), b.trace.tests.size());
  for (std::size_t i = 0; i < a.trace.tests.size(); ++i) {
    EXPECT_EQ(a.trace.tests[i].term_id, b.trace.tests[i].term_id);
    EXPECT_EQ(a.trace.tests[i].abs_t, b.trace.tests[i].abs_t);
    EXPECT_EQ(a.trace.tests[i].wealth_after, b.trace.tests[i].wealth_after);
  }
}

TEST(RunRai, LedgerAndTraceInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance in = make_instance(2000 + seed, 60 + 5 * seed, 8 + seed % 15, seed % 2 == 0);
    const Dataset d = standardize(in.cols, in.y);
    RaiConfig c;
    c.interactions = seed % 2 == 0;
    const RaiResult r = run_rai(d, c);
    EXPECT_LE(r.trace.passes_traversed, c.resolved_max_passes(d.n));
    EXPECT_NEAR(r.ledger.replay(), r.ledger.wealth(), 1e-12);
    EXPECT_NEAR(r.ledger.wealth(),
                c.initial_wealth - r.ledger.total_spent() + c.payout * static_cast<double>(r.ledger.rejections()),
                1e-12);
    EXPECT_GE(r.ledger.wealth(), 0.0);
    EXPECT_EQ(r.ledger.rejections(), r.model.size());
    int prev_pass = 0;
    for (const TestRecord& t : r.trace.tests) {
      EXPECT_GE(t.pass, prev_pass);
      prev_pass = t.pass;
      if (t.decision == Decision::kRejected) {
        EXPECT_GT(t.abs_t, t.tlvl);
        EXPECT_GE(t.wealth_before, t.alpha);
      }
      if (t.decision == Decision::kNotRejected) EXPECT_LE(t.abs_t, t.tlvl);
    }
  }
}

TEST(RunRai, FinalRSquaredMatchesOls) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance in = make_instance(3000 + seed, 150, 10, true);
    const Dataset d = standardize(in.cols, in.y);
    RaiConfig c;
    c.interactions = true;
    const RaiResult r = run_rai(d, c);
    std::vector<Vector> realized;
    std::vector<std::size_t> idx;
    for (const FeatureTerm& t : r.selected_terms()) {
      idx.push_back(realized.size());
      realized.push_back(raw_product(t, d.raw_columns));
    }
    if (idx.empty()) {
      EXPECT_EQ(r.model.r_squared(), 0.0);
      continue;
    }
    EXPECT_NEAR(r.model.r_squared(), oracle::ols(realized, idx, in.y).r_squared, 1e-9) << "seed " << seed;
  }
}

TEST(RunRai, PredictReproducesFittedValues) {
  const Instance in = make_instance(31, 120, 6, true);
  const Dataset d = standardize(in.cols, in.y);
  RaiConfig c;
  c.interactions = true;
  const RaiResult r = run_rai(d, c);
  const Vector yhat = predict(r, d.raw_columns, d.n);
  for (std::size_t i = 0; i < d.n; ++i) {
    const double fitted = (d.response[i] - r.model.residual()[i]) * d.response_scale + d.response_mean;
    EXPECT_NEAR(yhat[i], fitted, 1e-8 * std::max(1.0, std::abs(fitted)));
  }
}

TEST(RunRai, RecoversClearInteraction) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z(0.0, 1.0);
  const std::size_t n = 400, p = 20;
  std::vector<Vector> cols(p, Vector(n));
  for (std::size_t j = 0; j < p; ++j) {
    for (double& v : cols[j]) v = (j < 2 ? 3.0 : 0.0) + z(rng);
  }
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = cols[0][i] * cols[1][i] + z(rng);
  RaiConfig c;
  c.interactions = true;
  const RaiResult r = run_rai(standardize(cols, y), c);
  const auto keys = selected_keys(r);
  for (const std::string k : {"0:1", "1:1", "0:1,1:1"}) {
    EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
  }
}

TEST(RunRai, PureNoiseRarelySelects) {
  const auto cols = oracle::orthogonal_columns(7, 60);
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const Vector y = oracle::random_response(rng, cols, {});
    const RaiResult r = run_rai(standardize(cols, y), RaiConfig{});
    total += r.model.size();
    EXPECT_NE(r.trace.termination, Termination::kMaxPasses);
  }
  EXPECT_LE(total, 25u);
}

TEST(RunRai, CustomGeneratorIsUsed) {
  const Instance in = make_instance(41, 100, 5, false);
  Vector y = in.y;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += 5 * in.cols[2][i];
  std::size_t calls = 0;
  CandidateGenerator g = [&](const std::vector<FeatureTerm>&, const FeatureTerm&) {
    ++calls;
    return std::vector<FeatureTerm>{};
  };
  const RaiResult r = run_rai(standardize(in.cols, y), RaiConfig{}, g);
  EXPECT_EQ(calls, r.model.size());
  EXPECT_EQ(r.pool.size(), 5u);
}

TEST(RaiConfig, Validation) {
  RaiConfig c;
  EXPECT_EQ(c.resolved_max_passes(500), 11);
  EXPECT_EQ(c.resolved_max_passes(512), 11);
  EXPECT_EQ(c.resolved_max_passes(513), 12);
  c.initial_wealth = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = RaiConfig{};
  c.max_passes = 0;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace rai
