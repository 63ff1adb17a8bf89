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

#pragma once

// Revisiting alpha-investing selection loop.
//
// Passes s = 1, 2, ... test every remaining candidate at tlvl = sqrt(n) 2^(-s/2),
// charging alpha_s = 2 Phi(-tlvl) per test. A candidate whose |t| strictly
// exceeds tlvl enters the model immediately; the residual is updated and the
// pass continues at the same level. Selection ends when the wealth cannot pay
// for the next test, the stream empties, or max_passes is exceeded.
//
// After a pass with no rejections every remaining |t| is known and stays
// fixed, so the engine may jump straight to the first pass where one of them
// clears the threshold. Every skipped test is still charged, so the final
// model and wealth match a run without skipping.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rai/alpha_wealth.hpp"
#include "rai/error.hpp"
#include "rai/interactions.hpp"
#include "rai/regression.hpp"

namespace rai {

struct RaiConfig {
  double initial_wealth = kDefaultInitialWealth;
  double payout = kDefaultPayout;
  std::optional<int> max_passes;  // default ceil(log2 n) + 2
  double collinearity_tol = kCollinearityTol;
  bool interactions = false;
  std::optional<unsigned> max_interaction_order;  // unbounded by default
  std::uint64_t seed = 0;
  bool skip_passes = true;

  int resolved_max_passes(std::size_t n) const {
    if (max_passes) return *max_passes;
    return static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 1))))) + 2;
  }

  void validate() const {
    if (!(initial_wealth > 0.0)) throw Error(ErrorCode::kInvalidInput, "initial_wealth must be positive");
    if (!(payout > 0.0)) throw Error(ErrorCode::kInvalidInput, "payout must be positive");
    if (max_passes && *max_passes < 1) throw Error(ErrorCode::kInvalidInput, "max_passes must be >= 1");
    if (max_interaction_order && *max_interaction_order < 1) {
      throw Error(ErrorCode::kInvalidInput, "max_interaction_order must be >= 1");
    }
  }
};

enum class Decision { kRejected, kNotRejected, kRemovedCollinear, kHaltedWealth };
enum class Termination { kWealthExhausted, kMaxPasses, kStreamExhausted };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::kRejected: return "rejected";
    case Decision::kNotRejected: return "not_rejected";
    case Decision::kRemovedCollinear: return "removed_collinear";
    case Decision::kHaltedWealth: return "halted_wealth";
  }
  return "?";
}

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kWealthExhausted: return "wealth_exhausted";
    case Termination::kMaxPasses: return "max_passes";
    case Termination::kStreamExhausted: return "stream_exhausted";
  }
  return "?";
}

struct TestRecord {
  int pass = 0;
  std::size_t term_id = 0;
  double abs_t = 0.0;
  double tlvl = 0.0;
  double alpha = 0.0;  // zero when nothing was charged
  double wealth_before = 0.0;
  double wealth_after = 0.0;
  Decision decision = Decision::kNotRejected;
};

struct SkipRecord {
  int from_pass = 0;  // last pass actually tested
  int to_pass = 0;    // pass testing resumes at (may exceed max_passes)
  std::size_t tests_charged = 0;
  double alpha_charged = 0.0;
};

struct SelectionTrace {
  std::vector<TestRecord> tests;
  std::vector<SkipRecord> skips;
  Termination termination = Termination::kStreamExhausted;
  // Highest pass index reached, skipped passes included.
  int passes_traversed = 0;
  // Wall time of each tested pass, indexed in order of execution.
  std::vector<std::pair<int, double>> pass_seconds;

  std::optional<int> first_rejection_pass() const {
    for (const TestRecord& r : tests) {
      if (r.decision == Decision::kRejected) return r.pass;
    }
    return std::nullopt;
  }
};

// Every term that has ever entered the candidate stream, addressed by id.
// Marginal feature j has id j; generated terms follow in creation order.
class TermPool {
 public:
  explicit TermPool(const Dataset& data) : data_(&data) {
    for (std::size_t j = 0; j < data.p; ++j) {
      terms_.push_back(FeatureTerm::marginal(j));
      generated_.emplace_back();
    }
  }

  std::size_t add(FeatureTerm term, StandardizedColumn column) {
    terms_.push_back(std::move(term));
    generated_.emplace_back(std::move(column));
    return terms_.size() - 1;
  }

  std::size_t size() const { return terms_.size(); }
  const FeatureTerm& term(std::size_t id) const { return terms_.at(id); }

  std::span<const double> column(std::size_t id) const {
    if (id < data_->p) return data_->columns[id];
    return generated_.at(id)->values;
  }
  double raw_mean(std::size_t id) const { return id < data_->p ? data_->raw_means[id] : generated_.at(id)->mean; }
  double raw_scale(std::size_t id) const { return id < data_->p ? data_->raw_scales[id] : generated_.at(id)->scale; }
  const Dataset& dataset() const { return *data_; }

 private:
  const Dataset* data_;
  std::vector<FeatureTerm> terms_;
  std::vector<std::optional<StandardizedColumn>> generated_;
};

// Called after each rejection with the selected terms (newest last).
using CandidateGenerator =
    std::function<std::vector<FeatureTerm>(const std::vector<FeatureTerm>& selected, const FeatureTerm& newly_added)>;

inline CandidateGenerator interaction_generator(std::optional<unsigned> max_order = std::nullopt) {
  return [max_order](const std::vector<FeatureTerm>& selected, const FeatureTerm& newly_added) {
    return generate_candidates(selected, newly_added, {}, max_order);
  };
}

struct TestOutcome {
  Decision decision = Decision::kNotRejected;
  double abs_t = 0.0;
  CandidateStats stats;  // valid for kRejected / kNotRejected
};

// One test of one candidate. The wealth gate precedes everything; a
// collinear candidate is removed without charge; otherwise alpha is spent
// before |t| is compared (strictly) against tlvl.
inline TestOutcome test_candidate(const ModelState& state, WealthLedger& ledger, std::span<const double> column,
                                  std::size_t test_id, const PassLevel& level, int pass) {
  TestOutcome out;
  if (!ledger.can_afford(level.alpha)) {
    out.decision = Decision::kHaltedWealth;
    return out;
  }
  out.stats = state.evaluate(column);
  if (out.stats.collinear) {
    out.decision = Decision::kRemovedCollinear;
    return out;
  }
  ledger.spend(level.alpha, test_id, pass);
  out.abs_t = std::abs(state.t_from_rho(out.stats.rho));
  if (out.abs_t > level.tlvl) {
    ledger.earn(test_id);
    out.decision = Decision::kRejected;
  } else {
    out.decision = Decision::kNotRejected;
  }
  return out;
}

// Smallest pass u > current with |t| > sqrt(n) 2^(-u/2); nullopt if |t| = 0.
inline std::optional<int> first_passing_pass(double abs_t, std::size_t n, int current, int cap) {
  if (!(abs_t > 0.0)) return std::nullopt;
  long u = current + 1;
  if (abs_t < kPerfectFitT) {
    const double guess = std::floor(2.0 * std::log2(std::sqrt(static_cast<double>(n)) / abs_t)) + 1.0;
    u = std::clamp<long>(static_cast<long>(std::max(guess, -1.0)), current + 1, cap);
  }
  // Settle on the exact levels the engine uses.
  while (u < cap && !(abs_t > pass_parameters(n, static_cast<int>(u)).tlvl)) ++u;
  while (u - 1 > current && abs_t > pass_parameters(n, static_cast<int>(u - 1)).tlvl) --u;
  return static_cast<int>(u);
}

struct SkipOutcome {
  int next_pass = 0;         // pass to resume testing at
  bool wealth_exhausted = false;
  int reached_pass = 0;      // last pass charged (or current when nothing skipped)
  SkipRecord record;
};

// Jumps over passes in which none of the known statistics can clear the
// threshold, charging alpha_u for each remaining candidate on every skipped
// pass u exactly as a full test would be charged.
inline SkipOutcome skip_passes(std::span<const double> known_abs_t, std::span<const std::size_t> ids,
                               WealthLedger& ledger, int current_pass, std::size_t n, int max_passes) {
  const int cap = max_passes + 1;
  std::optional<int> target;
  for (double t : known_abs_t) {
    auto u = first_passing_pass(t, n, current_pass, cap);
    if (u && (!target || *u < *target)) target = u;
  }
  if (!target) throw Error(ErrorCode::kNoFinitePass, "every remaining |t| is zero");

  SkipOutcome out;
  out.next_pass = *target;
  out.reached_pass = current_pass;
  out.record.from_pass = current_pass;
  out.record.to_pass = *target;
  const int last_skipped = std::min(*target, cap) - 1;
  for (int u = current_pass + 1; u <= last_skipped; ++u) {
    const PassLevel level = pass_parameters(n, u);
    out.reached_pass = u;
    for (std::size_t id : ids) {
      if (!ledger.can_afford(level.alpha)) {
        out.wealth_exhausted = true;
        return out;
      }
      ledger.spend(level.alpha, id, u, /*skipped=*/true);
      ++out.record.tests_charged;
      out.record.alpha_charged += level.alpha;
      if (ledger.wealth() < level.alpha) {
        out.wealth_exhausted = true;
        return out;
      }
    }
  }
  return out;
}

struct RaiResult {
  ModelState model;  // selected ids index into pool
  SelectionTrace trace;
  WealthLedger ledger;
  TermPool pool;

  std::vector<FeatureTerm> selected_terms() const {
    std::vector<FeatureTerm> out;
    for (std::size_t id : model.selected()) out.push_back(pool.term(id));
    return out;
  }

  // Raw-scale OLS coefficients of the selected terms, in selection order.
  RawCoefficients coefficients() const {
    std::vector<std::span<const double>> cols;
    Vector means, scales;
    for (std::size_t id : model.selected()) {
      cols.push_back(pool.column(id));
      means.push_back(pool.raw_mean(id));
      scales.push_back(pool.raw_scale(id));
    }
    const Dataset& d = pool.dataset();
    const Vector beta = least_squares(cols, d.response, model.tolerance());
    return back_transform(model.selected(), beta, means, scales, d.response_mean, d.response_scale);
  }
};

// Predictions for new raw data. raw_columns are indexed like the training
// Dataset's surviving features.
inline Vector predict(const RaiResult& result, const std::vector<Vector>& raw_columns, std::size_t n) {
  const RawCoefficients coef = result.coefficients();
  Vector out(n, coef.intercept);
  for (std::size_t i = 0; i < coef.indices.size(); ++i) {
    const Vector x = raw_product(result.pool.term(coef.indices[i]), raw_columns);
    linalg::axpy(coef.slopes[i], x, out);
  }
  return out;
}

inline RaiResult run_rai(const Dataset& data, const RaiConfig& config, CandidateGenerator generator = {}) {
  config.validate();
  if (!generator && config.interactions) generator = interaction_generator(config.max_interaction_order);

  RaiResult res{ModelState(data, config.collinearity_tol), SelectionTrace{},
                WealthLedger(config.initial_wealth, config.payout), TermPool(data)};
  ModelState& state = res.model;
  WealthLedger& ledger = res.ledger;
  SelectionTrace& trace = res.trace;
  TermPool& pool = res.pool;

  const std::size_t n = data.n;
  const int max_passes = config.resolved_max_passes(n);

  std::vector<std::size_t> stream(data.p);
  for (std::size_t j = 0; j < data.p; ++j) stream[j] = j;
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < data.p; ++j) seen.insert(pool.term(j).key());
  std::vector<FeatureTerm> selected_terms;

  auto finish = [&](Termination why) {
    trace.termination = why;
    return std::move(res);
  };

  int pass = 1;
  std::vector<double> known_t;
  while (true) {
    if (stream.empty()) return finish(Termination::kStreamExhausted);
    if (pass > max_passes) return finish(Termination::kMaxPasses);
    trace.passes_traversed = pass;
    const PassLevel level = pass_parameters(n, pass);
    const auto started = std::chrono::steady_clock::now();
    auto record_time = [&] {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
      trace.pass_seconds.emplace_back(pass, dt.count());
    };

    std::size_t rejections = 0;
    known_t.clear();
    std::size_t cursor = 0;
    while (cursor < stream.size()) {
      if (state.degrees_of_freedom() < 1) {
        record_time();
        return finish(Termination::kStreamExhausted);
      }
      const std::size_t id = stream[cursor];
      const double before = ledger.wealth();
      TestOutcome t = test_candidate(state, ledger, pool.column(id), id, level, pass);
      const bool charged = t.decision == Decision::kRejected || t.decision == Decision::kNotRejected;
      trace.tests.push_back({pass, id, t.abs_t, level.tlvl, charged ? level.alpha : 0.0, before, ledger.wealth(),
                             t.decision});

      switch (t.decision) {
        case Decision::kHaltedWealth:
          record_time();
          return finish(Termination::kWealthExhausted);
        case Decision::kRemovedCollinear:
          stream.erase(stream.begin() + static_cast<std::ptrdiff_t>(cursor));
          continue;
        case Decision::kNotRejected:
          known_t.push_back(t.abs_t);
          ++cursor;
          break;
        case Decision::kRejected: {
          stream.erase(stream.begin() + static_cast<std::ptrdiff_t>(cursor));
          state.add(std::move(t.stats), id);
          selected_terms.push_back(pool.term(id));
          ++rejections;
          if (generator) {
            for (FeatureTerm& term : generator(selected_terms, selected_terms.back())) {
              if (!seen.insert(term.key()).second) continue;
              try {
                StandardizedColumn col = realize(term, data);
                stream.push_back(pool.add(std::move(term), std::move(col)));
              } catch (const Error& e) {
                if (e.code() != ErrorCode::kConstantInteraction) throw;
              }
            }
          }
          break;
        }
      }
      if (ledger.wealth() < level.alpha) {
        record_time();
        return finish(Termination::kWealthExhausted);
      }
    }
    record_time();

    if (config.skip_passes && rejections == 0 && !stream.empty() && pass < max_passes) {
      SkipOutcome skip;
      try {
        skip = skip_passes(known_t, stream, ledger, pass, n, max_passes);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoFinitePass) throw;
        return finish(Termination::kStreamExhausted);
      }
      if (skip.record.tests_charged > 0) trace.skips.push_back(skip.record);
      trace.passes_traversed = std::max(trace.passes_traversed, skip.reached_pass);
      if (skip.wealth_exhausted) return finish(Termination::kWealthExhausted);
      pass = skip.next_pass;
    } else {
      ++pass;
    }
  }
}

}  // namespace rai
