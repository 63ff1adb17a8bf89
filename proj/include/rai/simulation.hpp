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

// Simulation harness: polynomial-signal designs, a global-null design, the
// risk metric against the true mean, and an experiment runner that writes
// per-replication records plus an aggregate summary.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "rai/alpha_wealth.hpp"
#include "rai/engine.hpp"
#include "rai/error.hpp"
#include "rai/interactions.hpp"
#include "rai/oracle_bounds.hpp"
#include "rai/regression.hpp"

namespace rai {

inline constexpr std::string_view kCodeVersion = "0.1.0";

enum class Scenario { kPaperInteractions, kSingleInteraction, kGlobalNull };
enum class Method { kRai, kRaiInteractions, kStepwiseAic, kMeanModel, kTrueModel };

inline std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kPaperInteractions: return "paper_interactions";
    case Scenario::kSingleInteraction: return "single_interaction";
    case Scenario::kGlobalNull: return "global_null";
  }
  return "?";
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::kRai: return "rai";
    case Method::kRaiInteractions: return "rai_interactions";
    case Method::kStepwiseAic: return "stepwise_aic";
    case Method::kMeanModel: return "mean_model";
    case Method::kTrueModel: return "true_model";
  }
  return "?";
}

inline Scenario parse_scenario(std::string_view s) {
  for (Scenario v : {Scenario::kPaperInteractions, Scenario::kSingleInteraction, Scenario::kGlobalNull}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kParseError, "unknown scenario '" + std::string(s) + "'");
}

inline Method parse_method(std::string_view s) {
  for (Method v : {Method::kRai, Method::kRaiInteractions, Method::kStepwiseAic, Method::kMeanModel,
                   Method::kTrueModel}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kParseError, "unknown method '" + std::string(s) + "'");
}

struct SimSpec {
  std::size_t n = 500;
  std::size_t p = 50;
  Scenario scenario = Scenario::kSingleInteraction;
  double target_r2 = 0.83;
  std::size_t replications = 1;
  std::uint64_t seed = 1;

  void validate() const {
    if (n < 3) throw Error(ErrorCode::kInvalidInput, "n must be >= 3");
    if (p < 1) throw Error(ErrorCode::kInvalidInput, "p must be >= 1");
    if (!(target_r2 > 0.0 && target_r2 < 1.0)) throw Error(ErrorCode::kInvalidInput, "target_r2 must lie in (0, 1)");
    if (replications < 1) throw Error(ErrorCode::kInvalidInput, "replications must be >= 1");
    if (scenario == Scenario::kPaperInteractions && p < 10) {
      throw Error(ErrorCode::kInvalidInput, "paper_interactions needs p >= 10");
    }
    if (scenario == Scenario::kSingleInteraction && p < 2) {
      throw Error(ErrorCode::kInvalidInput, "single_interaction needs p >= 2");
    }
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Independent generator per (seed, replication, stream).
inline std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t rep, std::uint64_t stream) {
  std::seed_seq seq{detail::splitmix64(seed), detail::splitmix64(rep + 0x51ed270b27ULL),
                    detail::splitmix64(stream + 0x2545f4914f6cdd1dULL)};
  return std::mt19937_64(seq);
}

struct Design {
  std::vector<Vector> columns;  // raw n x p, column-major
  Vector tau;                   // per-column means drawn for this replication
};

// tau_j ~ N(0, 4) once per replication, X_ij ~ N(tau_j, 1).
inline Design gen_design(const SimSpec& spec, std::size_t rep) {
  spec.validate();
  auto rng = replication_rng(spec.seed, rep, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Design d;
  d.tau.resize(spec.p);
  for (double& t : d.tau) t = 2.0 * normal(rng);
  d.columns.assign(spec.p, Vector(spec.n));
  for (std::size_t j = 0; j < spec.p; ++j) {
    for (double& x : d.columns[j]) x = d.tau[j] + normal(rng);
  }
  return d;
}

// Terms of the true mean (0-based marginal indices).
inline std::vector<FeatureTerm> true_terms(Scenario s) {
  switch (s) {
    case Scenario::kPaperInteractions:
      return {FeatureTerm({{0, 1}, {1, 1}}), FeatureTerm({{2, 1}, {3, 2}}), FeatureTerm({{4, 1}, {5, 3}}),
              FeatureTerm({{6, 1}, {7, 1}, {8, 1}, {9, 1}})};
    case Scenario::kSingleInteraction:
      return {FeatureTerm({{0, 1}, {1, 1}})};
    case Scenario::kGlobalNull:
      return {};
  }
  return {};
}

// Terms whose joint selection counts as recovering the signal: every true
// term plus the marginals it needs to become reachable.
inline std::vector<FeatureTerm> recovery_targets(Scenario s) {
  if (s == Scenario::kSingleInteraction) {
    return {FeatureTerm::marginal(0), FeatureTerm::marginal(1), FeatureTerm({{0, 1}, {1, 1}})};
  }
  return true_terms(s);
}

// Marginal variables the true mean depends on.
inline std::set<std::size_t> true_support(Scenario s) {
  std::set<std::size_t> out;
  for (const FeatureTerm& t : true_terms(s)) {
    for (const auto& [index, power] : t.exponents()) out.insert(index);
  }
  return out;
}

inline double sample_variance(std::span<const double> v) {
  const double m = linalg::mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// beta_i = c / ||u_i - mean(u_i)|| so every term contributes equally after
// norm adjustment, with c set so that Var(mu) / (Var(mu) + 1) = target_r2 on
// this sample. Var(mu) is exactly c^2 Var(sum u_i / ||u_i||), so c has a
// closed form.
inline Vector calibrate_beta(const std::vector<Vector>& raw_columns, const std::vector<FeatureTerm>& terms,
                             double target_r2) {
  if (terms.empty()) return {};
  if (!(target_r2 > 0.0 && target_r2 < 1.0)) throw Error(ErrorCode::kInvalidInput, "target_r2 must lie in (0, 1)");
  const std::size_t n = raw_columns.front().size();
  Vector norms;
  Vector unit_sum(n, 0.0);
  for (const FeatureTerm& t : terms) {
    const Vector u = raw_product(t, raw_columns);
    const double m = linalg::mean(u);
    double ss = 0.0;
    for (double x : u) ss += (x - m) * (x - m);
    const double nrm = std::sqrt(ss);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error(ErrorCode::kDegenerateTerms, "term " + t.display() + " is constant");
    norms.push_back(nrm);
    linalg::axpy(1.0 / nrm, u, unit_sum);
  }
  const double v0 = sample_variance(unit_sum);
  if (!(v0 > 0.0)) throw Error(ErrorCode::kDegenerateTerms, "terms cancel to a constant mean");
  const double c = std::sqrt(target_r2 / (1.0 - target_r2) / v0);
  Vector beta;
  for (double nrm : norms) beta.push_back(c / nrm);
  return beta;
}

struct SimResponse {
  Vector y;
  Vector mu;
  Vector beta;
};

// y = mu + eps with eps ~ N(0, I); mu built from the scenario's true terms.
inline SimResponse gen_response(const std::vector<Vector>& raw_columns, const SimSpec& spec, std::size_t rep) {
  spec.validate();
  const std::size_t n = raw_columns.front().size();
  SimResponse r;
  r.mu.assign(n, 0.0);
  const auto terms = true_terms(spec.scenario);
  r.beta = calibrate_beta(raw_columns, terms, spec.target_r2);
  for (std::size_t i = 0; i < terms.size(); ++i) linalg::axpy(r.beta[i], raw_product(terms[i], raw_columns), r.mu);
  auto rng = replication_rng(spec.seed, rep, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  r.y = r.mu;
  for (double& v : r.y) v += normal(rng);
  return r;
}

// Squared error loss against the true mean.
inline double risk(std::span<const double> mu, std::span<const double> yhat) {
  if (mu.size() != yhat.size()) throw Error(ErrorCode::kLengthMismatch, "mu and yhat differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += (mu[i] - yhat[i]) * (mu[i] - yhat[i]);
  return s;
}

// OLS t-statistics (with intercept) of each column in the joint fit of y.
inline Vector ols_t_statistics(const Dataset& data, const std::vector<std::span<const double>>& columns) {
  auto r2_without = [&](std::optional<std::size_t> skip) {
    ModelState st(data);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (skip && *skip == i) continue;
      CandidateStats c = st.evaluate(columns[i]);
      if (c.collinear) throw Error(ErrorCode::kSingularSubset, "true terms are collinear");
      st.add(std::move(c), i);
    }
    return st.r_squared();
  };
  const double full = r2_without(std::nullopt);
  const double df = static_cast<double>(data.n) - static_cast<double>(columns.size()) - 1.0;
  Vector t;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const double drop = std::max(0.0, full - r2_without(i));
    t.push_back(std::sqrt(df * drop / (1.0 - full)));
  }
  return t;
}

struct ReplicationResult {
  std::size_t rep = 0;
  bool ok = true;
  std::string error;
  double risk = 0.0;
  std::size_t model_size = 0;
  std::vector<std::string> selected;
  std::size_t true_terms_found = 0;
  bool recovered = false;  // every recovery target selected
  std::size_t false_selections = 0;
  int passes = 0;
  double wealth_spent = 0.0;
  std::string termination;
  Vector true_term_t;  // OLS |t| of the true terms fit alone
  std::optional<double> wall_seconds;
};

struct Quantiles {
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

inline Quantiles summarize(Vector v) {
  Quantiles q;
  if (v.empty()) return q;
  std::sort(v.begin(), v.end());
  q.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  // Linear interpolation between order statistics.
  auto at = [&](double prob) {
    const double h = prob * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  q.median = at(0.5);
  q.q1 = at(0.25);
  q.q3 = at(0.75);
  return q;
}

struct ExperimentResults {
  SimSpec spec;
  Method method = Method::kRai;
  std::vector<ReplicationResult> rows;

  MfdrCounts mfdr_counts() const {
    MfdrCounts c;
    for (const auto& r : rows) {
      if (!r.ok) continue;
      c.false_rejections += r.false_selections;
      c.rejections += r.model_size;
      ++c.replications;
    }
    return c;
  }

  double recovery_rate() const {
    std::size_t ok = 0, hit = 0;
    for (const auto& r : rows) {
      if (!r.ok) continue;
      ++ok;
      hit += r.recovered ? 1 : 0;
    }
    return ok ? static_cast<double>(hit) / static_cast<double>(ok) : 0.0;
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.ok; }));
  }
};

inline std::vector<std::string> sim_names(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < p; ++j) names.push_back("X" + std::to_string(j + 1));
  return names;
}

// Fitted values on the raw response scale from a model's residual.
inline Vector fitted_from_residual(const Dataset& data, const Vector& residual) {
  Vector out(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    out[i] = data.response_mean + data.response_scale * (data.response[i] - residual[i]);
  }
  return out;
}

struct ReplicationOptions {
  RaiConfig config;  // used by the rai methods
  bool timing = false;
};

inline ReplicationResult run_replication(const SimSpec& spec, Method method, std::size_t rep,
                                         const ReplicationOptions& opts = {}) {
  ReplicationResult row;
  row.rep = rep;
  const auto started = std::chrono::steady_clock::now();
  try {
    const Design design = gen_design(spec, rep);
    const SimResponse resp = gen_response(design.columns, spec, rep);
    const Dataset data = standardize(design.columns, resp.y, sim_names(spec.p));
    const auto truth = true_terms(spec.scenario);
    const auto support = true_support(spec.scenario);

    std::vector<FeatureTerm> chosen;
    Vector yhat;
    switch (method) {
      case Method::kRai:
      case Method::kRaiInteractions: {
        RaiConfig cfg = opts.config;
        cfg.interactions = method == Method::kRaiInteractions;
        const RaiResult res = run_rai(data, cfg);
        chosen = res.selected_terms();
        yhat = fitted_from_residual(data, res.model.residual());
        row.passes = res.trace.passes_traversed;
        row.wealth_spent = res.ledger.total_spent();
        row.termination = to_string(res.trace.termination);
        break;
      }
      case Method::kStepwiseAic: {
        const auto order = forward_stepwise_aic(data);
        for (std::size_t j : order) chosen.push_back(FeatureTerm::marginal(j));
        yhat = fitted_from_residual(data, fit_subset(data, order).residual());
        break;
      }
      case Method::kMeanModel:
        yhat.assign(data.n, data.response_mean);
        break;
      case Method::kTrueModel: {
        ModelState st(data);
        std::size_t id = 0;
        for (const FeatureTerm& t : truth) {
          const StandardizedColumn col = realize(t, data);
          st.add(std::span<const double>(col.values), id++);
        }
        chosen = truth;
        yhat = fitted_from_residual(data, st.residual());
        break;
      }
    }

    row.risk = risk(resp.mu, yhat);
    row.model_size = chosen.size();
    std::set<std::string> keys;
    for (const FeatureTerm& t : chosen) {
      row.selected.push_back(t.display(data.names));
      keys.insert(t.key());
      bool false_term = false;
      for (const auto& [index, power] : t.exponents()) false_term = false_term || !support.contains(index);
      row.false_selections += false_term ? 1 : 0;
    }
    for (const FeatureTerm& t : truth) row.true_terms_found += keys.contains(t.key()) ? 1 : 0;
    const auto targets = recovery_targets(spec.scenario);
    row.recovered = std::all_of(targets.begin(), targets.end(), [&](const FeatureTerm& t) {
      return keys.contains(t.key());
    });

    if (!truth.empty()) {
      std::vector<StandardizedColumn> cols;
      for (const FeatureTerm& t : truth) cols.push_back(realize(t, data));
      std::vector<std::span<const double>> spans;
      for (const auto& c : cols) spans.emplace_back(c.values);
      row.true_term_t = ols_t_statistics(data, spans);
    }
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  if (opts.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
    row.wall_seconds = dt.count();
  }
  return row;
}

// Replications run on up to `threads` workers; rows come back in
// replication order regardless.
inline ExperimentResults run_experiment(const SimSpec& spec, Method method, const ReplicationOptions& opts = {},
                                        unsigned threads = 0) {
  spec.validate();
  ExperimentResults out;
  out.spec = spec;
  out.method = method;
  out.rows.resize(spec.replications);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.replications));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t rep = next++; rep < spec.replications; rep = next++) {
      out.rows[rep] = run_replication(spec, method, rep, opts);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

// ---- persistence ----------------------------------------------------------

inline std::string spec_hash(const SimSpec& spec, Method method) {
  const std::string canon = "n=" + std::to_string(spec.n) + ";p=" + std::to_string(spec.p) +
                            ";scenario=" + std::string(to_string(spec.scenario)) +
                            ";target_r2=" + nlohmann::json(spec.target_r2).dump() +
                            ";reps=" + std::to_string(spec.replications) + ";seed=" + std::to_string(spec.seed) +
                            ";method=" + std::string(to_string(method));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a(canon)));
  return buf;
}

inline nlohmann::ordered_json manifest_json(const ExperimentResults& r) {
  nlohmann::ordered_json m;
  m["format"] = "rai-sim/1";
  m["spec_hash"] = spec_hash(r.spec, r.method);
  m["seed"] = r.spec.seed;
  m["method"] = to_string(r.method);
  m["scenario"] = to_string(r.spec.scenario);
  m["n"] = r.spec.n;
  m["p"] = r.spec.p;
  m["target_r2"] = r.spec.target_r2;
  m["replications"] = r.spec.replications;
  m["code_version"] = kCodeVersion;
  return m;
}

inline nlohmann::ordered_json row_json(const ReplicationResult& row) {
  nlohmann::ordered_json j;
  j["rep"] = row.rep;
  j["ok"] = row.ok;
  if (!row.ok) {
    j["error"] = row.error;
    return j;
  }
  j["risk"] = row.risk;
  j["model_size"] = row.model_size;
  j["selected"] = row.selected;
  j["true_terms_found"] = row.true_terms_found;
  j["recovered"] = row.recovered;
  j["false_selections"] = row.false_selections;
  j["passes"] = row.passes;
  j["wealth_spent"] = row.wealth_spent;
  j["termination"] = row.termination;
  j["true_term_t"] = row.true_term_t;
  if (row.wall_seconds) j["wall_seconds"] = *row.wall_seconds;
  return j;
}

struct SummaryLine {
  std::string metric;
  Quantiles q;
};

inline std::vector<SummaryLine> summary_lines(const ExperimentResults& r) {
  Vector risk_v, size_v, found_v, pass_v, spent_v;
  for (const auto& row : r.rows) {
    if (!row.ok) continue;
    risk_v.push_back(row.risk);
    size_v.push_back(static_cast<double>(row.model_size));
    found_v.push_back(static_cast<double>(row.true_terms_found));
    pass_v.push_back(row.passes);
    spent_v.push_back(row.wealth_spent);
  }
  return {{"risk", summarize(risk_v)},
          {"model_size", summarize(size_v)},
          {"true_terms_found", summarize(found_v)},
          {"passes", summarize(pass_v)},
          {"wealth_spent", summarize(spent_v)}};
}

inline nlohmann::ordered_json summary_json(const ExperimentResults& r) {
  nlohmann::ordered_json s;
  for (const auto& line : summary_lines(r)) {
    s[line.metric] = {{"mean", line.q.mean}, {"median", line.q.median}, {"q1", line.q.q1}, {"q3", line.q.q3}};
  }
  const MfdrCounts c = r.mfdr_counts();
  s["recovery_rate"] = r.recovery_rate();
  s["mfdr_estimate"] = c.replications ? mfdr_estimate(c) : 0.0;
  s["false_rejections"] = c.false_rejections;
  s["rejections"] = c.rejections;
  s["failed_replications"] = r.failures();
  return s;
}

// Line-delimited records: manifest, one line per replication, summary.
inline void write_results(const ExperimentResults& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot open '" + path + "' for writing");
  out << nlohmann::ordered_json{{"manifest", manifest_json(r)}}.dump() << '\n';
  for (const auto& row : r.rows) out << row_json(row).dump() << '\n';
  out << nlohmann::ordered_json{{"summary", summary_json(r)}}.dump() << '\n';
}

// Flat tab-separated summary table.
inline std::string summary_table(const ExperimentResults& r) {
  auto num = [](double v) { return nlohmann::json(v).dump(); };
  std::string out = "metric\tmean\tmedian\tq1\tq3\n";
  for (const auto& line : summary_lines(r)) {
    out += line.metric + '\t' + num(line.q.mean) + '\t' + num(line.q.median) + '\t' + num(line.q.q1) + '\t' +
           num(line.q.q3) + '\n';
  }
  const MfdrCounts c = r.mfdr_counts();
  const double rate = r.recovery_rate();
  const double mfdr = c.replications ? mfdr_estimate(c) : 0.0;
  // Scalars fill the mean column only.
  out += "recovery_rate\t" + num(rate) + "\t\t\t\n";
  out += "mfdr_estimate\t" + num(mfdr) + "\t\t\t\n";
  return out;
}

// ---- train/test evaluation on real data -----------------------------------

struct SplitScore {
  std::size_t split = 0;
  double pmse_rai = 0.0;
  double pmse_stepwise = 0.0;
  std::size_t rai_size = 0;
  std::size_t stepwise_size = 0;
};

// Repeated random splits: the first floor(train_fraction * n) shuffled rows
// train, the rest test. RAI runs with `config` (interactions per config);
// the baseline is forward stepwise on marginal features stopped by AIC.
inline std::vector<SplitScore> evaluate_splits(const std::vector<Vector>& raw_columns, const Vector& raw_response,
                                               const std::vector<std::string>& names, const RaiConfig& config,
                                               std::size_t splits, std::uint64_t seed,
                                               double train_fraction = 5.0 / 6.0) {
  const std::size_t n = raw_response.size();
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train < 3 || n_train >= n) throw Error(ErrorCode::kInvalidInput, "split leaves too few rows");
  std::vector<SplitScore> out;
  for (std::size_t s = 0; s < splits; ++s) {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    auto rng = replication_rng(seed, s, 2);
    std::shuffle(rows.begin(), rows.end(), rng);
    auto take = [&](const Vector& v, std::size_t from, std::size_t to) {
      Vector o;
      for (std::size_t i = from; i < to; ++i) o.push_back(v[rows[i]]);
      return o;
    };
    std::vector<Vector> train_x, test_x;
    for (const Vector& c : raw_columns) {
      train_x.push_back(take(c, 0, n_train));
      test_x.push_back(take(c, n_train, n));
    }
    const Vector train_y = take(raw_response, 0, n_train);
    const Vector test_y = take(raw_response, n_train, n);
    const Dataset data = standardize(train_x, train_y, names);
    std::vector<Vector> test_kept;
    for (std::size_t j : data.source_index) test_kept.push_back(test_x[j]);
    const std::size_t n_test = test_y.size();

    SplitScore score;
    score.split = s;
    const RaiResult res = run_rai(data, config);
    const Vector pred_rai = predict(res, test_kept, n_test);
    score.rai_size = res.model.size();

    const auto order = forward_stepwise_aic(data);
    const RawCoefficients coef = coefficients(data, order);
    std::vector<std::span<const double>> cols;
    for (std::size_t j : order) cols.emplace_back(test_kept[j]);
    const Vector pred_step = rai::predict(coef, cols, n_test);
    score.stepwise_size = order.size();

    score.pmse_rai = risk(test_y, pred_rai) / static_cast<double>(n_test);
    score.pmse_stepwise = risk(test_y, pred_step) / static_cast<double>(n_test);
    out.push_back(score);
  }
  return out;
}

}  // namespace rai
