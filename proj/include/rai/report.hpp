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

// Run reports for the command-line tool: a human-readable text rendering and
// a JSON sidecar carrying the same content losslessly.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rai/engine.hpp"
#include "rai/error.hpp"
#include "rai/regression.hpp"

namespace rai {

struct ReportTerm {
  std::string name;  // display form, e.g. "cement*age^2"
  std::string key;   // canonical index:power form
  double coefficient = 0.0;

  friend bool operator==(const ReportTerm&, const ReportTerm&) = default;
};

struct RunReport {
  std::string response;
  std::size_t observations = 0;
  std::size_t features = 0;
  std::vector<std::string> dropped;
  std::vector<ReportTerm> terms;
  double intercept = 0.0;
  double r_squared = 0.0;
  int passes = 0;
  std::string termination;
  std::size_t tests = 0;
  std::size_t rejections = 0;
  double initial_wealth = 0.0;
  double final_wealth = 0.0;
  double wealth_spent = 0.0;
  double wealth_earned = 0.0;
  std::optional<double> elapsed_seconds;

  // Configuration echo.
  double payout = 0.0;
  int max_passes = 0;
  bool interactions = false;
  std::optional<unsigned> max_order;
  std::uint64_t seed = 0;
  bool skip_passes = true;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline RunReport make_report(const Dataset& data, const RaiConfig& config, const RaiResult& result,
                             std::optional<double> elapsed_seconds = std::nullopt) {
  RunReport r;
  r.response = data.response_name;
  r.observations = data.n;
  r.features = data.p;
  r.dropped = data.dropped;
  const RawCoefficients coef = result.coefficients();
  for (std::size_t i = 0; i < coef.indices.size(); ++i) {
    const FeatureTerm& t = result.pool.term(coef.indices[i]);
    r.terms.push_back({t.display(data.names), t.key(), coef.slopes[i]});
  }
  r.intercept = coef.intercept;
  r.r_squared = result.model.r_squared();
  r.passes = result.trace.passes_traversed;
  r.termination = to_string(result.trace.termination);
  r.tests = result.ledger.events().size();
  r.rejections = result.ledger.rejections();
  r.initial_wealth = result.ledger.initial_wealth();
  r.final_wealth = result.ledger.wealth();
  r.wealth_spent = result.ledger.total_spent();
  r.wealth_earned = result.ledger.payout() * static_cast<double>(result.ledger.rejections());
  r.elapsed_seconds = elapsed_seconds;
  r.payout = config.payout;
  r.max_passes = config.resolved_max_passes(data.n);
  r.interactions = config.interactions;
  r.max_order = config.max_interaction_order;
  r.seed = config.seed;
  r.skip_passes = config.skip_passes;
  return r;
}

inline nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "rai-report/1";
  j["response"] = r.response;
  j["observations"] = r.observations;
  j["features"] = r.features;
  j["dropped"] = r.dropped;
  j["terms"] = nlohmann::ordered_json::array();
  for (const ReportTerm& t : r.terms) {
    j["terms"].push_back({{"name", t.name}, {"key", t.key}, {"coefficient", t.coefficient}});
  }
  j["intercept"] = r.intercept;
  j["r_squared"] = r.r_squared;
  j["passes"] = r.passes;
  j["termination"] = r.termination;
  j["tests"] = r.tests;
  j["rejections"] = r.rejections;
  j["wealth"] = {{"initial", r.initial_wealth},
                 {"final", r.final_wealth},
                 {"spent", r.wealth_spent},
                 {"earned", r.wealth_earned}};
  if (r.elapsed_seconds) j["elapsed_seconds"] = *r.elapsed_seconds;
  nlohmann::ordered_json cfg;
  cfg["payout"] = r.payout;
  cfg["max_passes"] = r.max_passes;
  cfg["interactions"] = r.interactions;
  cfg["max_order"] = r.max_order ? nlohmann::ordered_json(*r.max_order) : nlohmann::ordered_json(nullptr);
  cfg["seed"] = r.seed;
  cfg["skip_passes"] = r.skip_passes;
  j["config"] = cfg;
  return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.response = j.at("response").get<std::string>();
    r.observations = j.at("observations").get<std::size_t>();
    r.features = j.at("features").get<std::size_t>();
    r.dropped = j.at("dropped").get<std::vector<std::string>>();
    for (const auto& t : j.at("terms")) {
      r.terms.push_back({t.at("name").get<std::string>(), t.at("key").get<std::string>(),
                         t.at("coefficient").get<double>()});
    }
    r.intercept = j.at("intercept").get<double>();
    r.r_squared = j.at("r_squared").get<double>();
    r.passes = j.at("passes").get<int>();
    r.termination = j.at("termination").get<std::string>();
    r.tests = j.at("tests").get<std::size_t>();
    r.rejections = j.at("rejections").get<std::size_t>();
    const auto& w = j.at("wealth");
    r.initial_wealth = w.at("initial").get<double>();
    r.final_wealth = w.at("final").get<double>();
    r.wealth_spent = w.at("spent").get<double>();
    r.wealth_earned = w.at("earned").get<double>();
    if (j.contains("elapsed_seconds")) r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    const auto& c = j.at("config");
    r.payout = c.at("payout").get<double>();
    r.max_passes = c.at("max_passes").get<int>();
    r.interactions = c.at("interactions").get<bool>();
    if (!c.at("max_order").is_null()) r.max_order = c.at("max_order").get<unsigned>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.skip_passes = c.at("skip_passes").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace detail

inline std::string to_text(const RunReport& r) {
  std::string s;
  s += "RAI selection report\n";
  s += "response:      " + r.response + "\n";
  s += "observations:  " + std::to_string(r.observations) + "\n";
  s += "features:      " + std::to_string(r.features) + "\n";
  for (const std::string& d : r.dropped) s += "dropped:       " + d + " (constant)\n";
  s += "interactions:  " + std::string(r.interactions ? "on" : "off");
  if (r.interactions) s += r.max_order ? " (max order " + std::to_string(*r.max_order) + ")" : " (unbounded)";
  s += "\n\n";
  s += "selected terms (" + std::to_string(r.terms.size()) + "), raw-scale coefficients:\n";
  auto row = [&](std::string name, double v) {
    if (name.size() < 24) name += std::string(24 - name.size(), ' ');
    s += "  " + name + " " + detail::fmt("% .10g", v) + "\n";
  };
  row("(intercept)", r.intercept);
  for (const ReportTerm& t : r.terms) row(t.name, t.coefficient);
  s += "\n";
  s += "r_squared:     " + detail::fmt("%.10g", r.r_squared) + "\n";
  s += "passes:        " + std::to_string(r.passes) + " (max " + std::to_string(r.max_passes) + ")\n";
  s += "tests:         " + std::to_string(r.tests) + ", rejections " + std::to_string(r.rejections) + "\n";
  s += "termination:   " + r.termination + "\n";
  s += "wealth:        initial " + detail::fmt("%.6g", r.initial_wealth) + ", final " +
       detail::fmt("%.6g", r.final_wealth) + ", spent " + detail::fmt("%.6g", r.wealth_spent) + ", earned " +
       detail::fmt("%.6g", r.wealth_earned) + " (payout " + detail::fmt("%.6g", r.payout) + ")\n";
  s += "seed:          " + std::to_string(r.seed) + "\n";
  if (r.elapsed_seconds) s += "elapsed:       " + detail::fmt("%.3f", *r.elapsed_seconds) + " s\n";
  return s;
}

// Full per-test audit log of a run.
inline nlohmann::ordered_json trace_json(const RaiResult& result, const Dataset& data) {
  nlohmann::ordered_json j;
  j["format"] = "rai-trace/1";
  j["termination"] = to_string(result.trace.termination);
  j["passes_traversed"] = result.trace.passes_traversed;
  j["initial_wealth"] = result.ledger.initial_wealth();
  j["payout"] = result.ledger.payout();
  auto& tests = j["tests"] = nlohmann::ordered_json::array();
  for (const TestRecord& t : result.trace.tests) {
    nlohmann::ordered_json row;
    row["pass"] = t.pass;
    row["term"] = result.pool.term(t.term_id).display(data.names);
    row["abs_t"] = t.abs_t >= kPerfectFitT ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(t.abs_t);
    row["tlvl"] = t.tlvl;
    row["alpha"] = t.alpha;
    row["wealth_before"] = t.wealth_before;
    row["wealth_after"] = t.wealth_after;
    row["decision"] = to_string(t.decision);
    tests.push_back(std::move(row));
  }
  auto& skips = j["skips"] = nlohmann::ordered_json::array();
  for (const SkipRecord& s : result.trace.skips) {
    skips.push_back({{"from_pass", s.from_pass},
                     {"to_pass", s.to_pass},
                     {"tests_charged", s.tests_charged},
                     {"alpha_charged", s.alpha_charged}});
  }
  j["final_wealth"] = result.ledger.wealth();
  return j;
}

}  // namespace rai
