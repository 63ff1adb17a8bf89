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

// Checks one selection run against the exact references: runs RAI on the
// marginal features, finds the best size-k subset, measures the
// submodularity ratio of the selected set and evaluates the approximation
// bound with both of its branches.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "rai/engine.hpp"
#include "rai/oracle_bounds.hpp"
#include "rai/regression.hpp"

namespace rai {

struct Diagnostics {
  std::size_t k = 0;
  StepwisePath stepwise;  // first k greedy steps
  BestSubset best;        // S_k*
  std::vector<std::size_t> selected;  // S_l in selection order
  double selected_r2 = 0.0;
  std::optional<int> first_rejection_pass;
  int passes = 0;
  std::optional<SubmodularityRatio> gamma;  // gamma(S_l, k); empty if l = 0 or undefined
  std::optional<BoundValue> bound;          // empty when l = 0 (bound is then 0)
  double required = 0.0;                    // right-hand side actually checked
  double slack = 0.0;                       // selected_r2 - required
  bool holds = false;
};

// The bound needs l >= 1. With an empty model it degenerates to 0 <= R^2.
// If every T disjoint from S_l is singular, no subset can add fit, so the
// check falls back to R^2(S_l) >= R^2(S_k*).
inline Diagnostics diagnose(const Dataset& data, std::size_t k, RaiConfig config = {},
                            std::uint64_t budget = default_enumeration_budget()) {
  if (k < 1 || k > data.p) throw Error(ErrorCode::kInvalidInput, "k must lie in [1, p]");
  config.interactions = false;
  Diagnostics d;
  d.k = k;
  d.stepwise = stepwise_path(data, k);
  d.best = brute_force_subset(data, k, budget);

  const RaiResult res = run_rai(data, config);
  d.selected = res.model.selected();
  d.selected_r2 = res.model.r_squared();
  d.first_rejection_pass = res.trace.first_rejection_pass();
  d.passes = res.trace.passes_traversed;

  if (d.selected.empty()) {
    d.required = 0.0;
  } else {
    try {
      d.gamma = submodularity_ratio(data, d.selected, k, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllSubsetsSingular) throw;
    }
    if (d.gamma) {
      BoundInputs in;
      in.r2_opt = d.best.r_squared;
      in.l = static_cast<int>(d.selected.size());
      in.k = static_cast<int>(k);
      in.gamma = d.gamma->gamma;
      in.s_f = *d.first_rejection_pass;
      d.bound = theorem_bound(in);
      d.required = d.bound->bound;
    } else {
      d.required = d.best.r_squared;
    }
  }
  d.slack = d.selected_r2 - d.required;
  d.holds = d.slack >= -1e-10;
  return d;
}

inline std::string to_text(const Diagnostics& d, const Dataset& data) {
  auto num = [](double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  auto names = [&](const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + data.names[idx[i]];
    return s + "}";
  };
  std::string s = "RAI diagnostics (k = " + std::to_string(d.k) + ")\n";
  s += "stepwise path:     " + names(d.stepwise.order) + "\n";
  for (std::size_t i = 1; i < d.stepwise.r_squared.size(); ++i) {
    s += "  step " + std::to_string(i) + ": R^2 = " + num(d.stepwise.r_squared[i]) + "\n";
  }
  s += "best subset S_k*:  " + names(d.best.subset) + ", R^2 = " + num(d.best.r_squared) + " (" +
       std::to_string(d.best.evaluated) + " subsets)\n";
  s += "RAI model S_l:     " + names(d.selected) + ", l = " + std::to_string(d.selected.size()) +
       ", R^2 = " + num(d.selected_r2) + "\n";
  s += "first rejection:   " + (d.first_rejection_pass ? "pass " + std::to_string(*d.first_rejection_pass) : "none") + "\n";
  if (d.gamma) {
    s += "gamma(S_l, k):     " + num(d.gamma->gamma) + " (" + std::to_string(d.gamma->evaluated) + " sets, " +
         std::to_string(d.gamma->singular_skipped) + " singular skipped)\n";
  }
  if (d.bound) {
    s += "c1, c2:            " + num(d.bound->c1) + ", " + num(d.bound->c2) + "\n";
    s += "additive branch:   " + num(d.bound->additive) + "\n";
    s += "multiplicative:    " + num(d.bound->multiplicative) + "\n";
    s += "bound:             " + num(d.bound->bound) + "\n";
  } else if (d.selected.empty()) {
    s += "bound:             0 (empty model)\n";
  } else {
    s += "bound:             R^2(S_k*) (no set T adds fit)\n";
  }
  s += "R^2(S_l) >= bound: " + std::string(d.holds ? "true" : "false") + " (slack " + num(d.slack) + ")\n";
  return s;
}

}  // namespace rai
