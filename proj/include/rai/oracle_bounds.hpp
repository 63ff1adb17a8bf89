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

// Exact references used to check the selection engine on small problems:
// greedy forward stepwise, exhaustive best subset, the submodularity ratio
// and the approximation bound that ties them together.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rai/error.hpp"
#include "rai/regression.hpp"

namespace rai {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

// RAI_ENUM_BUDGET overrides the default when set to a positive integer.
inline std::uint64_t default_enumeration_budget() {
  if (const char* env = std::getenv("RAI_ENUM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationBudget;
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

// n ln(ESS / n) + 2 (|S| + 1), ESS on the raw response scale.
inline double aic_from_r2(const Dataset& data, double r2, std::size_t size) {
  const double n = static_cast<double>(data.n);
  const double ess = data.response_scale * data.response_scale * (1.0 - r2);
  if (!(ess > 0.0)) return -std::numeric_limits<double>::infinity();
  return n * std::log(ess / n) + 2.0 * (static_cast<double>(size) + 1.0);
}

inline double aic(const Dataset& data, std::span<const std::size_t> subset) {
  const auto s = detail::as_set(subset);
  return aic_from_r2(data, r_squared_of(data, s), s.size());
}

struct StepwisePath {
  std::vector<std::size_t> order;  // features in the order they entered
  Vector r_squared;                // R^2 of each prefix, starting with the empty model
  Vector aic;                      // AIC of each prefix
};

// Greedy forward stepwise: each step adds the feature with the largest R^2
// gain, ties to the lowest index. With max_steps set the path must reach that
// length (SingularStep otherwise); without it the path runs until no testable
// feature or residual degrees of freedom remain.
inline StepwisePath stepwise_path(const Dataset& data, std::optional<std::size_t> max_steps = std::nullopt,
                                  double tolerance = kCollinearityTol) {
  StepwisePath path;
  ModelState state(data, tolerance);
  path.r_squared.push_back(0.0);
  path.aic.push_back(aic_from_r2(data, 0.0, 0));
  const std::size_t limit = max_steps ? *max_steps : std::min(data.p, data.n >= 2 ? data.n - 2 : 0);
  if (max_steps && *max_steps > data.p) throw Error(ErrorCode::kInvalidInput, "k exceeds the number of features");

  std::vector<bool> used(data.p, false);
  while (path.order.size() < limit) {
    const double remaining = 1.0 - state.r_squared();
    std::optional<std::size_t> best;
    double best_gain = -1.0;
    CandidateStats best_stats;
    for (std::size_t j = 0; j < data.p; ++j) {
      if (used[j]) continue;
      CandidateStats c = state.evaluate(data.columns[j]);
      if (c.collinear) continue;
      const double g = c.rho * c.rho * remaining;
      if (g > best_gain) {
        best_gain = g;
        best = j;
        best_stats = std::move(c);
      }
    }
    if (!best) {
      if (max_steps) throw Error(ErrorCode::kSingularStep, "no candidate has a positive adjusted norm");
      break;
    }
    used[*best] = true;
    state.add(std::move(best_stats), *best);
    path.order.push_back(*best);
    path.r_squared.push_back(state.r_squared());
    path.aic.push_back(aic_from_r2(data, state.r_squared(), path.order.size()));
    if (!max_steps && state.r_squared() >= 1.0) break;
  }
  return path;
}

inline std::vector<std::size_t> forward_stepwise(const Dataset& data, std::size_t k) {
  return stepwise_path(data, k).order;
}

// Prefix of the full stepwise path that minimizes AIC (shortest on ties).
inline std::vector<std::size_t> forward_stepwise_aic(const Dataset& data) {
  StepwisePath path = stepwise_path(data);
  std::size_t best = 0;
  for (std::size_t i = 1; i < path.aic.size(); ++i) {
    if (path.aic[i] < path.aic[best]) best = i;
  }
  path.order.resize(best);
  return path.order;
}

struct BestSubset {
  std::vector<std::size_t> subset;  // sorted
  double r_squared = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t singular_skipped = 0;
};

namespace detail {

struct SubsetSearch {
  const Dataset& data;
  std::size_t k;
  BestSubset best;
  bool found = false;
  std::vector<std::size_t> current;

  void descend(const ModelState& state, std::size_t start) {
    if (current.size() == k) {
      ++best.evaluated;
      if (!found || state.r_squared() > best.r_squared + 1e-12) {
        found = true;
        best.r_squared = state.r_squared();
        best.subset = current;
      }
      return;
    }
    const std::size_t need = k - current.size();
    for (std::size_t j = start; j + need <= data.p; ++j) {
      CandidateStats c = state.evaluate(data.columns[j]);
      if (c.collinear) {
        best.singular_skipped += static_cast<std::uint64_t>(binomial(data.p - j - 1, need - 1));
        continue;
      }
      ModelState next = state;
      next.add(std::move(c), j);
      current.push_back(j);
      descend(next, j + 1);
      current.pop_back();
    }
  }
};

}  // namespace detail

// Exhaustive maximizer of R^2 over all size-k subsets; ties go to the
// lexicographically smallest subset.
inline BestSubset brute_force_subset(const Dataset& data, std::size_t k,
                                     std::uint64_t budget = default_enumeration_budget()) {
  if (k > data.p) throw Error(ErrorCode::kInvalidInput, "k exceeds the number of features");
  const double count = binomial(data.p, k);
  if (count > static_cast<double>(budget)) {
    throw Error(ErrorCode::kBudgetExceeded, "C(" + std::to_string(data.p) + "," + std::to_string(k) +
                                                ") subsets exceed the enumeration budget of " +
                                                std::to_string(budget) + "; reduce k or p");
  }
  detail::SubsetSearch search{data, k, {}, false, {}};
  search.descend(ModelState(data), 0);
  if (!search.found) throw Error(ErrorCode::kSingularSubset, "every size-k subset is singular");
  return search.best;
}

struct SubmodularityRatio {
  double gamma = 0.0;
  std::vector<std::size_t> worst_set;  // minimizing T
  std::uint64_t evaluated = 0;
  std::uint64_t singular_skipped = 0;   // C_{T.S} not invertible
  std::uint64_t undefined_skipped = 0;  // r'r = 0, ratio 0/0
};

namespace detail {

// In-place Cholesky of a small SPD matrix (row-major, lower factor). Returns
// false when a pivot falls to or below pivot_tol.
inline bool cholesky(std::vector<double>& a, std::size_t m, double pivot_tol) {
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
    if (!(d > pivot_tol * pivot_tol)) return false;
    const double l = std::sqrt(d);
    a[j * m + j] = l;
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = a[i * m + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
      a[i * m + j] = s / l;
    }
  }
  return true;
}

// b' C^{-1} b given the Cholesky factor of C.
inline double quadratic_inverse(const std::vector<double>& l, std::size_t m, std::span<const double> b) {
  Vector z(m);
  double q = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * m + k] * z[k];
    z[i] = s / l[i * m + i];
    q += z[i] * z[i];
  }
  return q;
}

}  // namespace detail

// min over T disjoint from S, 1 <= |T| <= k, of (r'r) / (r' C^{-1} r) where r
// holds the correlations of y with the S-adjusted, renormalized T columns and
// C is their correlation matrix.
inline SubmodularityRatio submodularity_ratio(const Dataset& data, std::span<const std::size_t> base, std::size_t k,
                                              std::uint64_t budget = default_enumeration_budget(),
                                              double tolerance = kCollinearityTol) {
  if (k < 1) throw Error(ErrorCode::kInvalidInput, "k must be >= 1");
  const auto s = detail::as_set(base);
  const ModelState state = fit_subset(data, s, tolerance);

  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < data.p; ++j) {
    if (!std::binary_search(s.begin(), s.end(), j)) pool.push_back(j);
  }
  const std::size_t m = pool.size();
  const std::size_t kk = std::min(k, m);
  double count = 0.0;
  for (std::size_t j = 1; j <= kk; ++j) count += binomial(m, j);
  if (count > static_cast<double>(budget)) {
    throw Error(ErrorCode::kBudgetExceeded, std::to_string(static_cast<std::uint64_t>(count)) +
                                                " sets exceed the enumeration budget of " + std::to_string(budget) +
                                                "; reduce k or p");
  }

  // Adjusted, renormalized columns; nullopt marks a column inside span(S).
  std::vector<std::optional<Vector>> adjusted(m);
  Vector corr(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    Vector a = state.adjust(data.columns[pool[i]]);
    const double na = linalg::norm(a);
    if (na <= tolerance) continue;
    for (double& v : a) v /= na;
    corr[i] = linalg::dot(data.response, a);
    adjusted[i] = std::move(a);
  }

  SubmodularityRatio out;
  bool found = false;
  std::vector<std::size_t> pick;
  std::vector<double> chol;
  Vector b;

  auto evaluate = [&]() {
    const std::size_t t = pick.size();
    b.assign(t, 0.0);
    chol.assign(t * t, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
      if (!adjusted[pick[i]]) {
        ++out.singular_skipped;
        return;
      }
    }
    double rr = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      b[i] = corr[pick[i]];
      rr += b[i] * b[i];
      for (std::size_t j = 0; j <= i; ++j) {
        chol[i * t + j] = linalg::dot(*adjusted[pick[i]], *adjusted[pick[j]]);
        chol[j * t + i] = chol[i * t + j];
      }
    }
    if (!detail::cholesky(chol, t, tolerance)) {
      ++out.singular_skipped;
      return;
    }
    const double q = detail::quadratic_inverse(chol, t, b);
    if (!(rr > 0.0) || !(q > 0.0)) {
      ++out.undefined_skipped;
      return;
    }
    ++out.evaluated;
    const double ratio = rr / q;
    if (!found || ratio < out.gamma) {
      found = true;
      out.gamma = ratio;
      out.worst_set.clear();
      for (std::size_t i : pick) out.worst_set.push_back(pool[i]);
    }
  };

  // Lexicographic enumeration of every nonempty pick of size <= kk.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < m; ++i) {
      pick.push_back(i);
      evaluate();
      if (pick.size() < kk) self(self, i + 1);
      pick.pop_back();
    }
  };
  recurse(recurse, 0);

  if (!found) throw Error(ErrorCode::kAllSubsetsSingular, "no set T gives a defined ratio");
  return out;
}

struct BoundInputs {
  double r2_opt = 0.0;  // R^2 of the best size-k subset
  int l = 1;            // size of the selected model
  int k = 1;            // size of the reference model
  double gamma = 1.0;   // submodularity ratio of the selected set at k
  int s_f = 1;          // first pass with a rejection
};

struct BoundValue {
  double c1 = 0.0;
  double c2 = 0.0;
  double additive = 0.0;        // c1 R^2_opt - sum_j e^{-(j-1) gamma / k} 2^{j - (l + s_f)}
  double multiplicative = 0.0;  // c2 R^2_opt
  double bound = 0.0;           // max of the two
};

// c_i = 1 - exp(-l gamma / (i k)).
inline BoundValue theorem_bound(const BoundInputs& in) {
  if (in.l < 1 || in.k < 1) throw Error(ErrorCode::kInvalidInput, "l and k must be >= 1");
  if (!(in.gamma > 0.0)) throw Error(ErrorCode::kInvalidInput, "gamma must be positive");
  if (in.s_f < 1) throw Error(ErrorCode::kInvalidInput, "s_f must be >= 1");
  if (!(in.r2_opt >= 0.0 && in.r2_opt <= 1.0)) throw Error(ErrorCode::kInvalidInput, "r2_opt must lie in [0, 1]");
  const double l = in.l;
  const double k = in.k;
  BoundValue v;
  v.c1 = 1.0 - std::exp(-l * in.gamma / k);
  v.c2 = 1.0 - std::exp(-l * in.gamma / (2.0 * k));
  double penalty = 0.0;
  for (int j = 1; j <= in.l; ++j) {
    penalty += std::exp(-(j - 1) * in.gamma / k) * std::exp2(static_cast<double>(j - (in.l + in.s_f)));
  }
  v.additive = v.c1 * in.r2_opt - penalty;
  v.multiplicative = v.c2 * in.r2_opt;
  v.bound = std::max(v.additive, v.multiplicative);
  return v;
}

}  // namespace rai
