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

// Standardized regression data and the projection primitives every other
// module is built on. Columns and response are centered with unit Euclidean
// norm, so R^2 of a model is simply 1 - ||residual||^2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rai/error.hpp"

namespace rai {

using Vector = std::vector<double>;

// A candidate whose adjusted norm falls at or below this is untestable.
inline constexpr double kCollinearityTol = 1e-8;

// Stand-in for |t| = infinity (perfect fit of the residual).
inline constexpr double kPerfectFitT = std::numeric_limits<double>::max();

namespace linalg {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline double mean(std::span<const double> a) {
  if (a.empty()) return 0.0;
  double m = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  // One correction sweep; keeps sum(x - m) at rounding level for large offsets.
  double c = 0.0;
  for (double v : a) c += v - m;
  return m + c / static_cast<double>(a.size());
}

}  // namespace linalg

// Centered, unit-norm copy of a raw vector together with the constants
// needed to map back: standardized = (raw - mean) / scale.
struct StandardizedColumn {
  Vector values;
  double mean = 0.0;
  double scale = 1.0;
};

// Returns nullopt when the vector has (numerically) zero variance.
inline std::optional<StandardizedColumn> center_and_scale(std::span<const double> raw) {
  StandardizedColumn out;
  out.mean = linalg::mean(raw);
  out.values.resize(raw.size());
  double raw_norm = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.values[i] = raw[i] - out.mean;
    raw_norm = std::max(raw_norm, std::abs(raw[i]));
  }
  out.scale = linalg::norm(out.values);
  if (!(out.scale > 1e-12 * raw_norm * std::sqrt(static_cast<double>(raw.size()))) ||
      out.scale == 0.0) {
    return std::nullopt;
  }
  for (double& v : out.values) v /= out.scale;
  return out;
}

struct Dataset {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<Vector> columns;  // standardized features
  Vector response;              // standardized response
  std::vector<std::string> names;
  Vector raw_means;
  Vector raw_scales;
  double response_mean = 0.0;
  double response_scale = 1.0;
  std::string response_name = "y";

  // Raw values of the surviving features; products for interaction terms are
  // formed from these.
  std::vector<Vector> raw_columns;
  // Position of each surviving feature in the caller's input.
  std::vector<std::size_t> source_index;
  // Names of the constant columns that were dropped.
  std::vector<std::string> dropped;
};

// Builds a Dataset from column-major raw data. Constant columns are dropped
// and listed in Dataset::dropped rather than treated as errors.
inline Dataset standardize(const std::vector<Vector>& raw_columns, std::span<const double> raw_response,
                           std::vector<std::string> names = {}, std::string response_name = "y") {
  const std::size_t n = raw_response.size();
  if (n < 3) throw Error(ErrorCode::kInvalidInput, "need at least 3 observations, got " + std::to_string(n));
  if (names.empty()) {
    for (std::size_t j = 0; j < raw_columns.size(); ++j) names.push_back("X" + std::to_string(j + 1));
  }
  if (names.size() != raw_columns.size()) {
    throw Error(ErrorCode::kLengthMismatch, "names and columns differ in count");
  }
  auto finite = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(raw_response)) throw Error(ErrorCode::kInvalidInput, "response has non-finite entries");

  Dataset d;
  d.n = n;
  d.response_name = std::move(response_name);
  auto y = center_and_scale(raw_response);
  if (!y) throw Error(ErrorCode::kConstantResponse, "response has zero variance");
  d.response = std::move(y->values);
  d.response_mean = y->mean;
  d.response_scale = y->scale;

  for (std::size_t j = 0; j < raw_columns.size(); ++j) {
    const Vector& col = raw_columns[j];
    if (col.size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "column '" + names[j] + "' has " + std::to_string(col.size()) +
                                                  " rows, expected " + std::to_string(n));
    }
    if (!finite(col)) throw Error(ErrorCode::kInvalidInput, "column '" + names[j] + "' has non-finite entries");
    auto s = center_and_scale(col);
    if (!s) {
      d.dropped.push_back(names[j]);
      continue;
    }
    d.columns.push_back(std::move(s->values));
    d.raw_means.push_back(s->mean);
    d.raw_scales.push_back(s->scale);
    d.names.push_back(names[j]);
    d.raw_columns.push_back(col);
    d.source_index.push_back(j);
  }
  d.p = d.columns.size();
  if (d.p == 0) throw Error(ErrorCode::kAllColumnsConstant, "no non-constant feature column");
  return d;
}

// What a single candidate column looks like against the current model.
struct CandidateStats {
  Vector adjusted;          // x minus its projection onto the model basis
  double adjusted_norm = 0.0;
  double rho = 0.0;         // partial correlation with the response
  bool collinear = false;   // adjusted_norm <= tolerance; rho is meaningless
};

// Incrementally grown least-squares model over a fixed Dataset. Holds an
// orthonormal basis of the selected columns and the current residual.
class ModelState {
 public:
  explicit ModelState(const Dataset& data, double tolerance = kCollinearityTol)
      : data_(&data), tol_(tolerance), residual_(data.response), residual_norm_(linalg::norm(residual_)) {}

  const Dataset& dataset() const { return *data_; }
  const std::vector<std::size_t>& selected() const { return selected_; }
  const std::vector<Vector>& basis() const { return basis_; }
  const Vector& residual() const { return residual_; }
  double r_squared() const { return r_squared_; }
  std::size_t size() const { return selected_.size(); }
  double tolerance() const { return tol_; }

  bool contains(std::size_t id) const {
    return std::find(selected_.begin(), selected_.end(), id) != selected_.end();
  }

  // Modified Gram-Schmidt against the basis, with one reorthogonalization.
  Vector adjust(std::span<const double> x) const {
    Vector v(x.begin(), x.end());
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const Vector& q : basis_) linalg::axpy(-linalg::dot(q, v), q, v);
    }
    return v;
  }

  CandidateStats evaluate(std::span<const double> x) const {
    CandidateStats c;
    c.adjusted = adjust(x);
    c.adjusted_norm = linalg::norm(c.adjusted);
    if (c.adjusted_norm <= tol_) {
      c.collinear = true;
      return c;
    }
    if (residual_norm_ == 0.0) return c;  // nothing left to explain
    c.rho = std::clamp(linalg::dot(residual_, c.adjusted) / (residual_norm_ * c.adjusted_norm), -1.0, 1.0);
    return c;
  }

  double partial_correlation(std::span<const double> x) const {
    CandidateStats c = evaluate(x);
    if (c.collinear) throw Error(ErrorCode::kCollinearFeature, "adjusted column norm below tolerance");
    return c.rho;
  }

  // Residual degrees of freedom for testing one more column.
  long degrees_of_freedom() const {
    return static_cast<long>(data_->n) - static_cast<long>(selected_.size()) - 2;
  }

  double t_from_rho(double rho) const {
    const long df = degrees_of_freedom();
    if (df < 1) throw Error(ErrorCode::kInsufficientDf, "n - |S| - 2 < 1");
    const double one_minus = 1.0 - rho * rho;
    if (one_minus <= 64.0 * std::numeric_limits<double>::epsilon()) {
      return rho >= 0.0 ? kPerfectFitT : -kPerfectFitT;
    }
    return rho * std::sqrt(static_cast<double>(df)) / std::sqrt(one_minus);
  }

  double t_statistic(std::span<const double> x) const { return t_from_rho(partial_correlation(x)); }

  // Adds a column whose stats were computed against this exact state.
  void add(CandidateStats stats, std::size_t id) {
    if (stats.collinear || stats.adjusted_norm <= tol_) {
      throw Error(ErrorCode::kCollinearFeature, "cannot add a column inside the model span");
    }
    Vector q = std::move(stats.adjusted);
    for (double& v : q) v /= stats.adjusted_norm;
    linalg::axpy(-linalg::dot(q, residual_), q, residual_);
    basis_.push_back(std::move(q));
    selected_.push_back(id);
    residual_norm_ = linalg::norm(residual_);
    r_squared_ = 1.0 - residual_norm_ * residual_norm_;
  }

  void add(std::span<const double> x, std::size_t id) { add(evaluate(x), id); }

  // Index-based conveniences over the dataset's own columns.
  Vector adjusted_column(std::size_t j) const { return adjust(data_->columns.at(j)); }
  double partial_correlation(std::size_t j) const { return partial_correlation(std::span<const double>(data_->columns.at(j))); }
  double t_statistic(std::size_t j) const { return t_statistic(std::span<const double>(data_->columns.at(j))); }
  void add_feature(std::size_t j) {
    if (contains(j)) throw Error(ErrorCode::kInvalidInput, "feature already selected");
    add(std::span<const double>(data_->columns.at(j)), j);
  }

 private:
  const Dataset* data_;
  double tol_;
  std::vector<std::size_t> selected_;
  std::vector<Vector> basis_;
  Vector residual_;
  double residual_norm_;
  double r_squared_ = 0.0;
};

inline Vector adjusted_column(const ModelState& state, std::size_t j) { return state.adjusted_column(j); }
inline double partial_correlation(const ModelState& state, std::size_t j) { return state.partial_correlation(j); }
inline double t_statistic(const ModelState& state, std::size_t j) { return state.t_statistic(j); }
inline ModelState add_feature(ModelState state, std::size_t j) {
  state.add_feature(j);
  return state;
}

namespace detail {

inline std::vector<std::size_t> as_set(std::span<const std::size_t> s) {
  std::vector<std::size_t> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// Fresh model on the subset S, in the given order. Throws SingularSubset
// when the columns are linearly dependent.
inline ModelState fit_subset(const Dataset& data, std::span<const std::size_t> subset,
                             double tolerance = kCollinearityTol) {
  ModelState state(data, tolerance);
  for (std::size_t j : subset) {
    if (j >= data.p) throw Error(ErrorCode::kInvalidInput, "feature index out of range");
    if (state.contains(j)) continue;
    CandidateStats c = state.evaluate(data.columns[j]);
    if (c.collinear) throw Error(ErrorCode::kSingularSubset, "subset columns are linearly dependent");
    state.add(std::move(c), j);
  }
  return state;
}

inline double r_squared_of(const Dataset& data, std::span<const std::size_t> subset) {
  const auto s = detail::as_set(subset);
  return fit_subset(data, s).r_squared();
}

// R^2(S u A) - R^2(S).
inline double gain(const Dataset& data, std::span<const std::size_t> base, std::span<const std::size_t> added) {
  std::vector<std::size_t> both(base.begin(), base.end());
  both.insert(both.end(), added.begin(), added.end());
  return r_squared_of(data, both) - r_squared_of(data, base);
}

// Least-squares coefficients of y on the given columns (no intercept; the
// inputs are assumed centered). QR by modified Gram-Schmidt with one
// reorthogonalization sweep, then back substitution.
inline Vector least_squares(const std::vector<std::span<const double>>& columns, std::span<const double> y,
                            double tolerance = kCollinearityTol) {
  const std::size_t k = columns.size();
  std::vector<Vector> q;
  q.reserve(k);
  std::vector<Vector> r(k, Vector(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    Vector v(columns[j].begin(), columns[j].end());
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = 0; i < j; ++i) {
        const double c = linalg::dot(q[i], v);
        r[i][j] += c;
        linalg::axpy(-c, q[i], v);
      }
    }
    const double nv = linalg::norm(v);
    if (nv <= tolerance) throw Error(ErrorCode::kSingularSubset, "columns are linearly dependent");
    r[j][j] = nv;
    for (double& e : v) e /= nv;
    q.push_back(std::move(v));
  }
  Vector qty(k);
  for (std::size_t i = 0; i < k; ++i) qty[i] = linalg::dot(q[i], y);
  Vector beta(k, 0.0);
  for (std::size_t ii = k; ii-- > 0;) {
    double s = qty[ii];
    for (std::size_t j = ii + 1; j < k; ++j) s -= r[ii][j] * beta[j];
    beta[ii] = s / r[ii][ii];
  }
  return beta;
}

// Coefficients on the original measurement scale.
struct RawCoefficients {
  std::vector<std::size_t> indices;
  Vector slopes;
  double intercept = 0.0;
};

// Maps standardized-scale coefficients back to raw units given each
// column's centering/scaling constants.
inline RawCoefficients back_transform(std::vector<std::size_t> indices, std::span<const double> beta,
                                      std::span<const double> means, std::span<const double> scales,
                                      double response_mean, double response_scale) {
  RawCoefficients out;
  out.indices = std::move(indices);
  out.intercept = response_mean;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double slope = response_scale * beta[i] / scales[i];
    out.slopes.push_back(slope);
    out.intercept -= slope * means[i];
  }
  return out;
}

inline RawCoefficients coefficients(const Dataset& data, std::span<const std::size_t> subset) {
  std::vector<std::size_t> idx(subset.begin(), subset.end());
  std::vector<std::span<const double>> cols;
  Vector means, scales;
  for (std::size_t j : idx) {
    if (j >= data.p) throw Error(ErrorCode::kInvalidInput, "feature index out of range");
    cols.emplace_back(data.columns[j]);
    means.push_back(data.raw_means[j]);
    scales.push_back(data.raw_scales[j]);
  }
  const Vector beta = least_squares(cols, data.response);
  return back_transform(std::move(idx), beta, means, scales, data.response_mean, data.response_scale);
}

// Raw-scale predictions from raw feature columns (one column per slope).
inline Vector predict(const RawCoefficients& coef, const std::vector<std::span<const double>>& raw_columns,
                      std::size_t n) {
  Vector out(n, coef.intercept);
  for (std::size_t i = 0; i < coef.slopes.size(); ++i) linalg::axpy(coef.slopes[i], raw_columns[i], out);
  return out;
}

}  // namespace rai
