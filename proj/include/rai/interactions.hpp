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

// Monomial feature terms and the dynamic interaction search: whenever a term
// enters the model, its products with every selected term (itself included)
// become new candidates.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "rai/error.hpp"
#include "rai/regression.hpp"

namespace rai {

class FeatureTerm {
 public:
  FeatureTerm() = default;

  explicit FeatureTerm(std::map<std::size_t, unsigned> exponents) : exponents_(std::move(exponents)) {
    if (exponents_.empty()) throw Error(ErrorCode::kInvalidInput, "a term needs at least one factor");
    for (const auto& [index, power] : exponents_) {
      if (power == 0) throw Error(ErrorCode::kInvalidInput, "term powers must be positive");
    }
  }

  static FeatureTerm marginal(std::size_t index) { return FeatureTerm({{index, 1u}}); }

  // Inverse of key(): "3:1,4:2".
  static FeatureTerm from_key(const std::string& key) {
    std::map<std::size_t, unsigned> ex;
    std::size_t pos = 0;
    try {
      while (pos < key.size()) {
        const std::size_t comma = key.find(',', pos);
        const std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::kParseError, "bad term key '" + key + "'");
        ex[std::stoul(part.substr(0, colon))] += static_cast<unsigned>(std::stoul(part.substr(colon + 1)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "bad term key '" + key + "'");
    }
    return FeatureTerm(std::move(ex));
  }

  const std::map<std::size_t, unsigned>& exponents() const { return exponents_; }

  unsigned order() const {
    unsigned total = 0;
    for (const auto& [index, power] : exponents_) total += power;
    return total;
  }

  bool is_marginal() const { return exponents_.size() == 1 && exponents_.begin()->second == 1; }

  std::string key() const {
    std::string out;
    for (const auto& [index, power] : exponents_) {
      if (!out.empty()) out += ',';
      out += std::to_string(index) + ':' + std::to_string(power);
    }
    return out;
  }

  // Factors joined by "*", powers as "^k". Without names, index i prints as X{i+1}.
  std::string display(std::span<const std::string> names = {}) const {
    std::string out;
    for (const auto& [index, power] : exponents_) {
      if (!out.empty()) out += '*';
      out += index < names.size() ? names[index] : "X" + std::to_string(index + 1);
      if (power > 1) out += '^' + std::to_string(power);
    }
    return out;
  }

  FeatureTerm operator*(const FeatureTerm& other) const {
    std::map<std::size_t, unsigned> ex = exponents_;
    for (const auto& [index, power] : other.exponents_) ex[index] += power;
    return FeatureTerm(std::move(ex));
  }

  friend bool operator==(const FeatureTerm&, const FeatureTerm&) = default;
  friend auto operator<=>(const FeatureTerm&, const FeatureTerm&) = default;

 private:
  std::map<std::size_t, unsigned> exponents_;
};

// Products of the newly added term with every selected term (itself
// included), skipping keys in `seen` (already selected or streamed) and
// anything above max_order.
inline std::vector<FeatureTerm> generate_candidates(const std::vector<FeatureTerm>& selected,
                                                    const FeatureTerm& newly_added,
                                                    const std::unordered_set<std::string>& seen,
                                                    std::optional<unsigned> max_order = std::nullopt) {
  std::vector<FeatureTerm> out;
  std::unordered_set<std::string> emitted;
  for (const FeatureTerm& t : selected) {
    FeatureTerm product = newly_added * t;
    if (max_order && product.order() > *max_order) continue;
    std::string key = product.key();
    if (seen.contains(key) || !emitted.insert(key).second) continue;
    out.push_back(std::move(product));
  }
  return out;
}

// Elementwise product of raw marginal columns raised to their powers.
inline Vector raw_product(const FeatureTerm& term, const std::vector<Vector>& raw_columns) {
  if (raw_columns.empty()) throw Error(ErrorCode::kInvalidInput, "no raw columns");
  Vector out(raw_columns.front().size(), 1.0);
  for (const auto& [index, power] : term.exponents()) {
    if (index >= raw_columns.size()) {
      throw Error(ErrorCode::kInvalidInput, "term index " + std::to_string(index) + " out of range");
    }
    const Vector& col = raw_columns[index];
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (unsigned k = 0; k < power; ++k) out[i] *= col[i];
    }
  }
  return out;
}

// Product formed on the raw scale, then centered and unit-normalized.
inline StandardizedColumn realize(const FeatureTerm& term, const std::vector<Vector>& raw_columns) {
  auto s = center_and_scale(raw_product(term, raw_columns));
  if (!s) throw Error(ErrorCode::kConstantInteraction, "term " + term.display() + " is constant");
  return std::move(*s);
}

inline StandardizedColumn realize(const FeatureTerm& term, const Dataset& data) {
  return realize(term, data.raw_columns);
}

}  // namespace rai
