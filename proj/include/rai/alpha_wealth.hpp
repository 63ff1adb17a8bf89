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

// Alpha-investing bookkeeping: each test spends alpha from the wealth and a
// rejection pays back a fixed return. Thresholds tighten geometrically by
// testing pass.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rai/error.hpp"

namespace rai {

inline constexpr double kDefaultInitialWealth = 0.25;
inline constexpr double kDefaultPayout = 0.05;
inline constexpr double kMinAlpha = 1e-300;

// 2 * Phi(-t) for t >= 0, through erfc so the far tail keeps full relative
// precision. Clamped below at kMinAlpha.
inline double two_sided_normal_tail(double t) {
  const double a = std::erfc(std::abs(t) / std::numbers::sqrt2);
  return a < kMinAlpha ? kMinAlpha : a;
}

struct PassLevel {
  double tlvl = 0.0;   // |t| must strictly exceed this
  double alpha = 0.0;  // wealth charged per test on this pass
};

// tlvl = sqrt(n) * 2^(-s/2), alpha = 2 Phi(-tlvl).
inline PassLevel pass_parameters(std::size_t n, int pass) {
  if (n < 1 || pass < 1) throw Error(ErrorCode::kInvalidInput, "pass_parameters needs n >= 1 and s >= 1");
  PassLevel out;
  out.tlvl = std::sqrt(static_cast<double>(n)) * std::exp2(-0.5 * pass);
  out.alpha = two_sided_normal_tail(out.tlvl);
  return out;
}

struct WealthEvent {
  std::size_t test_id = 0;
  int pass = 0;
  double alpha = 0.0;
  bool rejected = false;
  bool skipped = false;  // charged for a skipped pass, no statistic computed
};

class WealthLedger {
 public:
  explicit WealthLedger(double initial_wealth = kDefaultInitialWealth, double payout = kDefaultPayout)
      : initial_(initial_wealth), payout_(payout), wealth_(initial_wealth) {
    if (!(initial_wealth > 0.0)) throw Error(ErrorCode::kInvalidInput, "initial wealth must be positive");
    if (!(payout > 0.0)) throw Error(ErrorCode::kInvalidInput, "payout must be positive");
  }

  double wealth() const { return wealth_; }
  double payout() const { return payout_; }
  double initial_wealth() const { return initial_; }
  std::size_t rejections() const { return rejections_; }
  const std::vector<WealthEvent>& events() const { return events_; }

  bool can_afford(double alpha) const { return wealth_ >= alpha; }

  void spend(double alpha, std::size_t test_id, int pass = 0, bool skipped = false) {
    if (!can_afford(alpha)) {
      throw Error(ErrorCode::kInsufficientWealth,
                  "wealth " + std::to_string(wealth_) + " cannot cover alpha " + std::to_string(alpha));
    }
    wealth_ -= alpha;
    spent_ += alpha;
    events_.push_back({test_id, pass, alpha, false, skipped});
  }

  // Records a rejection of the most recent test.
  void earn(std::size_t test_id) {
    if (events_.empty() || events_.back().test_id != test_id || events_.back().rejected || events_.back().skipped) {
      throw Error(ErrorCode::kInvalidInput, "earn must follow the spend of the same test");
    }
    events_.back().rejected = true;
    wealth_ += payout_;
    ++rejections_;
  }

  double total_spent() const { return spent_; }

  // Wealth recomputed from the event list in order.
  double replay() const {
    double w = initial_;
    for (const WealthEvent& e : events_) {
      w -= e.alpha;
      if (e.rejected) w += payout_;
    }
    return w;
  }

 private:
  double initial_;
  double payout_;
  double wealth_;
  double spent_ = 0.0;
  std::size_t rejections_ = 0;
  std::vector<WealthEvent> events_;
};

// Totals over simulation replications; V is only known when the truth is.
struct MfdrCounts {
  std::uint64_t false_rejections = 0;
  std::uint64_t rejections = 0;
  std::uint64_t replications = 0;

  MfdrCounts& operator+=(const MfdrCounts& o) {
    false_rejections += o.false_rejections;
    rejections += o.rejections;
    replications += o.replications;
    return *this;
  }
  friend MfdrCounts operator+(MfdrCounts a, const MfdrCounts& b) { return a += b; }
};

// Plug-in E(V) / (E(R) + 1).
inline double mfdr_estimate(const MfdrCounts& c) {
  if (c.replications == 0) throw Error(ErrorCode::kInvalidInput, "mfdr_estimate needs at least one replication");
  const double reps = static_cast<double>(c.replications);
  const double ev = static_cast<double>(c.false_rejections) / reps;
  const double er = static_cast<double>(c.rejections) / reps;
  return ev / (er + 1.0);
}

}  // namespace rai
