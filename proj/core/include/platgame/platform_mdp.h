// Copyright 2026 The platgame Authors.
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

#ifndef PLATGAME_PLATFORM_MDP_H_
#define PLATGAME_PLATFORM_MDP_H_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "platgame/model.h"

namespace platgame {

// Exact joint ranking-and-pricing for the platform. Position t of the menu
// is stage t of a finite-horizon MDP whose state is the set of sellers not
// yet displayed; the customer leaving or buying moves to an absorbing state
// worth zero.

// Bit a set <=> seller a still available.
using SellerSet = std::uint32_t;

inline constexpr int kMaxDpSellers = 24;

SellerSet AllSellers(int n_sellers);

struct PriceChoice {
  double price = 0.0;
  double value = 0.0;
  // Seller pays no commission: every price earns nothing, and the platform
  // prefers non-purchase, so the price is pushed to p_max.
  bool commission_zero = false;
};

/// Best price for showing seller `seller` now when the continuation (value
/// of the remaining positions) is `continuation`:
///   max_p  delta * beta(p) * p + gamma * (1 - beta(p)) * continuation.
/// Closed form for the exponential family, bracketed root of the
/// stationarity condition otherwise.
PriceChoice InnerPriceOpt(const MarketInstance& instance, int seller,
                          double delta_a, double continuation);

/// v_t(x) over the reachable states |x| = N - t + 1, stages 1..M.
class ValueTable {
 public:
  explicit ValueTable(int menu_size = 0);

  // Zero for the empty set and for stages past the horizon.
  double Value(int stage, SellerSet state) const;
  bool Has(int stage, SellerSet state) const;
  void Set(int stage, SellerSet state, double value);
  int menu_size() const { return static_cast<int>(stages_.size()); }
  std::size_t StateCount() const;

 private:
  std::vector<std::unordered_map<SellerSet, double>> stages_;
};

struct Optimizer {
  int seller = 0;
  double price = 0.0;
  double q_value = 0.0;
};

/// Actions attaining the DP maximum within kTieTolerance, per (t, x).
class OptimizerSet {
 public:
  explicit OptimizerSet(int menu_size = 0);

  const std::vector<Optimizer>& At(int stage, SellerSet state) const;
  void Set(int stage, SellerSet state, std::vector<Optimizer> optimizers);

 private:
  std::vector<std::unordered_map<SellerSet, std::vector<Optimizer>>> stages_;
};

struct PlatformSolution {
  ValueTable values;
  OptimizerSet optimizers;
  SellerSet initial = 0;

  double value() const { return values.Value(1, initial); }
};

PlatformSolution SolveDp(const MarketInstance& instance,
                         const CommissionProfile& delta);

/// Unrolls the uniform-over-optimizers decision rule from the initial state
/// into an explicit distribution over priced menus. Menus reached through
/// different tie paths are merged; support is sorted by menu.
RandomizedPolicy FairPolicy(const MarketInstance& instance,
                            const PlatformSolution& solution);
RandomizedPolicy FairPolicy(const MarketInstance& instance,
                            const CommissionProfile& delta);

}  // namespace platgame

#endif  // PLATGAME_PLATFORM_MDP_H_
