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

#ifndef PLATGAME_ORACLE_H_
#define PLATGAME_ORACLE_H_

#include <vector>

#include "platgame/model.h"

namespace platgame {

// Exhaustive ground truth for small markets. Every ordered M-subset of
// sellers is priced by its own backward recursion, written independently of
// the MDP solver so that the two can audit each other.

inline constexpr int kOracleMaxSellers = 8;

struct OracleOptions {
  // Price every position by grid search (step 1e-5 * p_max) plus Brent
  // refinement even when the exponential closed form applies.
  bool force_grid = false;
};

struct OracleResult {
  double value = 0.0;
  // Every priced menu whose revenue ties the maximum (kTieTolerance).
  std::vector<PricedMenu> optimal;
};

// Throws std::invalid_argument for N > kOracleMaxSellers.
OracleResult OracleOptimum(const MarketInstance& instance,
                           const CommissionProfile& delta,
                           const OracleOptions& options = {});

// Revenue-optimal prices for one fixed menu and the revenue they earn.
PricedMenu OracleMenuPrices(const MarketInstance& instance,
                            const CommissionProfile& delta, const Menu& menu,
                            const OracleOptions& options = {});
double OracleMenuRevenue(const MarketInstance& instance,
                         const CommissionProfile& delta,
                         const PricedMenu& priced);

// Seller utilities under the uniform mixture over OracleOptimum's ties.
std::vector<double> OracleSellerUtilities(const MarketInstance& instance,
                                          const CommissionProfile& delta,
                                          const OracleOptions& options = {});

}  // namespace platgame

#endif  // PLATGAME_ORACLE_H_
