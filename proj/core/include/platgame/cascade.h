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

#ifndef PLATGAME_CASCADE_H_
#define PLATGAME_CASCADE_H_

#include <vector>

#include "platgame/model.h"

namespace platgame {

// Closed-form evaluation of the cascade click model. A customer scans the
// menu top down; at position j it buys with probability beta(p_j),
// otherwise continues with probability gamma or leaves.

struct UtilityReport {
  double platform_revenue = 0.0;
  std::vector<double> seller_utility;  // zero for sellers never displayed
};

// reach[j] = prod_{k<j} (1 - beta(p_k)) * gamma; reach[0] = 1.
std::vector<double> ReachProbabilities(const MarketInstance& instance,
                                       const PricedMenu& priced);

double PlatformRevenue(const MarketInstance& instance,
                       const CommissionProfile& delta,
                       const PricedMenu& priced);

// Seller margins may be negative; they are reported as-is.
std::vector<double> SellerUtilitiesFixed(const MarketInstance& instance,
                                         const CommissionProfile& delta,
                                         const PricedMenu& priced);

UtilityReport PolicyEvaluate(const MarketInstance& instance,
                             const CommissionProfile& delta,
                             const RandomizedPolicy& policy);

}  // namespace platgame

#endif  // PLATGAME_CASCADE_H_
