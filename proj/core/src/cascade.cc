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

#include "platgame/cascade.h"

#include <cstddef>

namespace platgame {

std::vector<double> ReachProbabilities(const MarketInstance& instance,
                                       const PricedMenu& priced) {
  ValidatePricedMenu(instance, priced);
  std::vector<double> reach(priced.menu.size());
  double prefix = 1.0;
  for (std::size_t j = 0; j < reach.size(); ++j) {
    reach[j] = prefix;
    const auto a = static_cast<std::size_t>(priced.menu.order[j]);
    prefix *= (1.0 - instance.Beta(a, priced.prices[j])) * instance.gamma();
  }
  return reach;
}

double PlatformRevenue(const MarketInstance& instance,
                       const CommissionProfile& delta,
                       const PricedMenu& priced) {
  ValidateProfile(instance, delta);
  const std::vector<double> reach = ReachProbabilities(instance, priced);
  double revenue = 0.0;
  for (std::size_t j = 0; j < reach.size(); ++j) {
    const auto a = static_cast<std::size_t>(priced.menu.order[j]);
    const double p = priced.prices[j];
    revenue += p * delta[a] * instance.Beta(a, p) * reach[j];
  }
  return revenue;
}

std::vector<double> SellerUtilitiesFixed(const MarketInstance& instance,
                                         const CommissionProfile& delta,
                                         const PricedMenu& priced) {
  ValidateProfile(instance, delta);
  const std::vector<double> reach = ReachProbabilities(instance, priced);
  std::vector<double> utility(static_cast<std::size_t>(instance.n_sellers()));
  for (std::size_t j = 0; j < reach.size(); ++j) {
    const auto a = static_cast<std::size_t>(priced.menu.order[j]);
    const double p = priced.prices[j];
    const double margin = (1.0 - delta[a]) * p - instance.cost(a);
    utility[a] = margin * instance.Beta(a, p) * reach[j];
  }
  return utility;
}

UtilityReport PolicyEvaluate(const MarketInstance& instance,
                             const CommissionProfile& delta,
                             const RandomizedPolicy& policy) {
  policy.Validate();
  UtilityReport report;
  report.seller_utility.assign(static_cast<std::size_t>(instance.n_sellers()),
                               0.0);
  for (const auto& entry : policy.support) {
    report.platform_revenue +=
        entry.probability * PlatformRevenue(instance, delta, entry.priced);
    const std::vector<double> u =
        SellerUtilitiesFixed(instance, delta, entry.priced);
    for (std::size_t a = 0; a < u.size(); ++a) {
      report.seller_utility[a] += entry.probability * u[a];
    }
  }
  return report;
}

}  // namespace platgame
