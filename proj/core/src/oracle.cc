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

#include "platgame/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

namespace platgame {
namespace {

void Guard(const MarketInstance& instance) {
  if (instance.n_sellers() > kOracleMaxSellers) {
    throw std::invalid_argument(
        "oracle enumerates N!/(N-M)! menus and is limited to N <= " +
        std::to_string(kOracleMaxSellers) + " (got N = " +
        std::to_string(instance.n_sellers()) + ")");
  }
}

// Revenue from one position onwards when the item sells at p and the
// remaining positions are worth `tail` to the platform.
double PositionRevenue(const MarketInstance& instance, std::size_t a,
                       double d, double tail, double p) {
  const double b = instance.Beta(a, p);
  return d * b * p + instance.gamma() * (1.0 - b) * tail;
}

double BestPrice(const MarketInstance& instance, std::size_t a, double d,
                 double tail, const OracleOptions& options) {
  const double cap = instance.p_max();
  if (instance.exponential() && !options.force_grid) {
    if (d == 0.0) return tail > 0.0 ? cap : 0.0;
    // First-order condition of d p e^{-alpha p} + gamma (1 - e^{-alpha p}) V.
    return std::clamp(1.0 / instance.alpha(a) + instance.gamma() * tail / d,
                      0.0, cap);
  }
  const double step = 1e-5 * cap;
  const long long n = 100000;
  double best_p = 0.0;
  double best = PositionRevenue(instance, a, d, tail, 0.0);
  for (long long k = 1; k <= n; ++k) {
    const double p = std::min(cap, static_cast<double>(k) * step);
    const double r = PositionRevenue(instance, a, d, tail, p);
    if (r > best) {
      best = r;
      best_p = p;
    }
  }
  const double lo = std::max(0.0, best_p - step);
  const double hi = std::min(cap, best_p + step);
  auto neg = [&](double p) { return -PositionRevenue(instance, a, d, tail, p); };
  const auto refined = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  if (-refined.second > best) return refined.first;
  return best_p;
}

void Enumerate(int n, int m, std::vector<int>& prefix, std::vector<bool>& used,
               std::vector<Menu>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.push_back(Menu{prefix});
    return;
  }
  for (int a = 0; a < n; ++a) {
    if (used[static_cast<std::size_t>(a)]) continue;
    used[static_cast<std::size_t>(a)] = true;
    prefix.push_back(a);
    Enumerate(n, m, prefix, used, out);
    prefix.pop_back();
    used[static_cast<std::size_t>(a)] = false;
  }
}

}  // namespace

PricedMenu OracleMenuPrices(const MarketInstance& instance,
                            const CommissionProfile& delta, const Menu& menu,
                            const OracleOptions& options) {
  ValidateProfile(instance, delta);
  PricedMenu priced{menu, std::vector<double>(menu.size(), 0.0)};
  double tail = 0.0;
  for (std::size_t k = menu.size(); k-- > 0;) {
    const auto a = static_cast<std::size_t>(menu.order[k]);
    const double p = BestPrice(instance, a, delta[a], tail, options);
    priced.prices[k] = p;
    tail = PositionRevenue(instance, a, delta[a], tail, p);
  }
  return priced;
}

double OracleMenuRevenue(const MarketInstance& instance,
                         const CommissionProfile& delta,
                         const PricedMenu& priced) {
  double reach = 1.0;
  double total = 0.0;
  for (std::size_t k = 0; k < priced.menu.size(); ++k) {
    const auto a = static_cast<std::size_t>(priced.menu.order[k]);
    const double b = instance.Beta(a, priced.prices[k]);
    total += reach * b * priced.prices[k] * delta[a];
    reach *= (1.0 - b) * instance.gamma();
  }
  return total;
}

OracleResult OracleOptimum(const MarketInstance& instance,
                           const CommissionProfile& delta,
                           const OracleOptions& options) {
  Guard(instance);
  ValidateProfile(instance, delta);
  std::vector<Menu> menus;
  std::vector<int> prefix;
  std::vector<bool> used(static_cast<std::size_t>(instance.n_sellers()));
  Enumerate(instance.n_sellers(), instance.menu_size(), prefix, used, menus);

  std::vector<std::pair<PricedMenu, double>> scored;
  scored.reserve(menus.size());
  double best = 0.0;
  for (const Menu& menu : menus) {
    PricedMenu priced = OracleMenuPrices(instance, delta, menu, options);
    const double r = OracleMenuRevenue(instance, delta, priced);
    best = std::max(best, r);
    scored.emplace_back(std::move(priced), r);
  }
  OracleResult result;
  result.value = best;
  for (auto& [priced, r] : scored) {
    if (r == best || tied(r, best)) result.optimal.push_back(std::move(priced));
  }
  return result;
}

std::vector<double> OracleSellerUtilities(const MarketInstance& instance,
                                          const CommissionProfile& delta,
                                          const OracleOptions& options) {
  const OracleResult opt = OracleOptimum(instance, delta, options);
  std::vector<double> u(static_cast<std::size_t>(instance.n_sellers()), 0.0);
  const double w = 1.0 / static_cast<double>(opt.optimal.size());
  for (const PricedMenu& priced : opt.optimal) {
    double reach = 1.0;
    for (std::size_t k = 0; k < priced.menu.size(); ++k) {
      const auto a = static_cast<std::size_t>(priced.menu.order[k]);
      const double p = priced.prices[k];
      const double b = instance.Beta(a, p);
      u[a] += w * ((1.0 - delta[a]) * p - instance.cost(a)) * b * reach;
      reach *= (1.0 - b) * instance.gamma();
    }
  }
  return u;
}

}  // namespace platgame
