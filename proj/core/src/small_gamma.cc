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

#include "platgame/small_gamma.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "platgame/cascade.h"
#include "platgame/platform_mdp.h"

namespace platgame {

std::vector<double> FStarIndex(const MarketInstance& instance,
                               const CommissionProfile& delta) {
  ValidateProfile(instance, delta);
  std::vector<double> f(delta.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double p = StandalonePrice(instance, static_cast<int>(a));
    if (instance.exponential() && p == 1.0 / instance.alpha(a)) {
      f[a] = delta[a] / (std::exp(1.0) * instance.alpha(a));
    } else {
      f[a] = delta[a] * instance.Beta(a, p) * p;
    }
  }
  return f;
}

double StandalonePrice(const MarketInstance& instance, int seller) {
  return InnerPriceOpt(instance, seller, 1.0, 0.0).price;
}

std::vector<double> HIndex(const MarketInstance& instance,
                           const CommissionProfile& delta) {
  ValidateProfile(instance, delta);
  std::vector<double> h(delta.size());
  for (std::size_t a = 0; a < h.size(); ++a) {
    const double p = StandalonePrice(instance, static_cast<int>(a));
    const double beta = instance.Beta(a, p);
    h[a] = beta * p * delta[a] / (1.0 - instance.gamma() * (1.0 - beta));
  }
  return h;
}

int BinStructure::BinOf(int seller) const {
  for (std::size_t l = 0; l < bins.size(); ++l) {
    if (std::find(bins[l].begin(), bins[l].end(), seller) != bins[l].end()) {
      return static_cast<int>(l);
    }
  }
  throw std::out_of_range("seller not present in any bin");
}

BinStructure MakeBins(std::span<const double> index) {
  std::vector<int> order(index.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return index[static_cast<std::size_t>(a)] >
           index[static_cast<std::size_t>(b)];
  });

  BinStructure bins;
  int placed = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double head = index[static_cast<std::size_t>(order[i])];
    std::vector<int> bin;
    while (i < order.size() &&
           tied(index[static_cast<std::size_t>(order[i])], head)) {
      bin.push_back(order[i]);
      ++i;
    }
    std::sort(bin.begin(), bin.end());
    bins.offsets.push_back(placed);
    bins.sizes.push_back(static_cast<int>(bin.size()));
    placed += static_cast<int>(bin.size());
    bins.bins.push_back(std::move(bin));
  }
  return bins;
}

BinStructure FStarBins(const MarketInstance& instance,
                       const CommissionProfile& delta) {
  return MakeBins(FStarIndex(instance, delta));
}

std::vector<WeightedMenu> IndexMenuDistribution(
    const MarketInstance& instance, const CommissionProfile& delta) {
  const BinStructure bins = FStarBins(instance, delta);
  const auto m = static_cast<std::size_t>(instance.menu_size());

  std::vector<WeightedMenu> out;
  Menu menu;
  // Fill slots bin by bin; inside a bin pick an unused member per slot, so
  // every ordered selection of the bin's slots gets equal weight.
  auto place = [&](auto&& self, std::size_t bin, std::vector<bool>& used,
                   std::size_t filled_in_bin, double prob) -> void {
    if (menu.size() == m) {
      out.push_back({menu, prob});
      return;
    }
    const auto& members = bins.bins[bin];
    const std::size_t slots =
        std::min(members.size(), m - static_cast<std::size_t>(bins.offsets[bin]));
    if (filled_in_bin == slots) {
      std::vector<bool> fresh(bins.bins[bin + 1].size());
      self(self, bin + 1, fresh, 0, prob);
      return;
    }
    const double choices = static_cast<double>(members.size() - filled_in_bin);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      menu.order.push_back(members[i]);
      self(self, bin, used, filled_in_bin + 1, prob / choices);
      menu.order.pop_back();
      used[i] = false;
    }
  };
  std::vector<bool> used(bins.bins.front().size());
  place(place, 0, used, 0, 1.0);
  return out;
}

std::optional<double> MenuPricing::SellerPrice(const Menu& menu,
                                               int seller) const {
  auto pos = menu.PositionOf(seller);
  if (!pos) return std::nullopt;
  return prices[*pos];
}

MenuPricing RecursivePrices(const MarketInstance& instance,
                            const CommissionProfile& delta, const Menu& menu) {
  ValidateMenu(instance, menu);
  ValidateProfile(instance, delta);
  const std::size_t m = menu.size();
  MenuPricing pricing;
  pricing.prices.resize(m);
  pricing.stage_values.resize(m);
  double next = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    const int a = menu.order[k];
    const PriceChoice pc =
        InnerPriceOpt(instance, a, delta[static_cast<std::size_t>(a)], next);
    pricing.prices[k] = pc.price;
    pricing.stage_values[k] = pc.value;
    next = pc.value;
  }
  pricing.value = next;
  return pricing;
}

RandomizedPolicy ApproxPolicy(const MarketInstance& instance,
                              const CommissionProfile& delta) {
  RandomizedPolicy policy;
  for (auto& wm : IndexMenuDistribution(instance, delta)) {
    std::vector<double> prices;
    for (int a : wm.menu.order) prices.push_back(StandalonePrice(instance, a));
    policy.support.push_back({PricedMenu{std::move(wm.menu), std::move(prices)},
                              wm.probability});
  }
  return policy;
}

RandomizedPolicy IndexPolicy(const MarketInstance& instance,
                             const CommissionProfile& delta) {
  RandomizedPolicy policy;
  for (auto& wm : IndexMenuDistribution(instance, delta)) {
    MenuPricing pricing = RecursivePrices(instance, delta, wm.menu);
    policy.support.push_back(
        {PricedMenu{std::move(wm.menu), std::move(pricing.prices)},
         wm.probability});
  }
  return policy;
}

Menu FStarOrderMenu(const MarketInstance& instance,
                    const CommissionProfile& delta) {
  const std::vector<double> f = FStarIndex(instance, delta);
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return f[static_cast<std::size_t>(a)] > f[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(instance.menu_size()));
  return Menu{order};
}

bool FairPolicyIsIndexMenu(const MarketInstance& instance,
                           const CommissionProfile& delta) {
  const RandomizedPolicy fair = FairPolicy(instance, delta);
  return fair.support.size() == 1 &&
         fair.support.front().priced.menu == FStarOrderMenu(instance, delta);
}

GammaThreshold FindGammaBar(const MarketInstance& instance,
                            const CommissionProfile& delta, int iterations) {
  GammaThreshold result;
  const BinStructure bins = FStarBins(instance, delta);
  result.hypothesis_ok =
      bins.bins.size() == static_cast<std::size_t>(instance.n_sellers());
  if (!result.hypothesis_ok) return result;

  auto holds = [&](double g) {
    return FairPolicyIsIndexMenu(instance.WithGamma(g), delta);
  };
  double lo = 0.0;
  double hi = std::nextafter(1.0, 0.0);
  if (holds(hi)) {
    result.holds_everywhere = true;
    result.gamma_bar = 1.0;
    return result;
  }
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  result.gamma_bar = lo;
  return result;
}

std::vector<ApproxComparisonRow> CompareApprox(
    const MarketInstance& instance, const CommissionProfile& base, int seller,
    std::span<const double> gammas, std::span<const double> sweep) {
  ValidateProfile(instance, base);
  if (seller < 0 || seller >= instance.n_sellers()) {
    throw std::invalid_argument("swept seller out of range");
  }
  const auto a = static_cast<std::size_t>(seller);
  std::vector<ApproxComparisonRow> rows;
  for (double g : gammas) {
    const MarketInstance at = instance.WithGamma(g);
    for (double x : sweep) {
      const CommissionProfile delta = base.With(a, x);
      const RandomizedPolicy fair = FairPolicy(at, delta);
      const RandomizedPolicy approx = ApproxPolicy(at, delta);
      if (fair.support.size() != 1 || approx.support.size() != 1) continue;
      ApproxComparisonRow row;
      row.gamma = g;
      row.delta = x;
      row.exact = PolicyEvaluate(at, delta, fair).seller_utility[a];
      row.approx = PolicyEvaluate(at, delta, approx).seller_utility[a];
      if (row.exact == 0.0 && row.approx == 0.0) continue;
      row.rel_error = row.exact == 0.0
                          ? std::numeric_limits<double>::infinity()
                          : std::abs(row.exact - row.approx) / std::abs(row.exact);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace platgame
