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

#ifndef PLATGAME_SMALL_GAMMA_H_
#define PLATGAME_SMALL_GAMMA_H_

#include <span>
#include <vector>

#include "platgame/model.h"

namespace platgame {

// Index policies that solve the platform problem in closed form when the
// continuation probability is small.

// f*(a) = max_p delta_a beta_a(p) p, the best immediate reward of seller a.
// Exponential response: delta_a / (e alpha_a).
std::vector<double> FStarIndex(const MarketInstance& instance,
                               const CommissionProfile& delta);

// argmax_p beta_a(p) p on [0, p_max]; 1 / alpha_a for the exponential family.
double StandalonePrice(const MarketInstance& instance, int seller);

// h(a) = beta p* delta / (1 - gamma (1 - beta)) at the stand-alone price.
std::vector<double> HIndex(const MarketInstance& instance,
                           const CommissionProfile& delta);

/// Sellers grouped by equal index value, best group first.
struct BinStructure {
  std::vector<std::vector<int>> bins;  // seller ids, ascending inside a bin
  std::vector<int> offsets;            // k_l: sellers ranked before bin l
  std::vector<int> sizes;              // b_l

  // Index of the bin holding `seller`.
  int BinOf(int seller) const;
};

// Groups by descending `index`; entries tied to kTieTolerance share a bin.
BinStructure MakeBins(std::span<const double> index);

BinStructure FStarBins(const MarketInstance& instance,
                       const CommissionProfile& delta);

struct WeightedMenu {
  Menu menu;
  double probability = 0.0;
};

/// Menus obtained by placing f* bins in order, each bin uniformly permuted
/// over its slots; a bin straddling position M is spread uniformly over the
/// ordered selections of the remaining slots.
std::vector<WeightedMenu> IndexMenuDistribution(const MarketInstance& instance,
                                                const CommissionProfile& delta);

struct MenuPricing {
  std::vector<double> prices;         // by position
  std::vector<double> stage_values;   // v*_k by position
  double value = 0.0;                 // v*_1

  // Price offered to `seller` in this menu (seller-indexed view).
  std::optional<double> SellerPrice(const Menu& menu, int seller) const;
};

// Backward price recursion for a fixed menu.
MenuPricing RecursivePrices(const MarketInstance& instance,
                            const CommissionProfile& delta, const Menu& menu);

// Index menus with every seller at its stand-alone price.
RandomizedPolicy ApproxPolicy(const MarketInstance& instance,
                              const CommissionProfile& delta);

// Index menus with the recursive prices of each menu.
RandomizedPolicy IndexPolicy(const MarketInstance& instance,
                             const CommissionProfile& delta);

// Top-M sellers by f*, with ties broken by seller id.
Menu FStarOrderMenu(const MarketInstance& instance,
                    const CommissionProfile& delta);

struct GammaThreshold {
  bool hypothesis_ok = false;     // f* strictly decreasing across sellers
  bool holds_everywhere = false;  // identity holds up to gamma -> 1
  double gamma_bar = 0.0;
};

/// Bisection on gamma for the largest value below which the fair policy is
/// the single f*-order menu. The instance's own gamma is ignored.
GammaThreshold FindGammaBar(const MarketInstance& instance,
                            const CommissionProfile& delta,
                            int iterations = 50);

// True when FairPolicy at this instance is exactly the f*-order menu.
bool FairPolicyIsIndexMenu(const MarketInstance& instance,
                           const CommissionProfile& delta);

struct ApproxComparisonRow {
  double gamma = 0.0;
  double delta = 0.0;   // swept seller's commission
  double exact = 0.0;   // utility under the fair DP policy
  double approx = 0.0;  // utility under ApproxPolicy
  double rel_error = 0.0;
};

/// Sweeps seller \`seller\`'s commission over \`sweep\` with the rest of
/// \`base\` fixed, for each gamma. Keeps only profiles where both the fair
/// and the approximate policy are deterministic and the swept seller earns
/// something under one of them. rel_error = |exact - approx| / |exact|.
std::vector<ApproxComparisonRow> CompareApprox(
    const MarketInstance& instance, const CommissionProfile& base, int seller,
    std::span<const double> gammas, std::span<const double> sweep);

}  // namespace platgame

#endif  // PLATGAME_SMALL_GAMMA_H_
