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

#include "platgame/platform_mdp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace platgame {
namespace {

// Calls fn(mask) for every subset of {0..n-1} with exactly k members.
template <typename Fn>
void ForEachSubset(int n, int k, Fn&& fn) {
  if (k == 0) {
    fn(SellerSet{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  while (mask < limit) {
    fn(static_cast<SellerSet>(mask));
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

double Objective(const MarketInstance& instance, std::size_t a, double delta_a,
                 double continuation, double p) {
  const double beta = instance.Beta(a, p);
  return beta * (delta_a * p - instance.gamma() * continuation) +
         instance.gamma() * continuation;
}

}  // namespace

SellerSet AllSellers(int n_sellers) {
  return static_cast<SellerSet>((std::uint64_t{1} << n_sellers) - 1);
}

PriceChoice InnerPriceOpt(const MarketInstance& instance, int seller,
                          double delta_a, double continuation) {
  if (continuation < 0.0) {
    throw std::invalid_argument("continuation value must be non-negative");
  }
  if (!(delta_a >= 0.0 && delta_a <= 1.0)) {
    throw std::invalid_argument("commission must lie in [0, 1]");
  }
  const auto a = static_cast<std::size_t>(seller);
  const double p_max = instance.p_max();
  const double gc = instance.gamma() * continuation;

  PriceChoice choice;
  if (delta_a == 0.0) {
    choice.price = p_max;
    choice.value = gc * (1.0 - instance.Beta(a, p_max));
    choice.commission_zero = true;
    return choice;
  }

  double p = 0.0;
  if (instance.exponential()) {
    p = 1.0 / instance.alpha(a) + gc / delta_a;
  } else {
    // d/dp [beta (delta p - gc)] = beta delta + beta' (delta p - gc); it is
    // positive at 0 and has a single sign change under the model assumptions.
    auto stationarity = [&](double q) {
      return instance.Beta(a, q) * delta_a +
             instance.BetaDerivative(a, q) * (delta_a * q - gc);
    };
    if (stationarity(p_max) >= 0.0) {
      p = p_max;
    } else {
      std::uintmax_t max_iter = 200;
      auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-12; };
      auto bracket = boost::math::tools::toms748_solve(
          stationarity, 0.0, p_max, tol, max_iter);
      p = 0.5 * (bracket.first + bracket.second);
    }
  }
  choice.price = std::clamp(p, 0.0, p_max);
  choice.value = Objective(instance, a, delta_a, continuation, choice.price);
  return choice;
}

ValueTable::ValueTable(int menu_size)
    : stages_(static_cast<std::size_t>(menu_size)) {}

double ValueTable::Value(int stage, SellerSet state) const {
  if (state == 0 || stage > menu_size()) return 0.0;
  const auto& table = stages_.at(static_cast<std::size_t>(stage - 1));
  auto it = table.find(state);
  if (it == table.end()) {
    throw std::out_of_range("state not reachable at this stage");
  }
  return it->second;
}

bool ValueTable::Has(int stage, SellerSet state) const {
  if (stage < 1 || stage > menu_size()) return false;
  return stages_[static_cast<std::size_t>(stage - 1)].contains(state);
}

void ValueTable::Set(int stage, SellerSet state, double value) {
  stages_.at(static_cast<std::size_t>(stage - 1))[state] = value;
}

std::size_t ValueTable::StateCount() const {
  std::size_t total = 0;
  for (const auto& s : stages_) total += s.size();
  return total;
}

OptimizerSet::OptimizerSet(int menu_size)
    : stages_(static_cast<std::size_t>(menu_size)) {}

const std::vector<Optimizer>& OptimizerSet::At(int stage,
                                               SellerSet state) const {
  return stages_.at(static_cast<std::size_t>(stage - 1)).at(state);
}

void OptimizerSet::Set(int stage, SellerSet state,
                       std::vector<Optimizer> optimizers) {
  stages_.at(static_cast<std::size_t>(stage - 1))[state] =
      std::move(optimizers);
}

PlatformSolution SolveDp(const MarketInstance& instance,
                         const CommissionProfile& delta) {
  ValidateProfile(instance, delta);
  const int n = instance.n_sellers();
  const int m = instance.menu_size();
  if (n > kMaxDpSellers) {
    throw std::invalid_argument("too many sellers for the subset DP");
  }

  PlatformSolution solution{ValueTable(m), OptimizerSet(m), AllSellers(n)};
  std::vector<Optimizer> candidates;
  for (int t = m; t >= 1; --t) {
    ForEachSubset(n, n - t + 1, [&](SellerSet x) {
      candidates.clear();
      double best = -1.0;
      for (int a = 0; a < n; ++a) {
        const SellerSet bit = SellerSet{1} << a;
        if (!(x & bit)) continue;
        const double cont = solution.values.Value(t + 1, x & ~bit);
        const PriceChoice pc =
            InnerPriceOpt(instance, a, delta[static_cast<std::size_t>(a)], cont);
        candidates.push_back({a, pc.price, pc.value});
        best = std::max(best, pc.value);
      }
      std::vector<Optimizer> argmax;
      for (const Optimizer& o : candidates) {
        if (o.q_value >= best || tied(o.q_value, best)) argmax.push_back(o);
      }
      solution.values.Set(t, x, best);
      solution.optimizers.Set(t, x, std::move(argmax));
    });
  }
  return solution;
}

RandomizedPolicy FairPolicy(const MarketInstance& instance,
                            const PlatformSolution& solution) {
  const int m = instance.menu_size();
  std::map<Menu, std::vector<RandomizedPolicy::Entry>> merged;

  Menu menu;
  std::vector<double> prices;
  auto unroll = [&](auto&& self, int stage, SellerSet x, double prob) -> void {
    if (stage > m) {
      auto& bucket = merged[menu];
      for (auto& entry : bucket) {
        bool same = true;
        for (std::size_t j = 0; j < prices.size(); ++j) {
          if (std::abs(entry.priced.prices[j] - prices[j]) > 1e-12) same = false;
        }
        if (same) {
          entry.probability += prob;
          return;
        }
      }
      bucket.push_back({PricedMenu{menu, prices}, prob});
      return;
    }
    const auto& opts = solution.optimizers.At(stage, x);
    const double share = prob / static_cast<double>(opts.size());
    for (const Optimizer& o : opts) {
      menu.order.push_back(o.seller);
      prices.push_back(o.price);
      self(self, stage + 1, x & ~(SellerSet{1} << o.seller), share);
      menu.order.pop_back();
      prices.pop_back();
    }
  };
  unroll(unroll, 1, solution.initial, 1.0);

  RandomizedPolicy policy;
  for (auto& [key, bucket] : merged) {
    for (auto& entry : bucket) policy.support.push_back(std::move(entry));
  }
  return policy;
}

RandomizedPolicy FairPolicy(const MarketInstance& instance,
                            const CommissionProfile& delta) {
  return FairPolicy(instance, SolveDp(instance, delta));
}

}  // namespace platgame
