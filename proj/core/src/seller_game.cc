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

#include "platgame/seller_game.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "platgame/rng.h"
#include "platgame/small_gamma.h"

namespace platgame {
namespace {

// Utility gains below this are treated as rounding noise, not moves.
constexpr double kMoveTolerance = 1e-12;

void RequireUnifiedModel(const MarketInstance& instance) {
  if (!instance.exponential()) {
    throw std::invalid_argument(
        "the unified seller game is derived for the exponential response");
  }
  for (double a : instance.alpha()) {
    if (instance.p_max() < 1.0 / a) {
      throw std::invalid_argument("p_max binds below 1 / alpha");
    }
  }
}

double SlotWeight(double gt, int offset, int size, int menu_size) {
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    if (offset + i + 1 <= menu_size) sum += std::pow(gt, i);
  }
  return std::pow(gt, offset) * sum / size;
}

}  // namespace

std::vector<double> UnifiedUtility(const MarketInstance& instance,
                                   const CommissionProfile& delta) {
  RequireUnifiedModel(instance);
  const BinStructure bins = FStarBins(instance, delta);
  const std::vector<double> eta = Eta(instance);
  const double gt = GammaTilde(instance);
  const double e = std::exp(1.0);

  std::vector<double> u(delta.size(), 0.0);
  for (std::size_t l = 0; l < bins.bins.size(); ++l) {
    if (bins.offsets[l] >= instance.menu_size()) break;
    const double weight =
        SlotWeight(gt, bins.offsets[l], bins.sizes[l], instance.menu_size());
    for (int a : bins.bins[l]) {
      const auto s = static_cast<std::size_t>(a);
      u[s] = (eta[s] - delta[s]) / (e * instance.alpha(s)) * weight;
    }
  }
  return u;
}

double UnifiedUtilityOf(const MarketInstance& instance,
                        const CommissionProfile& delta, int seller) {
  return UnifiedUtility(instance, delta)[static_cast<std::size_t>(seller)];
}

UnifiedPayoff::UnifiedPayoff(const MarketInstance& instance,
                             const CommissionProfile& delta)
    : menu_size_(instance.menu_size()),
      gt_(0.0),
      e_(std::exp(1.0)),
      alpha_(instance.alpha()),
      eta_(Eta(instance)),
      delta_(delta.values()) {
  RequireUnifiedModel(instance);
  ValidateProfile(instance, delta);
  gt_ = GammaTilde(instance);
  f_.resize(delta_.size());
  for (std::size_t a = 0; a < f_.size(); ++a) {
    f_[a] = delta_[a] / (e_ * alpha_[a]);
  }
  scratch_f_ = f_;
  order_.resize(f_.size());
}

void UnifiedPayoff::Set(int seller, double own) {
  const auto i = static_cast<std::size_t>(seller);
  delta_.at(i) = own;
  f_[i] = own / (e_ * alpha_[i]);
}

double UnifiedPayoff::operator()(int seller, double own) const {
  const auto i = static_cast<std::size_t>(seller);
  scratch_f_ = f_;
  scratch_f_[i] = own / (e_ * alpha_[i]);
  // Stable insertion sort by index descending, as in MakeBins.
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const int a = static_cast<int>(k);
    std::size_t j = k;
    while (j > 0 && scratch_f_[static_cast<std::size_t>(order_[j - 1])] <
                        scratch_f_[k]) {
      order_[j] = order_[j - 1];
      --j;
    }
    order_[j] = a;
  }
  int offset = 0;
  for (std::size_t k = 0; k < order_.size();) {
    const double head = scratch_f_[static_cast<std::size_t>(order_[k])];
    std::size_t end = k;
    bool mine = false;
    while (end < order_.size() &&
           tied(scratch_f_[static_cast<std::size_t>(order_[end])], head)) {
      mine = mine || order_[end] == seller;
      ++end;
    }
    const int size = static_cast<int>(end - k);
    if (mine) {
      if (offset >= menu_size_) return 0.0;
      return (eta_[i] - own) / (e_ * alpha_[i]) *
             SlotWeight(gt_, offset, size, menu_size_);
    }
    offset += size;
    k = end;
  }
  return 0.0;
}

std::vector<double> DisplayProbabilities(const MarketInstance& instance,
                                         const CommissionProfile& delta) {
  const BinStructure bins = FStarBins(instance, delta);
  const int m = instance.menu_size();
  std::vector<double> shown(delta.size(), 0.0);
  for (std::size_t l = 0; l < bins.bins.size(); ++l) {
    const int slots = std::clamp(m - bins.offsets[l], 0, bins.sizes[l]);
    for (int a : bins.bins[l]) {
      shown[static_cast<std::size_t>(a)] =
          static_cast<double>(slots) / bins.sizes[l];
    }
  }
  return shown;
}

void BRConfig::Validate() const {
  if (!(grid_step > 0.0 && grid_step <= undercut)) {
    throw std::invalid_argument("need 0 < grid_step <= undercut");
  }
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(burn_in >= 0 && burn_in < max_iters)) {
    throw std::invalid_argument("need 0 <= burn_in < max_iters");
  }
}

std::vector<double> BestResponseCandidates(const MarketInstance& instance,
                                           const CommissionProfile& delta,
                                           int seller, double grid_step,
                                           double undercut) {
  const auto i = static_cast<std::size_t>(seller);
  std::vector<double> out;
  const long long steps = std::llround(1.0 / grid_step);
  const bool exact = std::abs(static_cast<double>(steps) * grid_step - 1.0) < 1e-12;
  if (exact) {
    for (long long k = 0; k <= steps; ++k) {
      out.push_back(static_cast<double>(k) / static_cast<double>(steps));
    }
  } else {
    for (long long k = 0; static_cast<double>(k) * grid_step < 1.0; ++k) {
      out.push_back(static_cast<double>(k) * grid_step);
    }
    out.push_back(1.0);
  }
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (j == i) continue;
    const double matched = delta[j] * instance.alpha(i) / instance.alpha(j);
    out.push_back(std::clamp(matched + undercut, 0.0, 1.0));
    out.push_back(std::clamp(matched - undercut, 0.0, 1.0));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<double> EpsilonBestResponse(const MarketInstance& instance,
                                          const CommissionProfile& delta,
                                          int seller, const BRConfig& config) {
  const auto i = static_cast<std::size_t>(seller);
  const UnifiedPayoff payoff(instance, delta);
  const double current = payoff(seller, delta[i]);
  double best = -std::numeric_limits<double>::infinity();
  double best_delta = delta[i];
  for (double c : BestResponseCandidates(instance, delta, seller,
                                         config.grid_step, config.undercut)) {
    const double u = payoff(seller, c);
    if (u > best) {
      best = u;
      best_delta = c;
    }
  }
  // The candidate maximum is epsilon-best for every epsilon >= 0, so only
  // strict improvement needs checking here.
  if (best > current + kMoveTolerance && best_delta != delta[i]) {
    return best_delta;
  }
  return std::nullopt;
}

BRTrace BrDynamics(const MarketInstance& instance,
                   const CommissionProfile& start, const BRConfig& config) {
  config.Validate();
  ValidateProfile(instance, start);
  const int n = instance.n_sellers();
  Rng rng(config.seed);

  BRTrace trace;
  trace.initial = start;
  CommissionProfile current = start;
  int misses = 0;
  for (int it = 1; it <= config.max_iters; ++it) {
    const int mover = static_cast<int>(rng.Index(static_cast<std::size_t>(n)));
    if (auto move = EpsilonBestResponse(instance, current, mover, config)) {
      current = current.With(static_cast<std::size_t>(mover), *move);
      trace.steps.push_back({it, mover, current,
                             UnifiedUtilityOf(instance, current, mover)});
      misses = 0;
    } else if (++misses >= n) {
      bool any = false;
      for (int s = 0; s < n && !any; ++s) {
        any = EpsilonBestResponse(instance, current, s, config).has_value();
      }
      misses = 0;
      if (!any) trace.converged = true;
    }
    trace.history.push_back(current);
    trace.iterations_run = it;
    if (trace.converged) break;
  }
  trace.final_profile = current;

  const auto dim = static_cast<std::size_t>(n);
  trace.band_min.assign(dim, std::numeric_limits<double>::infinity());
  trace.band_max.assign(dim, -std::numeric_limits<double>::infinity());
  const std::size_t from =
      std::min(static_cast<std::size_t>(config.burn_in),
               trace.history.empty() ? 0 : trace.history.size() - 1);
  for (std::size_t k = from; k < trace.history.size(); ++k) {
    for (std::size_t a = 0; a < dim; ++a) {
      trace.band_min[a] = std::min(trace.band_min[a], trace.history[k][a]);
      trace.band_max[a] = std::max(trace.band_max[a], trace.history[k][a]);
    }
  }
  return trace;
}

}  // namespace platgame
