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

#ifndef PLATGAME_SELLER_GAME_H_
#define PLATGAME_SELLER_GAME_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "platgame/model.h"

namespace platgame {

/// Seller utilities when the platform answers every commission profile with
/// the small-gamma index policy (exponential response). Sellers in bin B_l
/// (ranked by delta / alpha) share the slots k_l+1 .. k_l+b_l uniformly:
///
///   U_a = (eta_a - delta_a) / (e alpha_a) * gt^k_l
///         * sum_{i < b_l, k_l+i+1 <= M} gt^i / b_l,   gt = gamma (1 - 1/e).
///
/// Throws for a non-exponential response or when p_max < 1 / alpha_a.
std::vector<double> UnifiedUtility(const MarketInstance& instance,
                                   const CommissionProfile& delta);

// Utility of one seller; same formula as UnifiedUtility.
double UnifiedUtilityOf(const MarketInstance& instance,
                        const CommissionProfile& delta, int seller);

/// UnifiedUtility for one seller at a time with the other commissions held
/// fixed. Gives the same values as UnifiedUtility without rebuilding the bin
/// structure per call; scratch space makes it unsafe to share across threads.
class UnifiedPayoff {
 public:
  UnifiedPayoff(const MarketInstance& instance, const CommissionProfile& delta);

  // Utility of `seller` when it alone moves to commission `own`.
  double operator()(int seller, double own) const;
  // Moves `seller` in the stored base profile.
  void Set(int seller, double own);

 private:
  int menu_size_;
  double gt_;
  double e_;
  std::vector<double> alpha_;
  std::vector<double> eta_;
  std::vector<double> delta_;
  std::vector<double> f_;
  mutable std::vector<double> scratch_f_;
  mutable std::vector<int> order_;
};

// Probability that each seller is displayed under the index policy.
std::vector<double> DisplayProbabilities(const MarketInstance& instance,
                                         const CommissionProfile& delta);

struct BRConfig {
  double grid_step = 1e-3;  // h
  double undercut = 1e-3;   // offset placed just above/below an opponent
  double epsilon = 1e-4;
  int max_iters = 500;
  int burn_in = 100;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on 0 < h <= undercut, epsilon >= 0 or
  // burn_in < max_iters violations.
  void Validate() const;
};

// Commissions seller i considers: the grid {0, h, ..., 1} plus, for every
// opponent j, delta_j * alpha_i / alpha_j +- undercut clipped to [0, 1].
// Sorted and deduplicated.
std::vector<double> BestResponseCandidates(const MarketInstance& instance,
                                           const CommissionProfile& delta,
                                           int seller, double grid_step,
                                           double undercut);

/// The utility-maximizing candidate if it strictly improves seller i's
/// utility and lies within epsilon of the candidate maximum; nullopt when
/// no such move exists.
std::optional<double> EpsilonBestResponse(const MarketInstance& instance,
                                          const CommissionProfile& delta,
                                          int seller, const BRConfig& config);

struct BRStep {
  int iteration = 0;
  int mover = 0;
  CommissionProfile profile;  // after the move
  double utility = 0.0;       // mover's utility after the move
};

struct BRTrace {
  CommissionProfile initial;
  std::vector<BRStep> steps;
  // Profile at the end of every iteration that was run.
  std::vector<CommissionProfile> history;
  CommissionProfile final_profile;
  bool converged = false;
  int iterations_run = 0;
  // Per-seller min / max of the commission over iterations >= burn_in.
  std::vector<double> band_min;
  std::vector<double> band_max;
};

/// Random-mover epsilon-best-response dynamics. Each iteration picks a
/// seller uniformly (seeded) and applies EpsilonBestResponse. The run stops
/// early, flagged converged, once N consecutive picks made no move and a
/// scan confirms that no seller has a move.
BRTrace BrDynamics(const MarketInstance& instance,
                   const CommissionProfile& start, const BRConfig& config);

}  // namespace platgame

#endif  // PLATGAME_SELLER_GAME_H_
