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

#ifndef PLATGAME_EQUILIBRIUM_H_
#define PLATGAME_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "platgame/model.h"

namespace platgame {

// Equilibrium checks for the unified seller game (see UnifiedUtility).
// Sellers are taken in the order given; the threshold and cycle results
// assume that order ranks them by strictly decreasing eta.

// Reasons the instance falls outside the equilibrium-cycle hypotheses:
// eta not strictly decreasing, eta_N <= 0, M < 2, M >= N, non-common alpha,
// non-exponential response. Empty when all hold.
std::vector<std::string> HypothesisViolations(const MarketInstance& instance);

struct Thresholds {
  // eta_tilde[k - 1] for k = 1..M+1.
  std::vector<double> eta_tilde;
  std::vector<std::string> hypothesis_violations;
  // The M-1 threshold recomputed with the general-k rule; it can differ from
  // the dedicated M-1 rule used for eta_tilde.
  double alternative_m_minus_1 = 0.0;
  bool readings_diverge = false;
};

Thresholds ThresholdsEtaTilde(const MarketInstance& instance);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool Contains(double x) const { return x >= lo && x <= hi; }
  bool Singleton() const { return lo == hi; }
  bool Empty() const { return lo > hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of one closed interval (possibly a single point) per seller.
struct ECBox {
  std::vector<Interval> components;

  bool Contains(const CommissionProfile& delta) const;
  // Number of coordinates lying outside their component.
  int ExternalCount(const CommissionProfile& delta) const;
  bool Valid() const;
  bool IsSubsetOf(const ECBox& other) const;
  bool IsStrictSubsetOf(const ECBox& other) const;
  // Uniform on intervals, fixed on singletons.
  template <typename Gen>
  CommissionProfile Sample(Gen& rng) const {
    std::vector<double> d;
    d.reserve(components.size());
    for (const Interval& c : components) {
      d.push_back(c.Singleton() ? c.lo : rng.Uniform(c.lo, c.hi));
    }
    return CommissionProfile(std::move(d));
  }
};

// [eta_{M+1}, eta~_2]^2 x [eta_{M+1}, eta~_3] x ... x [eta_{M+1}, eta~_M]
//   x {eta_{M+1}} x ... x {eta_N}.
ECBox EcBox(const MarketInstance& instance);

struct Witness {
  CommissionProfile profile;  // profile the check was run at
  int seller = 0;
  double deviation = 0.0;     // offending (or best found) commission
  double gain = 0.0;          // utility margin that broke the property
};

struct VerificationReport {
  std::string property;
  int samples = 0;
  std::vector<Witness> violations;

  bool pass() const { return violations.empty(); }
  std::string verdict() const { return pass() ? "pass" : "fail"; }
};

struct DeviationGrid {
  int points = 1001;        // evenly spaced over [0, 1]
  double undercut = 1e-3;   // opponent-matching offset, as in BR dynamics
};

// Improvement threshold for the Nash scan.
inline constexpr double kNashTolerance = 1e-9;

VerificationReport VerifyNash(const MarketInstance& instance,
                              const CommissionProfile& profile,
                              const DeviationGrid& grid = {});

VerificationReport VerifyEpsNash(const MarketInstance& instance,
                                 const CommissionProfile& profile,
                                 double epsilon,
                                 const DeviationGrid& grid = {});

// (eta_1 - eta_{M+1}) / min{e min_{k<=M} alpha_k, 1}: every epsilon above
// this satisfies the epsilon-equilibrium hypothesis.
double EpsNashHypothesisBound(const MarketInstance& instance);

/// Candidate resolution of the sampled cycle checks. Besides the grid, every
/// opponent-matching breakpoint b contributes b, b +- undercut and b +- fine,
/// so the supremum of each piece of the piecewise-linear utility is reached
/// to within `fine`.
struct SearchOptions {
  double grid_step = 1e-3;
  double undercut = 1e-3;
  double fine = 1e-7;
};

VerificationReport CheckStability(const MarketInstance& instance,
                                  const ECBox& box, int samples,
                                  std::uint64_t seed,
                                  const SearchOptions& options = {});

VerificationReport CheckUnrest(const MarketInstance& instance,
                               const ECBox& box, int samples,
                               std::uint64_t seed,
                               const SearchOptions& options = {});

struct UnrestMove {
  int seller = 0;
  double commission = 0.0;
  double gain = 0.0;
};

// A seller and an in-box commission that strictly improves on the current
// one and beats every commission outside the seller's component.
std::optional<UnrestMove> FindUnrestMove(const MarketInstance& instance,
                                         const ECBox& box,
                                         const CommissionProfile& profile,
                                         const SearchOptions& options = {});

/// Depth-first search for a chain of `max_depth` epsilon-best unilateral
/// moves from `start` in which the m-th profile has exactly m coordinates
/// outside the box. Returns the chain (excluding `start`) when one exists.
std::optional<std::vector<CommissionProfile>> SearchExternalTail(
    const MarketInstance& instance, const ECBox& box,
    const CommissionProfile& start, double epsilon, int max_depth,
    const SearchOptions& options = {});

// Runs stability then unrest on `candidate`, which must be a strict subset
// of EcBox(instance) (std::invalid_argument otherwise). The report carries
// the violations of the first property that failed; property is
// "falsify:stability", "falsify:unrest" or "falsify:none".
VerificationReport FalsifySubset(const MarketInstance& instance,
                                 const ECBox& candidate, int samples,
                                 std::uint64_t seed,
                                 const SearchOptions& options = {});

// Sub-boxes probing minimality: "shrunk-left" raises every lower end of the
// top-M components by `shrink`; "shrunk-right" lowers the upper end of
// seller M's component by `shrink`.
std::vector<std::pair<std::string, ECBox>> CanonicalSubBoxes(
    const MarketInstance& instance, double shrink = 0.02);

/// Samples (k <= M, delta > eta~_k, opponents from the box) and looks for a
/// strictly better commission in [eta_{M+1}, eta~_k]. Opponent draws with
/// delta_2 == eta~_2 are excluded for k = 1 (probability zero).
VerificationReport CheckThresholdProperty(const MarketInstance& instance,
                                          int samples, std::uint64_t seed,
                                          const SearchOptions& options = {});

}  // namespace platgame

#endif  // PLATGAME_EQUILIBRIUM_H_
