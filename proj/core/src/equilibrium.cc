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

#include "platgame/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "platgame/rng.h"
#include "platgame/seller_game.h"

namespace platgame {
namespace {

// Strictness margin for the sampled cycle checks.
constexpr double kStrictMargin = 1e-12;
constexpr double kBoxTolerance = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> RichCandidates(const MarketInstance& instance,
                                   const CommissionProfile& delta, int seller,
                                   const SearchOptions& options,
                                   std::initializer_list<double> endpoints) {
  std::vector<double> out = BestResponseCandidates(
      instance, delta, seller, options.grid_step, options.undercut);
  const auto i = static_cast<std::size_t>(seller);
  auto add_around = [&](double b) {
    for (double off : {0.0, options.fine, -options.fine, options.undercut,
                       -options.undercut}) {
      const double c = b + off;
      if (c >= 0.0 && c <= 1.0) out.push_back(c);
    }
  };
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (j != i) add_around(delta[j] * instance.alpha(i) / instance.alpha(j));
  }
  for (double e : endpoints) add_around(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SplitMax {
  double inside = kNegInf;
  double inside_at = 0.0;
  double outside = kNegInf;
  double outside_at = 0.0;
};

// Best utility of seller i inside and outside its component.
SplitMax ScanSeller(const MarketInstance& instance, const UnifiedPayoff& payoff,
                    const CommissionProfile& delta, int seller,
                    const Interval& component, const SearchOptions& options) {
  SplitMax r;
  for (double c : RichCandidates(instance, delta, seller, options,
                                 {component.lo, component.hi})) {
    const double u = payoff(seller, c);
    if (component.Contains(c)) {
      if (u > r.inside) {
        r.inside = u;
        r.inside_at = c;
      }
    } else if (u > r.outside) {
      r.outside = u;
      r.outside_at = c;
    }
  }
  return r;
}

// Singleton components get the weak comparison: every outside action of a
// seller pinned at its own eta is worth at most zero, as is staying.
bool InsideDominates(const Interval& component, const SplitMax& s) {
  if (component.Singleton()) return s.inside >= s.outside - kStrictMargin;
  return s.inside > s.outside + kStrictMargin;
}

void RequireBoxShape(const MarketInstance& instance, const ECBox& box) {
  if (box.components.size() != static_cast<std::size_t>(instance.n_sellers())) {
    throw std::invalid_argument("box needs one component per seller");
  }
  if (!box.Valid()) throw std::invalid_argument("box has an empty component");
}

}  // namespace

std::vector<std::string> HypothesisViolations(const MarketInstance& instance) {
  std::vector<std::string> out;
  const std::vector<double> eta = Eta(instance);
  const int n = instance.n_sellers();
  const int m = instance.menu_size();
  for (std::size_t k = 1; k < eta.size(); ++k) {
    if (!(eta[k - 1] > eta[k])) {
      out.push_back("eta is not strictly decreasing in seller order");
      break;
    }
  }
  if (!(eta.back() > 0.0)) out.push_back("eta_N must be positive");
  if (m < 2) out.push_back("menu_size must be >= 2");
  if (m >= n) out.push_back("menu_size must be < n_sellers");
  const auto& alpha = instance.alpha();
  if (std::any_of(alpha.begin(), alpha.end(),
                  [&](double a) { return a != alpha.front(); })) {
    out.push_back("alpha is not common to all sellers");
  }
  if (!instance.exponential()) out.push_back("response is not exponential");
  return out;
}

Thresholds ThresholdsEtaTilde(const MarketInstance& instance) {
  Thresholds t;
  t.hypothesis_violations = HypothesisViolations(instance);
  const std::vector<double> eta = Eta(instance);
  const int m = instance.menu_size();
  if (m >= instance.n_sellers()) {
    throw std::invalid_argument("thresholds need menu_size < n_sellers");
  }
  const double gt = instance.gamma() * (1.0 - std::exp(-1.0));
  auto at = [&](int k) { return eta[static_cast<std::size_t>(k - 1)]; };
  const double floor = at(m + 1);

  t.eta_tilde.assign(static_cast<std::size_t>(m + 1), 0.0);
  auto set = [&](int k, double v) { t.eta_tilde[static_cast<std::size_t>(k - 1)] = v; };
  auto get = [&](int k) { return t.eta_tilde[static_cast<std::size_t>(k - 1)]; };
  auto general = [&](int k) {
    double best = kNegInf;
    for (int j = k; j <= m; ++j) {
      best = std::max(best, at(k) - (at(k) - floor) * std::pow(gt, j - 1));
    }
    return best;
  };

  set(m + 1, floor);
  set(m, at(m) - (at(m) - floor) * std::pow(gt, m - 1));
  if (m - 1 >= 1) {
    const int k = m - 1;
    set(k, std::max(at(k) - (at(k) - get(m)) * std::pow(gt, m - 2),
                    at(k) - (at(k) - get(m + 1)) * std::pow(gt, m - 1)));
    t.alternative_m_minus_1 = general(k);
    t.readings_diverge = !tied(t.alternative_m_minus_1, get(k)) &&
                         std::abs(t.alternative_m_minus_1 - get(k)) > 1e-15;
  }
  for (int k = m - 2; k >= 2; --k) set(k, general(k));
  if (m >= 2) set(1, get(2));
  for (int k = 1; k <= m; ++k) {
    if (get(k) < floor) {
      t.hypothesis_violations.push_back("eta_tilde_" + std::to_string(k) +
                                        " falls below eta_{M+1}");
    }
  }
  return t;
}

bool ECBox::Contains(const CommissionProfile& delta) const {
  return ExternalCount(delta) == 0;
}

int ECBox::ExternalCount(const CommissionProfile& delta) const {
  if (delta.size() != components.size()) {
    throw std::invalid_argument("profile and box sizes differ");
  }
  int count = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!components[i].Contains(delta[i])) ++count;
  }
  return count;
}

bool ECBox::Valid() const {
  return !components.empty() &&
         std::none_of(components.begin(), components.end(),
                      [](const Interval& c) { return c.Empty(); });
}

bool ECBox::IsSubsetOf(const ECBox& other) const {
  if (components.size() != other.components.size()) return false;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].lo < other.components[i].lo - kBoxTolerance ||
        components[i].hi > other.components[i].hi + kBoxTolerance) {
      return false;
    }
  }
  return true;
}

bool ECBox::IsStrictSubsetOf(const ECBox& other) const {
  if (!IsSubsetOf(other)) return false;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (std::abs(components[i].lo - other.components[i].lo) > kBoxTolerance ||
        std::abs(components[i].hi - other.components[i].hi) > kBoxTolerance) {
      return true;
    }
  }
  return false;
}

ECBox EcBox(const MarketInstance& instance) {
  const Thresholds t = ThresholdsEtaTilde(instance);
  const std::vector<double> eta = Eta(instance);
  const auto m = static_cast<std::size_t>(instance.menu_size());
  const double floor = eta[m];
  ECBox box;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (i < m) {
      const double hi = i < 2 ? t.eta_tilde[1] : t.eta_tilde[i];
      box.components.push_back({floor, hi});
    } else {
      box.components.push_back({eta[i], eta[i]});
    }
  }
  return box;
}

VerificationReport VerifyEpsNash(const MarketInstance& instance,
                                 const CommissionProfile& profile,
                                 double epsilon, const DeviationGrid& grid) {
  if (grid.points < 2) throw std::invalid_argument("grid needs >= 2 points");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  VerificationReport report;
  report.property = epsilon > 0.0 ? "eps-nash" : "nash";
  report.samples = 1;
  const UnifiedPayoff payoff(instance, profile);
  const double step = 1.0 / (grid.points - 1);
  const double slack = std::max(epsilon, kNashTolerance);
  for (int i = 0; i < instance.n_sellers(); ++i) {
    const auto s = static_cast<std::size_t>(i);
    const double current = payoff(i, profile[s]);
    std::vector<double> cand = BestResponseCandidates(instance, profile, i,
                                                      step, grid.undercut);
    double best = kNegInf;
    double best_at = profile[s];
    for (double c : cand) {
      const double u = payoff(i, c);
      if (u > best) {
        best = u;
        best_at = c;
      }
    }
    if (best - current > slack) {
      report.violations.push_back({profile, i, best_at, best - current});
    }
  }
  return report;
}

VerificationReport VerifyNash(const MarketInstance& instance,
                              const CommissionProfile& profile,
                              const DeviationGrid& grid) {
  return VerifyEpsNash(instance, profile, 0.0, grid);
}

double EpsNashHypothesisBound(const MarketInstance& instance) {
  const std::vector<double> eta = Eta(instance);
  const auto m = static_cast<std::size_t>(instance.menu_size());
  if (m >= eta.size()) throw std::invalid_argument("need menu_size < n_sellers");
  const auto& alpha = instance.alpha();
  const double scale = std::min(
      std::exp(1.0) *
          *std::min_element(alpha.begin(),
                            alpha.begin() + static_cast<std::ptrdiff_t>(m)),
      1.0);
  return (eta.front() - eta[m]) / scale;
}

VerificationReport CheckStability(const MarketInstance& instance,
                                  const ECBox& box, int samples,
                                  std::uint64_t seed,
                                  const SearchOptions& options) {
  RequireBoxShape(instance, box);
  VerificationReport report;
  report.property = "stability";
  report.samples = samples;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CommissionProfile draw = box.Sample(rng);
    UnifiedPayoff payoff(instance, draw);
    for (int i = 0; i < instance.n_sellers(); ++i) {
      const Interval& comp = box.components[static_cast<std::size_t>(i)];
      const SplitMax r = ScanSeller(instance, payoff, draw, i, comp, options);
      if (r.outside == kNegInf) continue;  // component covers [0, 1]
      if (!InsideDominates(comp, r)) {
        report.violations.push_back({draw.With(static_cast<std::size_t>(i),
                                               r.inside_at),
                                     i, r.outside_at, r.outside - r.inside});
      }
    }
  }
  return report;
}

std::optional<UnrestMove> FindUnrestMove(const MarketInstance& instance,
                                         const ECBox& box,
                                         const CommissionProfile& profile,
                                         const SearchOptions& options) {
  RequireBoxShape(instance, box);
  const UnifiedPayoff payoff(instance, profile);
  for (int i = 0; i < instance.n_sellers(); ++i) {
    const auto s = static_cast<std::size_t>(i);
    const Interval& comp = box.components[s];
    if (comp.Singleton()) continue;
    const double current = payoff(i, profile[s]);
    const SplitMax r = ScanSeller(instance, payoff, profile, i, comp, options);
    if (r.inside > current + kStrictMargin &&
        r.inside > r.outside + kStrictMargin) {
      return UnrestMove{i, r.inside_at, r.inside - current};
    }
  }
  return std::nullopt;
}

VerificationReport CheckUnrest(const MarketInstance& instance,
                               const ECBox& box, int samples,
                               std::uint64_t seed,
                               const SearchOptions& options) {
  RequireBoxShape(instance, box);
  VerificationReport report;
  report.property = "unrest";
  report.samples = samples;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CommissionProfile draw = box.Sample(rng);
    if (!FindUnrestMove(instance, box, draw, options)) {
      report.violations.push_back({draw, -1, 0.0, 0.0});
    }
  }
  return report;
}

std::optional<std::vector<CommissionProfile>> SearchExternalTail(
    const MarketInstance& instance, const ECBox& box,
    const CommissionProfile& start, double epsilon, int max_depth,
    const SearchOptions& options) {
  RequireBoxShape(instance, box);
  if (!box.Contains(start)) {
    throw std::invalid_argument("tail search must start inside the box");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (max_depth <= 0) return std::nullopt;

  std::vector<CommissionProfile> chain;
  auto dfs = [&](auto&& self, const CommissionProfile& at, int depth) -> bool {
    if (depth == max_depth) return true;
    const UnifiedPayoff payoff(instance, at);
    for (int i = 0; i < instance.n_sellers(); ++i) {
      const auto s = static_cast<std::size_t>(i);
      const Interval& comp = box.components[s];
      if (!comp.Contains(at[s])) continue;  // only inside coordinates may leave
      const std::vector<double> cand =
          RichCandidates(instance, at, i, options, {comp.lo, comp.hi});
      std::vector<double> util(cand.size());
      double sup = kNegInf;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        util[k] = payoff(i, cand[k]);
        sup = std::max(sup, util[k]);
      }
      const double current = payoff(i, at[s]);
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (comp.Contains(cand[k])) continue;
        if (!(util[k] > current + kStrictMargin)) continue;
        if (!(util[k] > sup - epsilon)) continue;
        CommissionProfile next = at.With(s, cand[k]);
        chain.push_back(next);
        if (self(self, next, depth + 1)) return true;
        chain.pop_back();
      }
    }
    return false;
  };
  if (dfs(dfs, start, 0)) return chain;
  return std::nullopt;
}

VerificationReport FalsifySubset(const MarketInstance& instance,
                                 const ECBox& candidate, int samples,
                                 std::uint64_t seed,
                                 const SearchOptions& options) {
  const ECBox full = EcBox(instance);
  if (!candidate.IsStrictSubsetOf(full)) {
    throw std::invalid_argument("candidate must be a strict subset of the EC box");
  }
  VerificationReport stab = CheckStability(instance, candidate, samples, seed,
                                           options);
  if (!stab.pass()) {
    stab.property = "falsify:stability";
    return stab;
  }
  VerificationReport unrest = CheckUnrest(instance, candidate, samples, seed,
                                          options);
  if (!unrest.pass()) {
    unrest.property = "falsify:unrest";
    return unrest;
  }
  VerificationReport none;
  none.property = "falsify:none";
  none.samples = samples;
  return none;
}

std::vector<std::pair<std::string, ECBox>> CanonicalSubBoxes(
    const MarketInstance& instance, double shrink) {
  const ECBox full = EcBox(instance);
  const auto m = static_cast<std::size_t>(instance.menu_size());
  ECBox left = full;
  for (std::size_t i = 0; i < m; ++i) left.components[i].lo += shrink;
  ECBox right = full;
  right.components[m - 1].hi -= shrink;
  return {{"shrunk-left", left}, {"shrunk-right", right}};
}

VerificationReport CheckThresholdProperty(const MarketInstance& instance,
                                          int samples, std::uint64_t seed,
                                          const SearchOptions& options) {
  const ECBox box = EcBox(instance);
  const Thresholds t = ThresholdsEtaTilde(instance);
  const std::vector<double> eta = Eta(instance);
  const int m = instance.menu_size();
  const double floor = eta[static_cast<std::size_t>(m)];
  VerificationReport report;
  report.property = "threshold";
  report.samples = samples;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const int k = static_cast<int>(rng.Index(static_cast<std::size_t>(m)));
    const auto ks = static_cast<std::size_t>(k);
    const double cap = t.eta_tilde[ks];
    // Open at the threshold itself.
    double own = rng.Uniform(cap, 1.0);
    if (own <= cap) own = std::nextafter(cap, 2.0);
    CommissionProfile draw = box.Sample(rng).With(ks, own);
    const UnifiedPayoff payoff(instance, draw);
    const double current = payoff(k, own);
    double best = kNegInf;
    double best_at = own;
    for (double c :
         RichCandidates(instance, draw, k, options, {floor, cap})) {
      if (c < floor || c > cap) continue;
      const double u = payoff(k, c);
      if (u > best) {
        best = u;
        best_at = c;
      }
    }
    if (!(best > current + kStrictMargin)) {
      report.violations.push_back({draw, k, best_at, best - current});
    }
  }
  return report;
}

}  // namespace platgame
