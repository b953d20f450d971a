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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "platgame/seller_game.h"

namespace platgame {
namespace {

// eta = (0.9, 0.8, 0.7, 0.6, 0.5).
MarketInstance CyclingMarket(double gamma = 0.1) {
  return MarketInstance(5, 3, gamma, {1, 1, 1, 1, 1},
                        {0.1, 0.2, 0.3, 0.4, 0.5});
}

// Reference thresholds from an independent arbitrary-precision evaluation.
constexpr double kEta3 = 0.69960042359910627;
constexpr double kEta2 = 0.79920084719821254;

TEST(ThresholdsTest, CyclingMarketValues) {
  const Thresholds t = ThresholdsEtaTilde(CyclingMarket());
  ASSERT_EQ(t.eta_tilde.size(), 4u);
  EXPECT_NEAR(t.eta_tilde[3], 0.6, 1e-15);
  EXPECT_NEAR(t.eta_tilde[2], kEta3, 1e-15);
  EXPECT_NEAR(t.eta_tilde[1], kEta2, 1e-15);
  EXPECT_EQ(t.eta_tilde[0], t.eta_tilde[1]);
  EXPECT_TRUE(t.hypothesis_violations.empty());
  EXPECT_FALSE(t.readings_diverge);
}

TEST(ThresholdsTest, ZeroGammaGivesEta) {
  const Thresholds t = ThresholdsEtaTilde(CyclingMarket(0.0));
  EXPECT_DOUBLE_EQ(t.eta_tilde[2], 0.7);
  EXPECT_DOUBLE_EQ(t.eta_tilde[1], 0.8);
  EXPECT_DOUBLE_EQ(t.eta_tilde[0], 0.8);
  EXPECT_DOUBLE_EQ(t.eta_tilde[3], 0.6);
}

TEST(ThresholdsTest, BracketedByEta) {
  for (double g : {0.05, 0.3, 0.6, 0.9}) {
    const MarketInstance inst(6, 4, g, {1, 1, 1, 1, 1, 1},
                              {0.05, 0.1, 0.2, 0.3, 0.35, 0.6});
    const Thresholds t = ThresholdsEtaTilde(inst);
    const auto eta = Eta(inst);
    EXPECT_EQ(t.eta_tilde[4], eta[4]);
    EXPECT_EQ(t.eta_tilde[0], t.eta_tilde[1]);
    for (int k = 1; k < 4; ++k) {
      EXPECT_GE(t.eta_tilde[k], eta[4]);
      EXPECT_LE(t.eta_tilde[k], eta[k]);
    }
  }
}

TEST(ThresholdsTest, ConvergesToEtaAsGapsVanish) {
  const double t = 1e-6;
  const MarketInstance inst(4, 3, 0.5, {1, 1, 1, 1},
                            {0.3 - 3 * t, 0.3 - 2 * t, 0.3 - t, 0.3});
  const Thresholds th = ThresholdsEtaTilde(inst);
  const auto eta = Eta(inst);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(th.eta_tilde[k], eta[k], 1e-5);
}

TEST(ThresholdsTest, ReportsHypothesisViolationsButComputes) {
  const MarketInstance inst(4, 2, 0.2, {1, 1, 1, 1}, {0.3, 0.2, 0.4, 0.5});
  const Thresholds t = ThresholdsEtaTilde(inst);
  EXPECT_FALSE(t.hypothesis_violations.empty());
  EXPECT_EQ(t.eta_tilde.size(), 3u);
  EXPECT_FALSE(HypothesisViolations(
                   MarketInstance(3, 2, 0.1, {1, 2, 1}, {0.1, 0.05, 0.3}))
                   .empty());
}

TEST(EcBoxTest, CyclingMarketBox) {
  const ECBox box = EcBox(CyclingMarket());
  ASSERT_EQ(box.components.size(), 5u);
  EXPECT_NEAR(box.components[0].hi, kEta2, 1e-15);
  EXPECT_NEAR(box.components[1].hi, kEta2, 1e-15);
  EXPECT_NEAR(box.components[2].hi, kEta3, 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(box.components[i].lo, 0.6);
  EXPECT_TRUE(box.components[3].Singleton());
  EXPECT_DOUBLE_EQ(box.components[3].lo, 0.6);
  EXPECT_DOUBLE_EQ(box.components[4].lo, 0.5);
  EXPECT_TRUE(box.Contains(CommissionProfile({0.7, 0.61, 0.65, 0.6, 0.5})));
  EXPECT_EQ(box.ExternalCount(CommissionProfile({0.85, 0.61, 0.65, 0.6, 0.4})), 2);
}

TEST(EcBoxTest, MinimalShape) {
  const MarketInstance inst(3, 2, 0.2, {1, 1, 1}, {0.1, 0.2, 0.3});
  const ECBox box = EcBox(inst);
  ASSERT_EQ(box.components.size(), 3u);
  EXPECT_EQ(box.components[0], box.components[1]);
  EXPECT_DOUBLE_EQ(box.components[0].lo, 0.7);
  EXPECT_TRUE(box.components[2].Singleton());
  EXPECT_DOUBLE_EQ(box.components[2].lo, 0.7);
}

TEST(EcBoxTest, SubsetRelations) {
  const ECBox box = EcBox(CyclingMarket());
  EXPECT_TRUE(box.IsSubsetOf(box));
  EXPECT_FALSE(box.IsStrictSubsetOf(box));
  ECBox smaller = box;
  smaller.components[0].hi -= 0.1;
  EXPECT_TRUE(smaller.IsStrictSubsetOf(box));
  EXPECT_FALSE(box.IsSubsetOf(smaller));
}

// Equal sellers: eta_c = 0.7 for all three.
MarketInstance EqualSellers() {
  return MarketInstance(3, 2, 0.1, {1, 1, 1}, {0.3, 0.3, 0.3});
}

TEST(NashTest, EqualSellerEquilibrium) {
  const MarketInstance inst = EqualSellers();
  const CommissionProfile d({0.7, 0.7, 0.7});
  const VerificationReport r = VerifyNash(inst, d);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.verdict(), "pass");
  for (double u : UnifiedUtility(inst, d)) EXPECT_EQ(u, 0.0);
}

TEST(NashTest, BrokenEqualSellerProfileHasWitness) {
  const MarketInstance inst = EqualSellers();
  const VerificationReport r = VerifyNash(inst, CommissionProfile({0.7, 0.7, 0.6}));
  ASSERT_FALSE(r.pass());
  EXPECT_EQ(r.verdict(), "fail");
  const Witness& w = r.violations.front();
  EXPECT_GT(w.gain, kNashTolerance);
  EXPECT_GT(UnifiedUtility(inst, w.profile.With(w.seller, w.deviation))[w.seller],
            UnifiedUtility(inst, w.profile)[w.seller]);
}

TEST(NashTest, EpsilonEquilibriumUnderHypothesis) {
  // eta = (0.72, 0.71, 0.70, 0.5), M = 2.
  const MarketInstance inst(4, 2, 0.3, {1, 1, 1, 1}, {0.28, 0.29, 0.30, 0.5});
  const double bound = EpsNashHypothesisBound(inst);
  EXPECT_NEAR(bound, 0.02, 1e-12);
  const CommissionProfile d({0.71, 0.70, 0.70, 0.5});
  EXPECT_TRUE(VerifyEpsNash(inst, d, 1.01 * bound).pass());
  EXPECT_TRUE(VerifyEpsNash(inst, d, 1.0).pass());
}

TEST(NashTest, SpreadInstanceFailsWithSmallEpsilon) {
  // eta = (0.9, 0.6, 0.3, 0.1), M = 2.
  const MarketInstance inst(4, 2, 0.3, {1, 1, 1, 1}, {0.1, 0.4, 0.7, 0.9});
  const double bound = EpsNashHypothesisBound(inst);
  const CommissionProfile d({0.6, 0.3, 0.3, 0.1});
  const VerificationReport r = VerifyEpsNash(inst, d, bound / 10);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.violations.front().gain, bound / 10);
}

TEST(StabilityTest, PassesOnEcBox) {
  const MarketInstance inst = CyclingMarket();
  const VerificationReport r = CheckStability(inst, EcBox(inst), 200, 1);
  EXPECT_TRUE(r.pass()) << r.violations.size();
  EXPECT_EQ(r.samples, 200);
}

TEST(StabilityTest, LoweredFloorFails) {
  const MarketInstance inst = CyclingMarket();
  ECBox box = EcBox(inst);
  for (int i = 0; i < 3; ++i) box.components[i].lo -= 0.05;
  EXPECT_FALSE(CheckStability(inst, box, 200, 1).pass());
}

TEST(StabilityTest, RaisedFloorFails) {
  const MarketInstance inst = CyclingMarket();
  ECBox box = EcBox(inst);
  for (int i = 0; i < 3; ++i) box.components[i].lo += 0.02;
  EXPECT_FALSE(CheckStability(inst, box, 200, 1).pass());
}

TEST(StabilityTest, SeededRunsRepeat) {
  const MarketInstance inst = CyclingMarket();
  ECBox box = EcBox(inst);
  box.components[2].hi -= 0.02;
  const auto a = CheckStability(inst, box, 100, 5);
  const auto b = CheckStability(inst, box, 100, 5);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t k = 0; k < a.violations.size(); ++k) {
    EXPECT_EQ(a.violations[k].profile, b.violations[k].profile);
  }
}

TEST(UnrestTest, PassesOnEcBox) {
  const MarketInstance inst = CyclingMarket();
  EXPECT_TRUE(CheckUnrest(inst, EcBox(inst), 200, 2).pass());
}

TEST(UnrestTest, EquilibriumPointHasNoUnrest) {
  const MarketInstance inst = EqualSellers();
  ECBox point;
  for (int i = 0; i < 3; ++i) point.components.push_back({0.7, 0.7});
  EXPECT_FALSE(CheckUnrest(inst, point, 5, 1).pass());
}

TEST(UnrestTest, CornerRestartsTowardThreatPoint) {
  const MarketInstance inst = CyclingMarket();
  const ECBox box = EcBox(inst);
  const CommissionProfile corner({box.components[0].hi, box.components[1].hi,
                                  box.components[2].hi, 0.6, 0.5});
  const auto move = FindUnrestMove(inst, box, corner);
  ASSERT_TRUE(move.has_value());
  EXPECT_GT(move->gain, 0.0);
  ASSERT_LT(move->seller, 3);
  EXPECT_LT(move->commission, corner[move->seller]);
  EXPECT_TRUE(box.components[move->seller].Contains(move->commission));
}

TEST(ExternalTailTest, ExceptionStartHasNoDepthTwoTail) {
  const MarketInstance inst = CyclingMarket();
  const ECBox box = EcBox(inst);
  const double top = box.components[1].hi;
  for (double eps : {1e-4, 1e-3}) {
    const CommissionProfile start({top, top, 0.65, 0.6, 0.5});
    const auto one = SearchExternalTail(inst, box, start, eps, 1);
    ASSERT_TRUE(one.has_value());
    EXPECT_EQ(box.ExternalCount(one->front()), 1);
    EXPECT_FALSE(SearchExternalTail(inst, box, start, eps, 2).has_value());
  }
}

TEST(ExternalTailTest, InteriorStartHasNoExit) {
  const MarketInstance inst = CyclingMarket();
  const ECBox box = EcBox(inst);
  const CommissionProfile start({0.7, 0.65, 0.62, 0.6, 0.5});
  EXPECT_FALSE(SearchExternalTail(inst, box, start, 1e-3, 1).has_value());
}

TEST(ExternalTailTest, Preconditions) {
  const MarketInstance inst = CyclingMarket();
  const ECBox box = EcBox(inst);
  const CommissionProfile inside({0.7, 0.65, 0.62, 0.6, 0.5});
  EXPECT_FALSE(SearchExternalTail(inst, box, inside, 1e-3, 0).has_value());
  EXPECT_THROW(SearchExternalTail(inst, box, inside.With(0, 0.95), 1e-3, 2),
               std::invalid_argument);
}

TEST(FalsifyTest, CanonicalSubBoxesFail) {
  const MarketInstance inst = CyclingMarket();
  for (const auto& [name, sub] : CanonicalSubBoxes(inst)) {
    const VerificationReport r = FalsifySubset(inst, sub, 300, 3);
    EXPECT_FALSE(r.pass()) << name;
    EXPECT_EQ(r.property, "falsify:stability") << name;
  }
}

TEST(FalsifyTest, FullBoxRejected) {
  const MarketInstance inst = CyclingMarket();
  EXPECT_THROW(FalsifySubset(inst, EcBox(inst), 10, 1), std::invalid_argument);
}

TEST(ThresholdPropertyTest, HoldsOnFig3) {
  EXPECT_TRUE(CheckThresholdProperty(CyclingMarket(), 200, 11).pass());
}

TEST(ThresholdPropertyTest, HoldsAtLargerGamma) {
  const MarketInstance inst(6, 4, 0.6, {1, 1, 1, 1, 1, 1},
                            {0.05, 0.1, 0.2, 0.3, 0.35, 0.6});
  EXPECT_TRUE(CheckThresholdProperty(inst, 200, 12).pass());
}

}  // namespace
}  // namespace platgame
