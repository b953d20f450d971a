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

#include "platgame/io.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "json.hpp"
#include "platgame/equilibrium.h"
#include "platgame/platform_mdp.h"
#include "platgame/seller_game.h"

namespace platgame {
namespace {

constexpr const char* kInstance = R"({
  "n_sellers": 2, "menu_size": 1, "gamma": 0.25,
  "alpha": [1.0, 2.0], "cost": [0.1, 0.0]
})";

TEST(IoTest, ParsesInstance) {
  const MarketInstance inst = ParseInstance(kInstance);
  EXPECT_EQ(inst.n_sellers(), 2);
  EXPECT_DOUBLE_EQ(inst.gamma(), 0.25);
  EXPECT_DOUBLE_EQ(inst.p_max(), 10.0);
  EXPECT_TRUE(inst.exponential());
}

TEST(IoTest, ParsesPowerResponse) {
  const MarketInstance inst = ParseInstance(R"({
    "n_sellers": 1, "menu_size": 1, "gamma": 0.1, "alpha": [1], "cost": [0],
    "p_max": 4, "response": {"family": "power", "shape": [2.5]}})");
  EXPECT_EQ(inst.response().family(), ResponseFamily::kPower);
  EXPECT_DOUBLE_EQ(inst.p_max(), 4.0);
}

TEST(IoTest, RoundTrip) {
  const MarketInstance inst = ParseInstance(kInstance);
  const MarketInstance again = ParseInstance(InstanceToJson(inst));
  EXPECT_EQ(again.alpha(), inst.alpha());
  EXPECT_EQ(again.cost(), inst.cost());
  EXPECT_EQ(again.p_max(), inst.p_max());
}

TEST(IoTest, RejectsUnknownKeys) {
  EXPECT_THROW(ParseInstance(R"({"n_sellers": 1, "menu_size": 1, "gamma": 0,
      "alpha": [1], "cost": [0], "colour": 3})"), ParseError);
}

TEST(IoTest, ParseErrorsCarryPosition) {
  try {
    ParseInstance("{\n  \"n_sellers\": 2,\n  oops\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(IoTest, InvalidModelSurfacesAsParseError) {
  EXPECT_THROW(ParseInstance(R"({"n_sellers": 2, "menu_size": 1, "gamma": 1.5,
      "alpha": [1, 1], "cost": [0, 0]})"), ParseError);
  EXPECT_THROW(ParseInstance(R"({"n_sellers": 1, "menu_size": 1, "gamma": 0.1,
      "alpha": [1], "cost": [0], "response": "linear"})"), ParseError);
  EXPECT_THROW(LoadInstance("/nonexistent/file.json"), ParseError);
}

TEST(IoTest, Profiles) {
  EXPECT_EQ(ParseProfile("0.7,0.7, 0.6").values(),
            (std::vector<double>{0.7, 0.7, 0.6}));
  EXPECT_THROW(ParseProfile("0.7,x"), ParseError);
  EXPECT_THROW(ParseProfile("0.7,1.2"), ParseError);
  EXPECT_THROW(ParseProfile(""), ParseError);
}

TEST(IoTest, NineSignificantDigits) {
  EXPECT_EQ(FormatDouble(0.1234567891234), "0.123456789");
  EXPECT_EQ(FormatDouble(0.0), "0");
}

TEST(IoTest, PolicyJsonIsOneBased) {
  const MarketInstance inst(3, 2, 0.5, {1, 1, 1}, {0, 0, 0});
  const CommissionProfile delta({0.4, 0.4, 0.4});
  const auto doc = nlohmann::json::parse(PolicyToJson(FairPolicy(inst, delta), 0.5));
  EXPECT_EQ(doc["support"].size(), 6u);
  EXPECT_EQ(doc["support"][0]["menu"], nlohmann::json({1, 2}));
  EXPECT_DOUBLE_EQ(doc["value"].get<double>(), 0.5);
}

TEST(IoTest, ReportJson) {
  VerificationReport r;
  r.property = "nash";
  r.samples = 1;
  r.violations.push_back({CommissionProfile({0.1, 0.2}), 1, 0.3, 0.01});
  const auto doc = nlohmann::json::parse(ReportToJson(r));
  EXPECT_EQ(doc["verdict"], "fail");
  EXPECT_EQ(doc["violations"][0]["seller"], 2);
  r.violations.clear();
  EXPECT_EQ(nlohmann::json::parse(ReportToJson(r))["verdict"], "pass");
}

TEST(IoTest, TraceCsv) {
  const MarketInstance inst(3, 2, 0.1, {1, 1, 1}, {0.1, 0.2, 0.3});
  BRConfig cfg;
  cfg.max_iters = 20;
  cfg.burn_in = 5;
  const BRTrace t = BrDynamics(inst, CommissionProfile({0.5, 0.5, 0.5}), cfg);
  const std::string csv = TraceToCsv(inst, t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "iteration,mover,delta_1,delta_2,delta_3,U_1,U_2,U_3");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + t.iterations_run);
  EXPECT_NE(csv.find("\n0,0,0.5,0.5,0.5,"), std::string::npos);
}

}  // namespace
}  // namespace platgame
