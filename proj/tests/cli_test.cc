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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace platgame::cli {
namespace {

using nlohmann::json;

const std::string kData = PLATGAME_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string TempFile(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

TEST(CliTest, SolvePowerTieMixesTwoMenus) {
  const Result r = Call({"solve", "--instance", kData + "/power_tie.json",
                         "--delta", "0.9,0.51017441306106856,0.8"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["support"].size(), 2u);
  for (const auto& e : doc["support"]) {
    EXPECT_DOUBLE_EQ(e["prob"].get<double>(), 0.5);
  }
  EXPECT_NEAR(doc["value"].get<double>(), 0.43441989619969325, 1e-12);
}

TEST(CliTest, ApproxSolveUsesStandalonePrices) {
  const Result r = Call({"solve", "--approx", "--instance",
                         kData + "/cycling_market.json", "--delta", "0.6,0.6,0.6,0.6,0.5"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json doc = json::parse(r.out);
  for (const auto& e : doc["support"]) {
    for (const auto& p : e["prices"]) EXPECT_DOUBLE_EQ(p.get<double>(), 1.0);
  }
}

TEST(CliTest, GammaOverride) {
  const Result a = Call({"solve", "--instance", kData + "/cycling_market.json", "--delta",
                         "0.6,0.6,0.6,0.6,0.5", "--gamma", "0"});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  EXPECT_NEAR(json::parse(a.out)["value"].get<double>(), 0.6 / std::exp(1.0),
              1e-12);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Call({"solve", "--instance", "/no/such/file.json"}).code,
            kExitUsage);
  const Result noseed =
      Call({"br-dynamics", "--instance", kData + "/cycling_market.json", "--delta",
            "0.6,0.6,0.6,0.6,0.5"});
  EXPECT_EQ(noseed.code, kExitUsage);
  EXPECT_NE(noseed.err.find("seed"), std::string::npos);
  EXPECT_EQ(Call({"verify", "eps-nash", "--instance", kData + "/cycling_market.json",
                  "--delta", "0.5,0.5,0.5,0.5,0.5"}).code,
            kExitUsage);
}

TEST(CliTest, MalformedInstanceIsUsageError) {
  const std::string bad = TempFile("platgame_bad.json", "{\"n_sellers\": 2,");
  const Result r = Call({"solve", "--instance", bad, "--delta", "0.5,0.5"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  const std::string unknown = TempFile(
      "platgame_unknown.json",
      R"({"n_sellers": 1, "menu_size": 1, "gamma": 0, "alpha": [1],
          "cost": [0], "extra": true})");
  EXPECT_EQ(Call({"solve", "--instance", unknown, "--delta", "0.5"}).code,
            kExitUsage);
}

TEST(CliTest, VerifyNashVerdicts) {
  const std::string path = TempFile(
      "platgame_sym.json",
      R"({"n_sellers": 3, "menu_size": 2, "gamma": 0.3, "alpha": [1, 1, 1],
          "cost": [0.3, 0.3, 0.3]})");
  const Result pass =
      Call({"verify", "nash", "--instance", path, "--delta", "0.7,0.7,0.7"});
  EXPECT_EQ(pass.code, kExitPass) << pass.out;
  EXPECT_EQ(json::parse(pass.out)["verdict"], "pass");
  const Result fail =
      Call({"verify", "nash", "--instance", path, "--delta", "0.7,0.7,0.6"});
  EXPECT_EQ(fail.code, kExitFail);
  EXPECT_FALSE(json::parse(fail.out)["violations"].empty());
}

TEST(CliTest, ThresholdsReport) {
  const Result r = Call({"verify", "thresholds", "--instance",
                         kData + "/cycling_market.json"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["eta_tilde"][1].get<double>(), 0.79920084719821254, 1e-12);
  EXPECT_NEAR(doc["eta_tilde"][2].get<double>(), 0.69960042359910627, 1e-12);
}

TEST(CliTest, DeterministicAcrossRuns) {
  const std::vector<std::string> br{
      "br-dynamics", "--instance", kData + "/cycling_market.json", "--delta",
      "0.6,0.6,0.6,0.6,0.5", "--seed", "1", "--max-iters", "200",
      "--burn-in", "50"};
  const Result a = Call(br);
  const Result b = Call(br);
  ASSERT_EQ(a.code, kExitPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> stab{"verify", "stability", "--instance",
                                      kData + "/cycling_market.json", "--samples", "50",
                                      "--seed", "4"};
  EXPECT_EQ(Call(stab).out, Call(stab).out);
}

TEST(CliTest, BrSummaryFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string csv = (dir / "platgame_trace.csv").string();
  const std::string summary = (dir / "platgame_summary.json").string();
  const Result r = Call({"br-dynamics", "--instance", kData + "/cycling_market.json",
                         "--delta", "0.6,0.6,0.6,0.6,0.5", "--seed", "1",
                         "--max-iters", "300", "--burn-in", "100", "--out",
                         csv, "--summary", summary});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::ifstream in(summary);
  const json doc = json::parse(in);
  EXPECT_GE(doc["ec_membership_rate"].get<double>(), 0.99);
  EXPECT_EQ(doc["seed"], 1);
}

}  // namespace
}  // namespace platgame::cli
