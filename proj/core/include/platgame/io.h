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

#ifndef PLATGAME_IO_H_
#define PLATGAME_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "platgame/equilibrium.h"
#include "platgame/model.h"
#include "platgame/seller_game.h"

namespace platgame {

// Malformed input files; what() names the line and column when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance documents:
//   {"n_sellers": 5, "menu_size": 3, "gamma": 0.1,
//    "alpha": [...], "cost": [...], "p_max": 10,        // p_max optional
//    "response": "exponential" | {"family": "power", "shape": [...]}}
// Unknown keys are rejected. Model invariant violations surface as
// ParseError too.
MarketInstance ParseInstance(std::string_view text);
MarketInstance LoadInstance(const std::string& path);
std::string InstanceToJson(const MarketInstance& instance);

// Comma separated commissions, e.g. "0.7,0.7,0.6".
CommissionProfile ParseProfile(std::string_view text);

// printf("%.9g").
std::string FormatDouble(double x);

// {"value": v, "support": [{"menu": [1-based], "prices": [...], "prob": p}]}
std::string PolicyToJson(const RandomizedPolicy& policy, double value);

// {"property", "samples", "violations": [{"profile", "seller", "deviation",
// "gain"}], "verdict"}; sellers reported 1-based, 0 when not applicable.
std::string ReportToJson(const VerificationReport& report);

// iteration,mover,delta_1..delta_N,U_1..U_N. Row 0 is the start profile;
// mover is 1-based and 0 on iterations without a move.
std::string TraceToCsv(const MarketInstance& instance, const BRTrace& trace);

}  // namespace platgame

#endif  // PLATGAME_IO_H_
