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

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace platgame {
namespace {

using nlohmann::json;

template <typename T>
T Field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance field '") + key + "': " + e.what());
  }
}

ResponseModel ParseResponse(const json& doc) {
  if (!doc.contains("response")) return ResponseModel::Exponential();
  const json& r = doc.at("response");
  if (r.is_string()) {
    if (r.get<std::string>() == "exponential") return ResponseModel::Exponential();
    throw ParseError("unknown response '" + r.get<std::string>() + "'");
  }
  if (!r.is_object()) throw ParseError("response must be a string or object");
  for (const auto& [key, value] : r.items()) {
    if (key != "family" && key != "shape") {
      throw ParseError("unknown response key '" + key + "'");
    }
  }
  const auto family = Field<std::string>(r, "family");
  if (family == "exponential") return ResponseModel::Exponential();
  if (family == "power") {
    return ResponseModel::Power(Field<std::vector<double>>(r, "shape"));
  }
  throw ParseError("unknown response family '" + family + "'");
}

json ProfileJson(const CommissionProfile& delta) { return delta.values(); }

}  // namespace

MarketInstance ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  static const std::set<std::string> known = {
      "n_sellers", "menu_size", "gamma", "alpha", "cost", "p_max", "response"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ParseError("unknown instance key '" + key + "'");
  }
  std::optional<double> p_max;
  if (doc.contains("p_max") && !doc.at("p_max").is_null()) {
    p_max = Field<double>(doc, "p_max");
  }
  try {
    return MarketInstance(Field<int>(doc, "n_sellers"),
                          Field<int>(doc, "menu_size"),
                          Field<double>(doc, "gamma"),
                          Field<std::vector<double>>(doc, "alpha"),
                          Field<std::vector<double>>(doc, "cost"), p_max,
                          ParseResponse(doc));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

MarketInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseInstance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string InstanceToJson(const MarketInstance& instance) {
  json doc;
  doc["n_sellers"] = instance.n_sellers();
  doc["menu_size"] = instance.menu_size();
  doc["gamma"] = instance.gamma();
  doc["alpha"] = instance.alpha();
  doc["cost"] = instance.cost();
  doc["p_max"] = instance.p_max();
  switch (instance.response().family()) {
    case ResponseFamily::kExponential:
      doc["response"] = "exponential";
      break;
    case ResponseFamily::kPower:
      doc["response"] = {{"family", "power"},
                         {"shape", instance.response().shape()}};
      break;
    case ResponseFamily::kCustom:
      throw std::invalid_argument("custom responses cannot be serialized");
  }
  return doc.dump(2);
}

CommissionProfile ParseProfile(std::string_view text) {
  std::vector<double> values;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad commission '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw ParseError("bad commission '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ParseError("empty commission list");
  try {
    return CommissionProfile(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string PolicyToJson(const RandomizedPolicy& policy, double value) {
  json doc;
  doc["value"] = value;
  doc["support"] = json::array();
  for (const auto& e : policy.support) {
    std::vector<int> menu;
    for (int a : e.priced.menu.order) menu.push_back(a + 1);
    doc["support"].push_back(
        {{"menu", menu}, {"prices", e.priced.prices}, {"prob", e.probability}});
  }
  return doc.dump(2);
}

std::string ReportToJson(const VerificationReport& report) {
  json doc;
  doc["property"] = report.property;
  doc["samples"] = report.samples;
  doc["violations"] = json::array();
  for (const Witness& w : report.violations) {
    doc["violations"].push_back({{"profile", ProfileJson(w.profile)},
                                 {"seller", w.seller + 1},
                                 {"deviation", w.deviation},
                                 {"gain", w.gain}});
  }
  doc["verdict"] = report.verdict();
  return doc.dump(2);
}

std::string TraceToCsv(const MarketInstance& instance, const BRTrace& trace) {
  const std::size_t n = static_cast<std::size_t>(instance.n_sellers());
  std::string out = "iteration,mover";
  for (std::size_t a = 1; a <= n; ++a) out += ",delta_" + std::to_string(a);
  for (std::size_t a = 1; a <= n; ++a) out += ",U_" + std::to_string(a);
  out += '\n';
  auto row = [&](int it, int mover, const CommissionProfile& p) {
    out += std::to_string(it) + ',' + std::to_string(mover);
    for (std::size_t a = 0; a < n; ++a) out += ',' + FormatDouble(p[a]);
    for (double u : UnifiedUtility(instance, p)) out += ',' + FormatDouble(u);
    out += '\n';
  };
  row(0, 0, trace.initial);
  std::size_t s = 0;
  for (std::size_t k = 0; k < trace.history.size(); ++k) {
    const int it = static_cast<int>(k) + 1;
    int mover = 0;
    if (s < trace.steps.size() && trace.steps[s].iteration == it) {
      mover = trace.steps[s].mover + 1;
      ++s;
    }
    row(it, mover, trace.history[k]);
  }
  return out;
}

}  // namespace platgame
