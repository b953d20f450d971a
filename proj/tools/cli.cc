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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "platgame/cascade.h"
#include "platgame/equilibrium.h"
#include "platgame/io.h"
#include "platgame/platform_mdp.h"
#include "platgame/seller_game.h"
#include "platgame/small_gamma.h"

namespace platgame::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string instance_path;
  std::string out_path;
  std::string summary_path;
  std::string delta;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma;
  bool approx = false;
  // compare-approx
  int seller = 1;
  std::vector<double> gammas = {0.2, 0.4, 0.7};
  double sweep_from = 0.05;
  double sweep_to = 0.95;
  double sweep_step = 0.01;
  // br-dynamics
  BRConfig br;
  // verify
  int samples = 1000;
  int grid_points = 1001;
  double epsilon = 0.0;
  std::string box;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MarketInstance Instance(const RunConfig& cfg) {
  MarketInstance inst = LoadInstance(cfg.instance_path);
  if (cfg.gamma) inst = inst.WithGamma(*cfg.gamma);
  return inst;
}

CommissionProfile Profile(const RunConfig& cfg, const MarketInstance& inst) {
  if (cfg.delta.empty()) throw UsageError("--delta is required");
  CommissionProfile delta = ParseProfile(cfg.delta);
  ValidateProfile(inst, delta);
  return delta;
}

std::uint64_t Seed(const RunConfig& cfg) {
  if (!cfg.seed) throw UsageError("--seed is required for randomized commands");
  return *cfg.seed;
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

json Warnings(const MarketInstance& inst) { return HypothesisViolations(inst); }

ECBox ParseBox(const std::string& text, const MarketInstance& inst) {
  ECBox box;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        const double v = std::stod(item);
        box.components.push_back({v, v});
      } else {
        box.components.push_back(
            {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
      }
    } catch (const std::exception&) {
      throw ParseError("bad box component '" + item + "'");
    }
  }
  if (box.components.size() != static_cast<std::size_t>(inst.n_sellers()) ||
      !box.Valid()) {
    throw ParseError("box needs one nonempty lo:hi (or point) per seller");
  }
  return box;
}

json BoxJson(const ECBox& box) {
  json arr = json::array();
  for (const Interval& c : box.components) arr.push_back({c.lo, c.hi});
  return arr;
}

int CmdSolve(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const CommissionProfile delta = Profile(cfg, inst);
  if (cfg.approx) {
    const RandomizedPolicy policy = ApproxPolicy(inst, delta);
    const double value = PolicyEvaluate(inst, delta, policy).platform_revenue;
    Emit(cfg.out_path, PolicyToJson(policy, value) + "\n", out);
  } else {
    const PlatformSolution solution = SolveDp(inst, delta);
    Emit(cfg.out_path,
         PolicyToJson(FairPolicy(inst, solution), solution.value()) + "\n", out);
  }
  return kExitPass;
}

int CmdCompareApprox(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const CommissionProfile base = Profile(cfg, inst);
  if (!(cfg.sweep_step > 0.0) || cfg.sweep_from > cfg.sweep_to) {
    throw UsageError("bad sweep range");
  }
  std::vector<double> sweep;
  const long long n =
      std::llround((cfg.sweep_to - cfg.sweep_from) / cfg.sweep_step);
  for (long long k = 0; k <= n; ++k) {
    sweep.push_back(cfg.sweep_from + static_cast<double>(k) * cfg.sweep_step);
  }
  const auto rows =
      CompareApprox(inst, base, cfg.seller - 1, cfg.gammas, sweep);
  std::string csv = "gamma,delta,exact,approx,rel_error\n";
  for (const auto& r : rows) {
    csv += FormatDouble(r.gamma) + ',' + FormatDouble(r.delta) + ',' +
           FormatDouble(r.exact) + ',' + FormatDouble(r.approx) + ',' +
           FormatDouble(r.rel_error) + '\n';
  }
  Emit(cfg.out_path, csv, out);
  return kExitPass;
}

int CmdBrDynamics(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const CommissionProfile start = Profile(cfg, inst);
  BRConfig br = cfg.br;
  br.seed = Seed(cfg);
  const BRTrace trace = BrDynamics(inst, start, br);

  json summary;
  summary["seed"] = br.seed;
  summary["converged"] = trace.converged;
  summary["iterations"] = trace.iterations_run;
  summary["moves"] = trace.steps.size();
  summary["final_profile"] = trace.final_profile.values();
  summary["band_min"] = trace.band_min;
  summary["band_max"] = trace.band_max;
  summary["warnings"] = Warnings(inst);
  if (inst.menu_size() < inst.n_sellers()) {
    const ECBox box = EcBox(inst);
    const double tol = br.grid_step + br.undercut;
    std::size_t in = 0;
    std::size_t total = 0;
    for (std::size_t k = static_cast<std::size_t>(br.burn_in);
         k < trace.history.size(); ++k) {
      ++total;
      bool ok = true;
      for (std::size_t i = 0; i < box.components.size(); ++i) {
        const double x = trace.history[k][i];
        ok = ok && x >= box.components[i].lo - tol &&
             x <= box.components[i].hi + tol;
      }
      in += ok ? 1 : 0;
    }
    summary["ec_box"] = BoxJson(box);
    summary["ec_membership_rate"] =
        total ? static_cast<double>(in) / static_cast<double>(total) : 0.0;
  } else {
    summary["ec_membership_rate"] = nullptr;
  }

  const std::string csv = TraceToCsv(inst, trace);
  if (cfg.out_path.empty()) {
    out << csv;
    if (!cfg.summary_path.empty()) Emit(cfg.summary_path, Dump(summary), out);
  } else {
    Emit(cfg.out_path, csv, out);
    Emit(cfg.summary_path, Dump(summary), out);
  }
  return kExitPass;
}

json ReportDoc(const VerificationReport& report) {
  return json::parse(ReportToJson(report));
}

int Finish(const RunConfig& cfg, json doc, bool pass, std::ostream& out) {
  doc["verdict"] = pass ? "pass" : "fail";
  Emit(cfg.out_path, Dump(doc), out);
  return pass ? kExitPass : kExitFail;
}

int CmdVerifyNash(const RunConfig& cfg, bool eps, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const CommissionProfile delta = Profile(cfg, inst);
  DeviationGrid grid;
  grid.points = cfg.grid_points;
  grid.undercut = cfg.br.undercut;
  const VerificationReport report =
      eps ? VerifyEpsNash(inst, delta, cfg.epsilon, grid)
          : VerifyNash(inst, delta, grid);
  json doc = ReportDoc(report);
  doc["warnings"] = Warnings(inst);
  doc["utilities"] = UnifiedUtility(inst, delta);
  return Finish(cfg, doc, report.pass(), out);
}

SearchOptions Search(const RunConfig& cfg) {
  SearchOptions o;
  o.grid_step = cfg.br.grid_step;
  o.undercut = cfg.br.undercut;
  return o;
}

int CmdVerifyThresholds(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const Thresholds t = ThresholdsEtaTilde(inst);
  json doc;
  doc["property"] = "thresholds";
  doc["eta_tilde"] = t.eta_tilde;
  doc["ec_box"] = BoxJson(EcBox(inst));
  doc["warnings"] = t.hypothesis_violations;
  doc["alternative_m_minus_1"] = t.alternative_m_minus_1;
  doc["readings_diverge"] = t.readings_diverge;
  return Finish(cfg, doc, true, out);
}

int CmdVerifySampled(const RunConfig& cfg, const std::string& which,
                     std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const std::uint64_t seed = Seed(cfg);
  const ECBox box = cfg.box.empty() ? EcBox(inst) : ParseBox(cfg.box, inst);
  const SearchOptions opts = Search(cfg);
  VerificationReport report;
  if (which == "stability") {
    report = CheckStability(inst, box, cfg.samples, seed, opts);
  } else if (which == "unrest") {
    report = CheckUnrest(inst, box, cfg.samples, seed, opts);
  } else {
    report = CheckThresholdProperty(inst, cfg.samples, seed, opts);
  }
  json doc = ReportDoc(report);
  doc["warnings"] = Warnings(inst);
  doc["box"] = BoxJson(box);
  return Finish(cfg, doc, report.pass(), out);
}

json FalsifyDoc(const std::string& name, const ECBox& box,
                const VerificationReport& r) {
  json doc = ReportDoc(r);
  doc["candidate"] = name;
  doc["box"] = BoxJson(box);
  doc["falsified"] = !r.pass();
  return doc;
}

int CmdVerifyFalsify(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const std::uint64_t seed = Seed(cfg);
  std::vector<std::pair<std::string, ECBox>> candidates;
  if (cfg.box.empty()) {
    candidates = CanonicalSubBoxes(inst);
  } else {
    candidates.emplace_back("user", ParseBox(cfg.box, inst));
  }
  json doc;
  doc["property"] = "falsify";
  doc["warnings"] = Warnings(inst);
  doc["candidates"] = json::array();
  bool all = true;
  for (const auto& [name, box] : candidates) {
    const VerificationReport r =
        FalsifySubset(inst, box, cfg.samples, seed, Search(cfg));
    all = all && !r.pass();
    doc["candidates"].push_back(FalsifyDoc(name, box, r));
  }
  return Finish(cfg, doc, all, out);
}

int CmdVerifyEc(const RunConfig& cfg, std::ostream& out) {
  const MarketInstance inst = Instance(cfg);
  const std::uint64_t seed = Seed(cfg);
  const ECBox box = EcBox(inst);
  const SearchOptions opts = Search(cfg);
  const VerificationReport stab =
      CheckStability(inst, box, cfg.samples, seed, opts);
  const VerificationReport unrest =
      CheckUnrest(inst, box, cfg.samples, seed, opts);
  json doc;
  doc["property"] = "ec";
  doc["warnings"] = Warnings(inst);
  doc["eta_tilde"] = ThresholdsEtaTilde(inst).eta_tilde;
  doc["ec_box"] = BoxJson(box);
  doc["stability"] = ReportDoc(stab);
  doc["unrest"] = ReportDoc(unrest);
  doc["falsification"] = json::array();
  bool falsified = true;
  for (const auto& [name, sub] : CanonicalSubBoxes(inst)) {
    const VerificationReport r =
        FalsifySubset(inst, sub, cfg.samples, seed, opts);
    falsified = falsified && !r.pass();
    doc["falsification"].push_back(FalsifyDoc(name, sub, r));
  }
  return Finish(cfg, doc, stab.pass() && unrest.pass() && falsified, out);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Seller-platform cascade market toolkit", "platgame"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance_path, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--gamma", cfg.gamma, "override the instance gamma");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (required)");
  };
  auto profile = [&](CLI::App* sub) {
    sub->add_option("--delta", cfg.delta, "commissions, comma separated");
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--grid-step", cfg.br.grid_step, "deviation grid step h");
    sub->add_option("--undercut", cfg.br.undercut, "undercut offset");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the platform problem");
  common(solve);
  profile(solve);
  solve->add_flag("--approx", cfg.approx, "use the small-gamma policy");

  CLI::App* compare = app.add_subcommand(
      "compare-approx", "exact vs approximate seller utility sweep (CSV)");
  common(compare);
  profile(compare);
  compare->add_option("--seller", cfg.seller, "swept seller (1-based)");
  compare->add_option("--gammas", cfg.gammas, "gamma values")->delimiter(',');
  compare->add_option("--sweep-from", cfg.sweep_from);
  compare->add_option("--sweep-to", cfg.sweep_to);
  compare->add_option("--sweep-step", cfg.sweep_step);

  CLI::App* br = app.add_subcommand("br-dynamics",
                                    "epsilon-best-response dynamics (CSV)");
  common(br);
  profile(br);
  seeded(br);
  search(br);
  br->add_option("--epsilon", cfg.br.epsilon);
  br->add_option("--max-iters", cfg.br.max_iters);
  br->add_option("--burn-in", cfg.br.burn_in);
  br->add_option("--summary", cfg.summary_path, "summary JSON file");

  CLI::App* verify = app.add_subcommand("verify", "equilibrium checks (JSON)");
  verify->require_subcommand(1);
  std::string verify_kind;
  for (const char* name : {"nash", "eps-nash", "ec", "thresholds", "stability",
                           "unrest", "falsify", "threshold-property"}) {
    CLI::App* sub = verify->add_subcommand(name);
    common(sub);
    sub->callback([&verify_kind, name] { verify_kind = name; });
    const std::string n = name;
    if (n == "nash" || n == "eps-nash") {
      profile(sub);
      sub->add_option("--grid-points", cfg.grid_points);
      sub->add_option("--undercut", cfg.br.undercut);
      if (n == "eps-nash") sub->add_option("--epsilon", cfg.epsilon)->required();
    } else if (n != "thresholds") {
      seeded(sub);
      search(sub);
      sub->add_option("--samples", cfg.samples);
      if (n == "stability" || n == "unrest" || n == "falsify") {
        sub->add_option("--box", cfg.box, "lo:hi per seller, comma separated");
      }
    }
  }

  std::vector<const char*> argv{"platgame"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return CmdSolve(cfg, out);
    if (compare->parsed()) return CmdCompareApprox(cfg, out);
    if (br->parsed()) return CmdBrDynamics(cfg, out);
    if (verify_kind == "nash") return CmdVerifyNash(cfg, false, out);
    if (verify_kind == "eps-nash") return CmdVerifyNash(cfg, true, out);
    if (verify_kind == "thresholds") return CmdVerifyThresholds(cfg, out);
    if (verify_kind == "ec") return CmdVerifyEc(cfg, out);
    if (verify_kind == "falsify") return CmdVerifyFalsify(cfg, out);
    if (verify_kind == "stability" || verify_kind == "unrest" ||
        verify_kind == "threshold-property") {
      return CmdVerifySampled(cfg, verify_kind, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace platgame::cli
