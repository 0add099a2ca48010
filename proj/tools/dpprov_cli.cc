// Copyright 2026 The dpprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: worked example, population generation, procurement and
// publication, cost sweeps, equilibrium comparison and verification suites.
//
// Every run writes its primary output to --out (or stdout) and a manifest
// to <out>.manifest.json (or stderr) recording the effective configuration,
// the seed, the generator id and a SHA-256 digest of each output file.

#include <openssl/evp.h>
#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpprov/auction.h"
#include "dpprov/cost_model.h"
#include "dpprov/dp_core.h"
#include "dpprov/equilibrium.h"
#include "dpprov/errors.h"
#include "dpprov/population_io.h"
#include "dpprov/rng.h"
#include "dpprov/serialization.h"
#include "dpprov/verify.h"

namespace dpprov {
namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kGenericError = 1,
  kUsage = 2,
  kDomain = 3,
  kThreshold = 4,
  kNoBracket = 5,
  kParse = 6,
  kCheckFailed = 7,
  kRange = 8,
  kBudget = 9,
  kCohortSize = 10,
  kModel = 11,
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  std::string config;
};

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("write to " + path + " failed");
}

// Accepts inline JSON (starting with '{') or a path to a JSON file.
Json ParseJsonArg(const std::string& arg) {
  const std::string text =
      !arg.empty() && arg.front() == '{' ? arg : ReadFile(arg);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1);
  }
}

// Collects the run's effective configuration and emits output + manifest.
class Run {
 public:
  Run(std::string command, const GlobalOptions& global)
      : command_(std::move(command)), global_(global) {}

  Json& config() { return config_; }
  void Warn(std::string warning) { warnings_.push_back(std::move(warning)); }

  void Emit(const std::string& content) {
    Json manifest = {{"command", command_},
                     {"config", config_},
                     {"seed", global_.seed ? Json(*global_.seed) : Json()},
                     {"artifact_version", kVersion},
                     {"generator_id", kGeneratorId}};
    Json outputs = Json::array();
    if (global_.out.empty()) {
      std::cout << content;
      std::cout.flush();
      outputs.push_back({{"path", "-"}, {"sha256", Sha256Hex(content)}});
    } else {
      WriteFile(global_.out, content);
      outputs.push_back({{"path", global_.out}, {"sha256", Sha256Hex(content)}});
    }
    manifest["outputs"] = std::move(outputs);
    manifest["warnings"] = warnings_;
    const std::string text = manifest.dump(2) + "\n";
    if (global_.out.empty()) {
      std::cerr << text;
    } else {
      WriteFile(global_.out + ".manifest.json", text);
    }
  }

 private:
  std::string command_;
  const GlobalOptions& global_;
  Json config_ = Json::object();
  Json warnings_ = Json::array();
};

std::uint64_t RequireSeed(const GlobalOptions& global) {
  if (!global.seed) throw DomainError("--seed is required for this command");
  return *global.seed;
}

int CmdExample(const GlobalOptions& global) {
  Run run("example", global);
  const SuiteReport report = VerifyExample();
  Json rows = Json::array();
  for (const ExampleRow& r : WorkedExample()) {
    rows.push_back({{"alpha", r.alpha},
                    {"beta", r.beta},
                    {"epsilon_times_n", r.epsilon_times_n},
                    {"cohort_fraction", r.cohort_fraction},
                    {"rounded_epsilon_times_n", r.rounded_epsilon_times_n},
                    {"rounded_cohort_fraction", r.rounded_cohort_fraction}});
  }
  Json out = {{"rows", rows}, {"checks", ReportToJson(report)}};
  run.Emit(out.dump(2) + "\n");
  return report.passed() ? kOk : kCheckFailed;
}

int CmdGenPop(const GlobalOptions& global) {
  if (global.config.empty()) throw DomainError("gen-pop needs --config");
  PopulationConfig config = ConfigFromJson(ParseJsonArg(global.config));
  config.seed = RequireSeed(global);
  Run run("gen-pop", global);
  run.config() = ConfigToJson(config);
  run.Emit(PopulationCsv(GeneratePopulation(config)));
  return kOk;
}

struct ProcurementArgs {
  std::string population;
  double alpha = 0.0;
  double beta = 1.0 / 3.0;
  std::string mechanism = "vcg";
  double budget = 0.0;
};

AuctionOutcome Procure(const Population& pop, const ProcurementArgs& args) {
  if (args.mechanism == "fairquery") return FairQuery(pop, args.budget, args.beta);
  const AccuracyTarget target = MakeAccuracyTarget(args.alpha, args.beta);
  if (args.mechanism == "vcg") return MinCostAuction(pop, target);
  if (args.mechanism == "lindahl") return LindahlProcurement(pop, target);
  throw DomainError("unknown mechanism '" + args.mechanism + "'");
}

Json ProcurementConfig(const ProcurementArgs& args) {
  Json j = {{"population", args.population},
            {"mechanism", args.mechanism},
            {"alpha", args.alpha},
            {"beta", args.beta}};
  if (args.mechanism == "fairquery") j["budget"] = args.budget;
  return j;
}

int CmdAuction(const GlobalOptions& global, const ProcurementArgs& args) {
  Run run("auction", global);
  run.config() = ProcurementConfig(args);
  const Population pop = LoadPopulation(args.population);
  const AuctionOutcome outcome = Procure(pop, args);
  Json out = OutcomeToJson(outcome, pop);
  out["individually_rational"] = VerifyIndividualRationality(outcome, pop);
  run.Emit(out.dump(2) + "\n");
  return kOk;
}

int CmdPublish(const GlobalOptions& global, const ProcurementArgs& args) {
  if (args.mechanism != "vcg" && args.mechanism != "lindahl") {
    throw DomainError("publish supports --mechanism vcg or lindahl");
  }
  const std::uint64_t seed = RequireSeed(global);
  Run run("publish", global);
  run.config() = ProcurementConfig(args);
  const Population pop = LoadPopulation(args.population);
  const AccuracyTarget target = MakeAccuracyTarget(args.alpha, args.beta);
  const AuctionOutcome outcome = Procure(pop, args);
  const BitDatabase db(pop.Bits());
  Rng rng(seed);
  const PublishedStatistic stat = GrPublish(db, outcome.selected, target, rng);
  const double truth = TrueStatistic(db);
  const double error = stat.value - truth;
  Json out = {{"outcome", OutcomeToJson(outcome, pop)},
              {"statistic", StatisticToJson(stat, seed)},
              {"true_statistic", truth},
              {"error", error},
              {"accuracy_certificate",
               {{"alpha", target.alpha()},
                {"beta", target.beta()},
                {"guarantee", "P(|error| > alpha) <= beta"},
                {"within_alpha", std::fabs(error) <= target.alpha()}}},
              {"dp_certificate",
               {{"sensitivity", kCohortSumSensitivity},
                {"epsilon", DpCertificate(target, pop.size())}}},
              {"individually_rational", VerifyIndividualRationality(outcome, pop)},
              {"generator_id", kGeneratorId}};
  run.Emit(out.dump(2) + "\n");
  return kOk;
}

struct CurveArgs {
  std::string model;
  std::string population;
  double n = 0.0;
  double beta = 1.0 / 3.0;
  std::string grid = "0.05:0.95:0.05";
  double eta_bar = 0.0;
  double eta_sum = 0.0;
};

// Fills unset curve arguments from --config keys of the same name.
void MergeCurveConfig(const GlobalOptions& global, CLI::App* sub, CurveArgs& args,
                      Json& model_json) {
  Json cfg = global.config.empty() ? Json::object() : ParseJsonArg(global.config);
  auto take = [&](const char* flag, const char* key, double& field) {
    // Subcommands without this flag still accept the key from --config.
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    const bool given = opt != nullptr && opt->count() > 0;
    if (!given && cfg.contains(key)) field = cfg.at(key).get<double>();
  };
  take("--n", "n", args.n);
  take("--beta", "beta", args.beta);
  take("--eta-bar", "eta_bar", args.eta_bar);
  take("--eta-sum", "eta_sum", args.eta_sum);
  const CLI::Option* grid_opt = sub->get_option_no_throw("--grid");
  const bool grid_given = grid_opt != nullptr && grid_opt->count() > 0;
  if (!grid_given && cfg.contains("grid")) {
    args.grid = cfg.at("grid").get<std::string>();
  }
  if (!args.model.empty()) {
    model_json = ParseJsonArg(args.model);
  } else if (cfg.contains("model")) {
    model_json = cfg.at("model");
  }
}

int CmdCostSweep(const GlobalOptions& global, CLI::App* sub, CurveArgs args) {
  Run run("cost-sweep", global);
  Json model_json;
  MergeCurveConfig(global, sub, args, model_json);
  std::optional<QuantileModel> model;
  if (!args.population.empty()) {
    const Population pop = LoadPopulation(args.population);
    model = EmpiricalQuantileModel(pop);
    if (args.n <= 0.0) args.n = static_cast<double>(pop.size());
    run.config()["population"] = args.population;
  } else if (!model_json.is_null()) {
    model = ModelFromJson(model_json);
    run.config()["model"] = model_json;
  } else {
    throw DomainError("cost-sweep needs --model or --population");
  }
  if (model->DerivativeIsApproximate()) {
    run.Warn("empirical model: Q' is a finite-difference approximation");
  }
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(args.grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3) {
    throw ParseError("grid must be lo:hi:step", 1);
  }
  run.config()["n"] = args.n;
  run.config()["beta"] = args.beta;
  run.config()["grid"] = args.grid;
  const CostCurve curve = MakeCostCurve(*model, args.n, args.beta);
  const auto rows = SweepCostCurves(curve, AccuracyGrid(lo, hi, step));
  int violations = 0;
  for (const auto& r : rows) {
    if (!r.ordered) {
      ++violations;
      run.Warn("ordering 0 < dC_L < dC_VCG violated at I = " + std::to_string(r.accuracy));
    }
  }
  run.Emit(CostSweepCsv(rows));
  if (violations > 0) {
    std::cerr << "cost-sweep: " << violations << " ordering violations\n";
    return kCheckFailed;
  }
  return kOk;
}

int CmdEquilibrium(const GlobalOptions& global, CLI::App* sub, CurveArgs args) {
  Run run("equilibrium", global);
  Json model_json;
  MergeCurveConfig(global, sub, args, model_json);
  if (model_json.is_null()) throw DomainError("equilibrium needs --model");
  const QuantileModel model = ModelFromJson(model_json);
  run.config() = {{"model", model_json},
                  {"n", args.n},
                  {"beta", args.beta},
                  {"eta_bar", args.eta_bar},
                  {"eta_sum", args.eta_sum}};
  const RegimeComparison c =
      CompareRegimes(model, args.n, args.beta, args.eta_bar, args.eta_sum);
  run.Emit(ComparisonToJson(c).dump(2) + "\n");
  if (c.vcg.status == RegimeStatus::kZeroProvision) {
    std::cerr << "equilibrium: no interior competitive root (zero provision)\n";
    return kNoBracket;
  }
  if (c.ordering_holds && !*c.ordering_holds) return kCheckFailed;
  if (c.foc_crosscheck && !*c.foc_crosscheck) return kCheckFailed;
  if (!c.ordering_holds) return kNoBracket;
  return kOk;
}

int CmdVerify(const GlobalOptions& global, const std::string& suite,
              std::optional<double> scale) {
  const std::uint64_t seed = RequireSeed(global);
  Run run("verify", global);
  run.config() = {{"suite", suite}, {"scale", scale ? Json(*scale) : Json()}};
  SuiteReport report;
  if (suite == "accuracy") {
    report = VerifyAccuracy(seed, static_cast<std::int64_t>(scale.value_or(100000)));
  } else if (suite == "dp") {
    report = VerifyDp(seed);
  } else if (suite == "auction") {
    report = VerifyAuction(seed, static_cast<int>(scale.value_or(1000)));
  } else if (suite == "derivatives") {
    report = VerifyDerivatives();
  } else if (suite == "ordering") {
    report = VerifyOrdering(seed, static_cast<int>(scale.value_or(200)));
  } else if (suite == "convergence") {
    report = VerifyConvergence(seed, static_cast<std::int64_t>(scale.value_or(100000)));
  } else {
    throw DomainError("unknown suite '" + suite + "'");
  }
  run.Emit(ReportToJson(report).dump(2) + "\n");
  return report.passed() ? kOk : kCheckFailed;
}

int ExitCodeFor(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const DomainError&) {
    return kDomain;
  } catch (const ThresholdError&) {
    return kThreshold;
  } catch (const NoBracketError&) {
    return kNoBracket;
  } catch (const ParseError&) {
    return kParse;
  } catch (const RangeError&) {
    return kRange;
  } catch (const BudgetError&) {
    return kBudget;
  } catch (const CohortSizeError&) {
    return kCohortSize;
  } catch (const ModelError&) {
    return kModel;
  } catch (const QuadratureError&) {
    return kModel;
  } catch (...) {
    return kGenericError;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Private provision of statistical data: procurement, publication "
               "and equilibrium tools"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "64-bit seed (mandatory for randomized commands)");
  app.add_option("--out", global.out, "output file (default stdout)");
  app.add_option("--jobs", global.jobs, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--config", global.config, "JSON config: inline object or file path");

  app.add_subcommand("example", "reproduce the worked (alpha, beta) example");
  app.add_subcommand("gen-pop", "generate a synthetic population CSV from --config");

  ProcurementArgs proc;
  for (const char* name : {"publish", "auction"}) {
    auto* sub = app.add_subcommand(
        name, std::string(name) == "publish"
                  ? "procure a cohort and publish the noisy proportion"
                  : "run a procurement mechanism on a population");
    sub->add_option("--population", proc.population, "population CSV")->required();
    sub->add_option("--alpha", proc.alpha, "error bound alpha");
    sub->add_option("--beta", proc.beta, "failure probability beta");
    sub->add_option("--mechanism", proc.mechanism, "vcg | lindahl | fairquery");
    if (std::string(name) == "auction") {
      sub->add_option("--budget", proc.budget, "budget for fairquery");
    }
  }

  CurveArgs curve;
  auto* sweep = app.add_subcommand("cost-sweep", "tabulate cost curves over accuracy");
  sweep->add_option("--model", curve.model, "quantile model JSON (inline or path)");
  sweep->add_option("--population", curve.population, "use the empirical model of a population");
  sweep->add_option("--n", curve.n, "population measure N");
  sweep->add_option("--beta", curve.beta, "failure probability beta");
  sweep->add_option("--grid", curve.grid, "lo:hi:step");

  auto* eq = app.add_subcommand("equilibrium", "solve and compare provision regimes");
  eq->add_option("--model", curve.model, "quantile model JSON (inline or path)");
  eq->add_option("--n", curve.n, "population measure N");
  eq->add_option("--beta", curve.beta, "failure probability beta");
  eq->add_option("--eta-bar", curve.eta_bar, "largest accuracy valuation");
  eq->add_option("--eta-sum", curve.eta_sum, "sum of accuracy valuations");

  std::string suite;
  std::optional<double> scale;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "accuracy | dp | auction | derivatives | ordering | convergence")
      ->required();
  verify->add_option("--scale", scale, "trials, instances, configs or n, per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  omp_set_num_threads(global.jobs);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "example") return CmdExample(global);
    if (command == "gen-pop") return CmdGenPop(global);
    if (command == "publish") return CmdPublish(global, proc);
    if (command == "auction") return CmdAuction(global, proc);
    if (command == "cost-sweep") return CmdCostSweep(global, sweep, curve);
    if (command == "equilibrium") return CmdEquilibrium(global, eq, curve);
    if (command == "verify") return CmdVerify(global, suite, scale);
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return ExitCodeFor(std::current_exception());
  }
  return kUsage;
}

}  // namespace
}  // namespace dpprov

int main(int argc, char** argv) { return dpprov::Main(argc, argv); }
