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

#include "dpprov/serialization.h"

#include <cstdio>

#include "dpprov/errors.h"

namespace dpprov {

Json ModelToJson(const QuantileModel& model) {
  Json j;
  j["kind"] = model.KindName();
  if (const auto* ln = model.lognormal()) {
    j["params"] = {{"mu", ln->mu}, {"sigma", ln->sigma}};
  } else if (const auto* mix = model.mixture()) {
    j["params"] = {{"weights", mix->weights},
                   {"means", mix->means},
                   {"sigmas", mix->sigmas}};
  } else {
    j["params"] = {{"sample", model.empirical()->sorted_sample}};
  }
  return j;
}

QuantileModel ModelFromJson(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const Json& p = j.at("params");
    if (kind == "lognormal") {
      return QuantileModel::LogNormal(p.at("mu").get<double>(),
                                      p.at("sigma").get<double>());
    }
    if (kind == "mixture") {
      return QuantileModel::NormalMixture(p.at("weights").get<std::vector<double>>(),
                                          p.at("means").get<std::vector<double>>(),
                                          p.at("sigmas").get<std::vector<double>>());
    }
    if (kind == "empirical") {
      return QuantileModel::Empirical(p.at("sample").get<std::vector<double>>());
    }
    throw ModelError("unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model description: ") + e.what());
  }
}

Json StatisticToJson(const PublishedStatistic& stat, std::uint64_t seed) {
  return {{"value", stat.value},
          {"epsilon", stat.epsilon.epsilon},
          {"cohort_size", stat.cohort_size},
          {"bias_correction", stat.bias_correction},
          {"seed", seed},
          {"noise_draw", stat.noise_draw}};
}

Json OutcomeToJson(const AuctionOutcome& outcome, const Population& pop) {
  std::vector<std::int64_t> ids;
  for (const std::int64_t i : outcome.selected) ids.push_back(pop[i].id);
  Json j = {{"mechanism", MechanismName(outcome.mechanism)},
            {"n", outcome.n},
            {"alpha", outcome.alpha},
            {"beta", outcome.beta},
            {"epsilon", outcome.epsilon.epsilon},
            {"selected_ids", ids},
            {"payments", outcome.payments},
            {"total_cost", outcome.total_cost}};
  if (outcome.unit_price) j["unit_price"] = *outcome.unit_price;
  return j;
}

namespace {

Json RegimeToJson(const RegimeResult& r) {
  Json j = {{"status", RegimeStatusName(r.status)}};
  if (r.root) {
    const RootResult& root = *r.root;
    j["accuracy"] = root.accuracy;
    j["epsilon"] = *r.epsilon;
    j["residual"] = root.residual;
    j["bracket"] = {root.bracket_lo, root.bracket_hi};
    j["sign_changes"] = root.sign_changes;
    j["nonmonotone_warning"] = root.nonmonotone;
    j["soc"] = root.soc;
    j["tag"] = root.certified ? "equilibrium" : "stationary, not certified";
  } else {
    j["message"] = r.message;
  }
  return j;
}

}  // namespace

Json ComparisonToJson(const RegimeComparison& c) {
  Json j = {{"n", c.n},
            {"beta", c.beta},
            {"price_of_accuracy", c.price_of_accuracy},
            {"eta_sum", c.eta_sum},
            {"vcg", RegimeToJson(c.vcg)},
            {"lindahl", RegimeToJson(c.lindahl)},
            {"pareto", RegimeToJson(c.pareto)}};
  j["foc_crosscheck"] = c.foc_crosscheck ? Json(*c.foc_crosscheck) : Json();
  j["ordering_holds"] = c.ordering_holds ? Json(*c.ordering_holds) : Json();
  j["lindahl_vs_pareto"] =
      c.lindahl_vs_pareto ? Json(*c.lindahl_vs_pareto) : Json();
  return j;
}

PopulationConfig ConfigFromJson(const Json& j) {
  PopulationConfig c;
  try {
    if (j.contains("n")) c.n = j.at("n").get<std::int64_t>();
    if (j.contains("gamma_model")) c.gamma_model = ModelFromJson(j.at("gamma_model"));
    if (j.contains("eta_model")) {
      const Json& e = j.at("eta_model");
      c.eta_model.a = e.value("a", c.eta_model.a);
      c.eta_model.b = e.value("b", c.eta_model.b);
      c.eta_model.eta_bar = e.value("eta_bar", c.eta_model.eta_bar);
    }
    c.bit_prevalence = j.value("bit_prevalence", c.bit_prevalence);
    c.gamma_bit_correlation =
        j.value("gamma_bit_correlation", c.gamma_bit_correlation);
    if (j.contains("income_model")) {
      const Json& e = j.at("income_model");
      c.income_model.mu = e.value("mu", c.income_model.mu);
      c.income_model.sigma = e.value("sigma", c.income_model.sigma);
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed population config: ") + e.what());
  }
  ValidateConfig(c);
  return c;
}

Json ConfigToJson(const PopulationConfig& c) {
  return {{"n", c.n},
          {"gamma_model", ModelToJson(c.gamma_model)},
          {"eta_model",
           {{"a", c.eta_model.a}, {"b", c.eta_model.b}, {"eta_bar", c.eta_model.eta_bar}}},
          {"bit_prevalence", c.bit_prevalence},
          {"gamma_bit_correlation", c.gamma_bit_correlation},
          {"income_model",
           {{"mu", c.income_model.mu}, {"sigma", c.income_model.sigma}}},
          {"seed", c.seed}};
}

std::string CostSweepCsv(const std::vector<CostSweepRow>& rows) {
  std::string out = "I,C_vcg,C_lindahl,dC_vcg,dC_lindahl,soc\n";
  char buf[256];
  for (const CostSweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.accuracy, r.c_vcg, r.c_lindahl, r.dc_vcg, r.dc_lindahl,
                  r.soc);
    out += buf;
  }
  return out;
}

}  // namespace dpprov
