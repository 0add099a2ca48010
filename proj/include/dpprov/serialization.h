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

#ifndef DPPROV_SERIALIZATION_H_
#define DPPROV_SERIALIZATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpprov/auction.h"
#include "dpprov/cost_model.h"
#include "dpprov/dp_core.h"
#include "dpprov/equilibrium.h"
#include "dpprov/population_io.h"
#include "dpprov/quantile_model.h"
#include "json.hpp"

namespace dpprov {

using Json = nlohmann::ordered_json;

// {"kind": "lognormal" | "mixture" | "empirical", "params": {...}}.
// lognormal: {mu, sigma}; mixture: {weights, means, sigmas};
// empirical: {sample}. Throws ModelError on bad specs.
Json ModelToJson(const QuantileModel& model);
QuantileModel ModelFromJson(const Json& j);

// {value, epsilon, cohort_size, bias_correction, seed, noise_draw}.
Json StatisticToJson(const PublishedStatistic& stat, std::uint64_t seed);

// {mechanism, n, alpha, beta, epsilon, selected_ids, payments, total_cost}
// plus unit_price when the mechanism pays a common price.
Json OutcomeToJson(const AuctionOutcome& outcome, const Population& pop);

Json ComparisonToJson(const RegimeComparison& comparison);

// Mirrors PopulationConfig; missing fields keep their defaults.
PopulationConfig ConfigFromJson(const Json& j);
Json ConfigToJson(const PopulationConfig& config);

// Header `I,C_vcg,C_lindahl,dC_vcg,dC_lindahl,soc` with 17 significant
// digits per value.
std::string CostSweepCsv(const std::vector<CostSweepRow>& rows);

}  // namespace dpprov

#endif  // DPPROV_SERIALIZATION_H_
