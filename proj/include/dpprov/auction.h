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

#ifndef DPPROV_AUCTION_H_
#define DPPROV_AUCTION_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dpprov/dp_core.h"
#include "dpprov/population.h"

namespace dpprov {

enum class Mechanism { kVcg, kFairQuery, kLindahl };

std::string_view MechanismName(Mechanism mechanism);

struct AuctionOutcome {
  Mechanism mechanism;
  std::int64_t n = 0;
  double alpha = 0.0;  // implied alpha for FairQuery
  double beta = 0.0;
  PrivacyLoss epsilon{0.0};
  // Indices into the population, in selection order (ascending gamma).
  std::vector<std::int64_t> selected;
  // Common unit price for VCG and FairQuery; empty for Lindahl.
  std::optional<double> unit_price;
  // Per-selected unit price (equal to unit_price when one is set).
  std::vector<double> prices;
  // Per-selected payment, aligned with `selected`. Unselected consumers are
  // paid nothing.
  std::vector<double> payments;
  double total_cost = 0.0;
};

// Consumer indices sorted by ascending gamma, ties broken by ascending id.
std::vector<std::int64_t> OrderByGamma(const Population& pop);

// Threshold (VCG) procurement: buys eps from the k = ceil(H) cheapest
// consumers and pays each the (k+1)-st lowest gamma per unit. Throws
// ThresholdError when k >= n.
AuctionOutcome MinCostAuction(const Population& pop,
                              const AccuracyTarget& target);

// Budgeted procurement: the largest k < n whose cost
// k * gamma_(k+1) / (n - k) stays within the budget (inclusive). The
// outcome's alpha is the implied accuracy m (n - k) / n.
AuctionOutcome FairQuery(const Population& pop, double budget, double beta);

// Price-discriminating procurement: the k cheapest consumers each get a
// personal price equal to their own gamma.
AuctionOutcome LindahlProcurement(const Population& pop,
                                  const AccuracyTarget& target);

// Every selected consumer is paid at least gamma_i * eps (to 1e-12), and
// the outcome is well formed. Throws MismatchError if it refers to
// consumers outside `pop`.
bool VerifyIndividualRationality(const AuctionOutcome& outcome,
                                 const Population& pop);

// Quasilinear surplus of consumer i under an outcome, at true gamma.
double ConsumerUtility(const AuctionOutcome& outcome, const Population& pop,
                       std::int64_t i);

// Utility change for consumer i when reporting `reported_gamma` instead of
// the truth in the threshold auction. Nonpositive under truthfulness.
double MisreportGain(const Population& pop, const AccuracyTarget& target,
                     std::int64_t i, double reported_gamma);

}  // namespace dpprov

#endif  // DPPROV_AUCTION_H_
