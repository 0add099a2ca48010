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

#include "dpprov/auction.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dpprov/errors.h"

namespace dpprov {

std::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kVcg:
      return "vcg";
    case Mechanism::kFairQuery:
      return "fairquery";
    case Mechanism::kLindahl:
      return "lindahl";
  }
  return "unknown";
}

std::vector<std::int64_t> OrderByGamma(const Population& pop) {
  std::vector<std::int64_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    if (pop[a].gamma != pop[b].gamma) return pop[a].gamma < pop[b].gamma;
    return pop[a].id < pop[b].id;
  });
  return order;
}

namespace {

double Sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

AuctionOutcome MinCostAuction(const Population& pop,
                              const AccuracyTarget& target) {
  const std::int64_t n = pop.size();
  const std::int64_t k = RequiredCohortCount(target, n);
  if (k >= n) {
    throw ThresholdError("threshold auction needs " + std::to_string(k + 1) +
                         " bidders, population has " + std::to_string(n));
  }
  const auto order = OrderByGamma(pop);
  AuctionOutcome out;
  out.mechanism = Mechanism::kVcg;
  out.n = n;
  out.alpha = target.alpha();
  out.beta = target.beta();
  out.epsilon = EpsilonFor(target, n);
  out.selected.assign(order.begin(), order.begin() + k);
  const double price = pop[order[k]].gamma;
  out.unit_price = price;
  out.prices.assign(k, price);
  out.payments.assign(k, price * out.epsilon.epsilon);
  out.total_cost = Sum(out.payments);
  return out;
}

AuctionOutcome FairQuery(const Population& pop, double budget, double beta) {
  if (!(budget > 0.0)) throw DomainError("budget must be positive");
  const double m = MFromBeta(beta);
  const std::int64_t n = pop.size();
  if (n < 2) throw ThresholdError("FairQuery needs at least two bidders");
  const auto order = OrderByGamma(pop);
  // Cost is nondecreasing in k: k / (n - k) grows and gamma is sorted.
  auto cost = [&](std::int64_t k) {
    return static_cast<double>(k) * pop[order[k]].gamma /
           static_cast<double>(n - k);
  };
  std::int64_t best = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    if (cost(k) <= budget) best = k;
  }
  if (best == 0) {
    throw BudgetError("budget " + std::to_string(budget) +
                      " cannot buy even one participant (needs " +
                      std::to_string(cost(1)) + ")");
  }
  AuctionOutcome out;
  out.mechanism = Mechanism::kFairQuery;
  out.n = n;
  out.beta = beta;
  out.alpha = m * static_cast<double>(n - best) / static_cast<double>(n);
  out.epsilon = {1.0 / static_cast<double>(n - best)};
  out.selected.assign(order.begin(), order.begin() + best);
  const double price = pop[order[best]].gamma;
  out.unit_price = price;
  out.prices.assign(best, price);
  out.payments.assign(best, price * out.epsilon.epsilon);
  out.total_cost = Sum(out.payments);
  return out;
}

AuctionOutcome LindahlProcurement(const Population& pop,
                                  const AccuracyTarget& target) {
  const std::int64_t n = pop.size();
  const std::int64_t k = RequiredCohortCount(target, n);
  if (k > n) throw DomainError("cohort larger than population");
  const auto order = OrderByGamma(pop);
  AuctionOutcome out;
  out.mechanism = Mechanism::kLindahl;
  out.n = n;
  out.alpha = target.alpha();
  out.beta = target.beta();
  out.epsilon = EpsilonFor(target, n);
  out.selected.assign(order.begin(), order.begin() + k);
  for (const std::int64_t i : out.selected) {
    out.prices.push_back(pop[i].gamma);
    out.payments.push_back(pop[i].gamma * out.epsilon.epsilon);
  }
  out.total_cost = Sum(out.payments);
  return out;
}

namespace {

void CheckOutcomeMatches(const AuctionOutcome& outcome, const Population& pop) {
  if (outcome.n != pop.size()) {
    throw MismatchError("outcome was computed for a population of " +
                        std::to_string(outcome.n));
  }
  for (const std::int64_t i : outcome.selected) {
    if (i < 0 || i >= pop.size()) {
      throw MismatchError("selected index " + std::to_string(i) +
                          " is not in the population");
    }
  }
}

}  // namespace

bool VerifyIndividualRationality(const AuctionOutcome& outcome,
                                 const Population& pop) {
  CheckOutcomeMatches(outcome, pop);
  if (outcome.payments.size() != outcome.selected.size()) return false;
  std::vector<bool> seen(pop.size(), false);
  for (std::size_t j = 0; j < outcome.selected.size(); ++j) {
    const std::int64_t i = outcome.selected[j];
    if (seen[i]) return false;
    seen[i] = true;
    const double surplus =
        outcome.payments[j] - pop[i].gamma * outcome.epsilon.epsilon;
    if (surplus < -1e-12) return false;
  }
  return true;
}

double ConsumerUtility(const AuctionOutcome& outcome, const Population& pop,
                       std::int64_t i) {
  CheckOutcomeMatches(outcome, pop);
  for (std::size_t j = 0; j < outcome.selected.size(); ++j) {
    if (outcome.selected[j] == i) {
      return outcome.payments[j] - pop[i].gamma * outcome.epsilon.epsilon;
    }
  }
  return 0.0;
}

double MisreportGain(const Population& pop, const AccuracyTarget& target,
                     std::int64_t i, double reported_gamma) {
  if (!(reported_gamma > 0.0)) {
    throw DomainError("reported gamma must be positive");
  }
  if (i < 0 || i >= pop.size()) throw IndexError("consumer index out of range");
  const AuctionOutcome truthful = MinCostAuction(pop, target);
  std::vector<Consumer> reported = pop.consumers();
  reported[i].gamma = reported_gamma;
  const AuctionOutcome deviated =
      MinCostAuction(Population(std::move(reported)), target);
  // Utilities are evaluated at the true gamma.
  return ConsumerUtility(deviated, pop, i) - ConsumerUtility(truthful, pop, i);
}

}  // namespace dpprov
