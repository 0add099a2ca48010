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

#ifndef DPPROV_KERNELS_H_
#define DPPROV_KERNELS_H_

// Data-parallel property suites. Each has an OpenMP driver and a serial
// reference that must produce identical results; instance i always draws
// from sub-stream i of the seed, so results do not depend on thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "dpprov/dp_core.h"
#include "dpprov/quantile_model.h"

namespace dpprov {

struct OrderingConfig {
  QuantileModel model;
  double n;
  double beta;
  double eta_bar;
  double eta_sum;
};

// Random interior configuration number `index`: a lognormal or positive
// two-component mixture, beta in [0.02, 0.37], n log-uniform in
// [1e2, 1e5], eta_bar set to the VCG marginal cost at an accuracy drawn
// from [0.1, 0.8], and eta_sum = eta_bar * [1.5, 100].
OrderingConfig RandomOrderingConfig(std::uint64_t seed, std::uint64_t index);

struct OrderingTrial {
  std::uint64_t index = 0;
  bool pointwise_ok = false;  // 0 < dC^L < dC^VCG on the grid
  bool roots_ok = false;      // I^VCG < I^L, I^VCG < I^0, eps^VCG < eps^0
  bool interior = false;
  double i_vcg = 0.0;
  double i_lindahl = 0.0;
  double i_pareto = 0.0;
  double eps_vcg = 0.0;
  double eps_pareto = 0.0;
  std::string detail;
  bool passed() const { return interior && pointwise_ok && roots_ok; }
};

OrderingTrial RunOrderingTrial(const OrderingConfig& config,
                               std::uint64_t index);

std::vector<OrderingTrial> RunOrderingSuite(std::uint64_t seed, int count);
std::vector<OrderingTrial> RunOrderingSuiteReference(std::uint64_t seed,
                                                     int count);

struct AuctionInstance {
  std::vector<double> gammas;
  AccuracyTarget target;
};

// Every gamma vector over {1, 2, 3}^n for n = 2..6, each with alpha just
// above m / n so the threshold bidder exists.
std::vector<AuctionInstance> ExhaustiveAuctionInstances();

// Random instance: n in [2, 12], gammas either continuous lognormal draws or
// small integers (to force ties), and a feasible target.
AuctionInstance RandomAuctionInstance(std::uint64_t seed, std::uint64_t index);

struct AuctionCheck {
  bool truthful = true;
  double max_misreport_gain = 0.0;
  bool individually_rational = true;
  bool envy_free = true;
  bool selection_matches_oracle = true;
  bool lindahl_not_costlier = true;
  // Strict Lindahl saving whenever the threshold price exceeds the
  // cheapest selected gamma.
  bool strictness_ok = true;
  bool passed() const {
    return truthful && individually_rational && envy_free &&
           selection_matches_oracle && lindahl_not_costlier && strictness_ok;
  }
};

AuctionCheck CheckAuctionInstance(const AuctionInstance& instance);

std::vector<AuctionCheck> CheckAuctionInstances(
    const std::vector<AuctionInstance>& instances);
std::vector<AuctionCheck> CheckAuctionInstancesReference(
    const std::vector<AuctionInstance>& instances);

}  // namespace dpprov

#endif  // DPPROV_KERNELS_H_
