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

#include "dpprov/kernels.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "dpprov/auction.h"
#include "dpprov/cost_model.h"
#include "dpprov/equilibrium.h"
#include "dpprov/errors.h"
#include "dpprov/rng.h"

namespace dpprov {

namespace {

double UniformIn(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.UniformOpen();
}

}  // namespace

namespace {

QuantileModel RandomModel(Rng& rng) {
  if (rng.UniformOpen() < 0.5) {
    return QuantileModel::LogNormal(UniformIn(rng, -1.0, 1.0),
                                    UniformIn(rng, 0.3, 1.2));
  }
  // Component means at least five sigmas above zero keep F(0) < 1e-6.
  const double m1 = UniformIn(rng, 2.0, 4.0);
  const double m2 = m1 + UniformIn(rng, 1.0, 4.0);
  const double w1 = UniformIn(rng, 0.2, 0.8);
  return QuantileModel::NormalMixture({w1, 1.0 - w1}, {m1, m2},
                                      {m1 * UniformIn(rng, 0.1, 0.19),
                                       m2 * UniformIn(rng, 0.1, 0.19)});
}

// Both marginal costs strictly increasing on the solver's pre-scan grid, i.e.
// the cost curves are convex there as the ordering result presumes.
bool HasConvexCosts(const CostCurve& curve) {
  double prev_vcg = 0.0, prev_lindahl = 0.0;
  for (int i = 0; i < kPreScanPoints; ++i) {
    const double x = kAccuracyFloor + (kAccuracyCeiling - kAccuracyFloor) * i /
                                          (kPreScanPoints - 1);
    const double v = DcVcg(curve, x), l = DcLindahl(curve, x);
    if (i > 0 && !(v > prev_vcg && l > prev_lindahl)) return false;
    prev_vcg = v;
    prev_lindahl = l;
  }
  return true;
}

constexpr int kMaxConfigDraws = 1000;

}  // namespace

OrderingConfig RandomOrderingConfig(std::uint64_t seed, std::uint64_t index) {
  Rng rng = Rng::Substream(seed, index);
  for (int attempt = 0; attempt < kMaxConfigDraws; ++attempt) {
    QuantileModel model = RandomModel(rng);
    const double beta = UniformIn(rng, 0.02, 0.37);
    const double n = std::pow(10.0, UniformIn(rng, 2.0, 5.0));
    const double target = UniformIn(rng, 0.1, 0.8);
    const double spread = UniformIn(rng, 1.5, 100.0);
    const CostCurve curve = MakeCostCurve(model, n, beta);
    if (!HasConvexCosts(curve)) continue;
    const double eta_bar = DcVcg(curve, target);
    return OrderingConfig{std::move(model), n, beta, eta_bar, eta_bar * spread};
  }
  throw ModelError("no convex configuration drawn");
}

OrderingTrial RunOrderingTrial(const OrderingConfig& config,
                               std::uint64_t index) {
  OrderingTrial trial;
  trial.index = index;
  try {
    const CostCurve curve = MakeCostCurve(config.model, config.n, config.beta);
    trial.pointwise_ok = true;
    for (const double x : AccuracyGrid(0.05, 0.95, 0.05)) {
      const double dl = DcLindahl(curve, x);
      const double dv = DcVcg(curve, x);
      if (!(0.0 < dl && dl < dv)) {
        trial.pointwise_ok = false;
        trial.detail = "pointwise ordering fails at I = " + std::to_string(x);
      }
    }
    const RegimeComparison c = CompareRegimes(config.model, config.n, config.beta,
                                              config.eta_bar, config.eta_sum);
    trial.interior = c.vcg.root && c.lindahl.root && c.pareto.root;
    if (!trial.interior) {
      trial.detail = "regime without interior root";
      return trial;
    }
    trial.i_vcg = c.vcg.root->accuracy;
    trial.i_lindahl = c.lindahl.root->accuracy;
    trial.i_pareto = c.pareto.root->accuracy;
    trial.eps_vcg = *c.vcg.epsilon;
    trial.eps_pareto = *c.pareto.epsilon;
    trial.roots_ok = trial.i_vcg < trial.i_lindahl &&
                     trial.i_vcg < trial.i_pareto &&
                     trial.eps_vcg < trial.eps_pareto;
    if (!trial.roots_ok) trial.detail = "root ordering fails";
  } catch (const Error& e) {
    trial.detail = e.what();
  }
  return trial;
}

std::vector<OrderingTrial> RunOrderingSuite(std::uint64_t seed, int count) {
  std::vector<OrderingTrial> trials(std::max(count, 0));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      trials[i] = RunOrderingTrial(RandomOrderingConfig(seed, i), i);
    } catch (const Error& e) {
      trials[i].index = i;
      trials[i].detail = e.what();
    }
  }
  return trials;
}

std::vector<OrderingTrial> RunOrderingSuiteReference(std::uint64_t seed,
                                                     int count) {
  std::vector<OrderingTrial> trials;
  for (int i = 0; i < count; ++i) {
    try {
      trials.push_back(RunOrderingTrial(RandomOrderingConfig(seed, i), i));
    } catch (const Error& e) {
      OrderingTrial t;
      t.index = i;
      t.detail = e.what();
      trials.push_back(t);
    }
  }
  return trials;
}

namespace {

// Smallest alpha (slightly above m / n) leaving one bidder out of the cohort.
double ThresholdAlpha(std::size_t n, double beta) {
  return MFromBeta(beta) / static_cast<double>(n) * 1.0001;
}

}  // namespace

std::vector<AuctionInstance> ExhaustiveAuctionInstances() {
  constexpr double kBeta = 1.0 / 3.0;
  std::vector<AuctionInstance> out;
  for (std::size_t n = 2; n <= 6; ++n) {
    const AccuracyTarget target = MakeAccuracyTarget(ThresholdAlpha(n, kBeta), kBeta);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> gammas(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) gammas[i] = 1.0 + c % 3;
      out.push_back({std::move(gammas), target});
    }
  }
  return out;
}

AuctionInstance RandomAuctionInstance(std::uint64_t seed, std::uint64_t index) {
  Rng rng = Rng::Substream(seed, index);
  const std::size_t n = 2 + static_cast<std::size_t>(rng.UniformOpen() * 11.0);
  const bool ties = rng.UniformOpen() < 0.3;
  std::vector<double> gammas(n);
  for (double& g : gammas) {
    g = ties ? 1.0 + std::floor(rng.UniformOpen() * 4.0)
             : std::exp(rng.StandardNormal());
  }
  // beta high enough that some alpha < 0.95 admits a threshold bidder.
  const double beta = UniformIn(rng, 0.25, 0.37);
  const double lo = ThresholdAlpha(n, beta);
  const double alpha = lo >= 0.95 ? lo : UniformIn(rng, lo, 0.95);
  return {std::move(gammas), MakeAccuracyTarget(alpha, beta)};
}

AuctionCheck CheckAuctionInstance(const AuctionInstance& instance) {
  AuctionCheck check;
  const Population pop = PopulationFromGammas(instance.gammas);
  const std::int64_t n = pop.size();
  const AuctionOutcome vcg = MinCostAuction(pop, instance.target);
  const AuctionOutcome lindahl = LindahlProcurement(pop, instance.target);
  const double eps = vcg.epsilon.epsilon;
  const std::int64_t k = static_cast<std::int64_t>(vcg.selected.size());

  // Brute-force oracle: i is selected iff fewer than k consumers precede it
  // under (gamma, id) order.
  std::set<std::int64_t> expected;
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t ahead = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      if (pop[j].gamma < pop[i].gamma ||
          (pop[j].gamma == pop[i].gamma && pop[j].id < pop[i].id)) {
        ++ahead;
      }
    }
    if (ahead < k) expected.insert(i);
  }
  check.selection_matches_oracle =
      expected == std::set<std::int64_t>(vcg.selected.begin(), vcg.selected.end()) &&
      expected == std::set<std::int64_t>(lindahl.selected.begin(), lindahl.selected.end());

  check.individually_rational = VerifyIndividualRationality(vcg, pop) &&
                                VerifyIndividualRationality(lindahl, pop);

  for (const double p : vcg.payments) {
    if (p != vcg.payments.front()) check.envy_free = false;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (expected.count(i) == 0 &&
        pop[i].gamma * eps < vcg.payments.front() - 1e-12) {
      check.envy_free = false;
    }
  }

  check.lindahl_not_costlier = lindahl.total_cost <= vcg.total_cost + 1e-12;
  double min_selected = pop[vcg.selected.front()].gamma;
  for (const std::int64_t i : vcg.selected) min_selected = std::min(min_selected, pop[i].gamma);
  if (*vcg.unit_price > min_selected) {
    check.strictness_ok = lindahl.total_cost < vcg.total_cost;
  }

  // Deviation grid: every other gamma, nudges around it, midpoints, and
  // values beyond both ends.
  std::set<double> values(instance.gammas.begin(), instance.gammas.end());
  std::vector<double> grid;
  double previous = 0.0;
  for (const double v : values) {
    grid.insert(grid.end(), {v, v * (1.0 - 1e-9), v * (1.0 + 1e-9)});
    if (previous > 0.0) grid.push_back(0.5 * (previous + v));
    previous = v;
  }
  grid.push_back(0.5 * *values.begin());
  grid.push_back(2.0 * *values.rbegin());
  for (std::int64_t i = 0; i < n; ++i) {
    for (const double report : grid) {
      const double gain = MisreportGain(pop, instance.target, i, report);
      check.max_misreport_gain = std::max(check.max_misreport_gain, gain);
    }
  }
  check.truthful = check.max_misreport_gain <= 1e-12;
  return check;
}

std::vector<AuctionCheck> CheckAuctionInstances(
    const std::vector<AuctionInstance>& instances) {
  const long count = static_cast<long>(instances.size());
  std::vector<AuctionCheck> out(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) out[i] = CheckAuctionInstance(instances[i]);
  return out;
}

std::vector<AuctionCheck> CheckAuctionInstancesReference(
    const std::vector<AuctionInstance>& instances) {
  std::vector<AuctionCheck> out;
  out.reserve(instances.size());
  for (const auto& instance : instances) out.push_back(CheckAuctionInstance(instance));
  return out;
}

}  // namespace dpprov
