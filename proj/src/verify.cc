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

#include "dpprov/verify.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpprov/kernels.h"
#include "dpprov/rng.h"

namespace dpprov {

namespace {

Check MakeCheck(std::string name, bool passed, double measured,
                double threshold, std::string detail = "") {
  return Check{std::move(name), passed, measured, threshold, std::move(detail)};
}

double Relative(double a, double b) {
  return std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
}

std::vector<std::int64_t> FirstK(std::int64_t k) {
  std::vector<std::int64_t> v(k);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

const std::vector<std::pair<double, double>>& ExampleTargets() {
  static const std::vector<std::pair<double, double>> targets = {
      {0.2, 0.1}, {0.05, 0.05}, {0.4, 1.0 / 3.0}};
  return targets;
}

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

Json ReportToJson(const SuiteReport& report) {
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    Json j = {{"name", c.name},
              {"passed", c.passed},
              {"measured", c.measured},
              {"threshold", c.threshold}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return {{"suite", report.suite},
          {"passed", report.passed()},
          {"generator_id", kGeneratorId},
          {"checks", std::move(checks)}};
}

std::vector<ExampleRow> WorkedExample() {
  constexpr std::int64_t kN = 1000;
  std::vector<ExampleRow> rows;
  for (const auto& [alpha, beta] : ExampleTargets()) {
    const AccuracyTarget target = MakeAccuracyTarget(alpha, beta);
    ExampleRow row;
    row.alpha = alpha;
    row.beta = beta;
    row.epsilon_times_n = EpsilonFor(target, kN).epsilon * kN;
    row.cohort_fraction = CohortSize(target, kN) / kN;
    row.rounded_epsilon_times_n = std::round(row.epsilon_times_n);
    row.rounded_cohort_fraction = std::round(row.cohort_fraction * 100.0) / 100.0;
    rows.push_back(row);
  }
  return rows;
}

SuiteReport VerifyExample() {
  // Figures quoted for the worked example: eps * N and H / N.
  static constexpr double kQuotedEps[] = {14.0, 70.0, 4.0};
  static constexpr double kQuotedCohort[] = {0.93, 0.99, 0.75};
  static constexpr double kComputedEps[] = {14.0129, 69.915, 3.9965};
  static constexpr double kComputedCohort[] = {0.92864, 0.98569, 0.74978};
  SuiteReport report{"example", {}};
  const auto rows = WorkedExample();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ExampleRow& r = rows[i];
    const std::string tag = "(" + std::to_string(r.alpha) + ", " +
                            std::to_string(r.beta) + ")";
    const double m = 0.5 + std::log(1.0 / r.beta);
    const double closed_eps = m / r.alpha;
    const double closed_cohort = 1.0 - r.alpha / m;
    const double err = std::max(Relative(r.epsilon_times_n, closed_eps),
                                Relative(r.cohort_fraction, closed_cohort));
    report.checks.push_back(
        MakeCheck(tag + " closed form", err <= 1e-6, err, 1e-6));
    // Reported values agree with the tabulated ones to their printed digits.
    const double eps_digits = Relative(r.epsilon_times_n, kComputedEps[i]);
    const double cohort_digits = Relative(r.cohort_fraction, kComputedCohort[i]);
    report.checks.push_back(MakeCheck(
        tag + " tabulated digits", eps_digits < 1e-4 && cohort_digits < 1e-4,
        std::max(eps_digits, cohort_digits), 1e-4));
    const bool rounds = r.rounded_epsilon_times_n == kQuotedEps[i] &&
                        std::fabs(r.rounded_cohort_fraction - kQuotedCohort[i]) < 1e-12;
    report.checks.push_back(MakeCheck(tag + " rounds to quoted figures", rounds,
                                      r.epsilon_times_n, kQuotedEps[i]));
  }
  return report;
}

SuiteReport VerifyAccuracy(std::uint64_t seed, std::int64_t trials) {
  constexpr std::int64_t kN = 1000;
  SuiteReport report{"accuracy", {}};
  std::uint64_t stream = 0;
  for (const auto& [alpha, beta] : ExampleTargets()) {
    const AccuracyTarget target = MakeAccuracyTarget(alpha, beta);
    const std::int64_t k = RequiredCohortCount(target, kN);
    const auto cohort = FirstK(k);
    const double bound =
        beta + 3.0 * std::sqrt(beta * (1.0 - beta) / static_cast<double>(trials));
    for (const bool ones : {true, false}) {
      AccuracyRunOptions options;
      options.trials = trials;
      options.seed = SplitMix64(seed + stream++);
      const double rate = EmpiricalAccuracy(AdversarialDatabase(kN, k, ones),
                                            target, cohort, options);
      report.checks.push_back(MakeCheck(
          "alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) +
              (ones ? " unsampled=1" : " unsampled=0"),
          rate <= bound, rate, bound,
          "analytic worst case beta(1+1/e)/2 = " +
              std::to_string(beta * 0.5 * (1.0 + std::exp(-1.0)))));
    }
  }
  return report;
}

SuiteReport VerifyDp(std::uint64_t seed) {
  constexpr std::int64_t kN = 1000;
  SuiteReport report{"dp", {}};
  for (const auto& [alpha, beta] : ExampleTargets()) {
    const AccuracyTarget target = MakeAccuracyTarget(alpha, beta);
    const double cert = DpCertificate(target, kN);
    const double eps = EpsilonFor(target, kN).epsilon;
    report.checks.push_back(MakeCheck(
        "certificate equals epsilon alpha=" + std::to_string(alpha),
        cert == eps, cert, eps));
  }

  double worst = 0.0;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      const double alpha = 0.05 + 0.09 * a;
      const double beta = 0.01 + 0.0355 * b;
      const AccuracyTarget target = MakeAccuracyTarget(alpha, beta);
      const double identity =
          EpsilonFor(target, kN).epsilon * (kN - CohortSize(target, kN));
      worst = std::max(worst, std::fabs(identity - 1.0));
    }
  }
  report.checks.push_back(
      MakeCheck("production identity eps (N - H) = 1 on 100 points",
                worst <= 1e-10, worst, 1e-10));

  // Random neighboring databases differing in one cohort bit.
  Rng rng(seed);
  double max_excess = -1.0;
  double min_gap_in_tail = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& [alpha, beta] = ExampleTargets()[trial % 3];
    const AccuracyTarget target = MakeAccuracyTarget(alpha, beta);
    const std::int64_t k = RequiredCohortCount(target, kN);
    std::vector<std::uint8_t> bits(kN);
    for (auto& bit : bits) bit = rng.UniformOpen() < 0.5 ? 1 : 0;
    std::vector<std::uint8_t> flipped = bits;
    const auto row = static_cast<std::int64_t>(rng.UniformOpen() * k);
    flipped[row] ^= 1;
    const BitDatabase a(bits), b(flipped);
    const auto cohort = FirstK(k);
    const double eps = EpsilonFor(target, kN).epsilon;
    double sup = -1e300;
    for (int i = -400; i <= 400; ++i) {
      const double x = i * 0.01;
      sup = std::max(sup, PublishLogDensityRatio(a, b, cohort, target, x));
      sup = std::max(sup, PublishLogDensityRatio(b, a, cohort, target, x));
    }
    max_excess = std::max(max_excess, sup / eps - 1.0);
    min_gap_in_tail = std::min(min_gap_in_tail, 1.0 - sup / eps);
  }
  report.checks.push_back(MakeCheck("log density ratio <= epsilon",
                                    max_excess <= 1e-9, max_excess, 1e-9));
  report.checks.push_back(MakeCheck("ratio attains epsilon in the tail",
                                    std::fabs(min_gap_in_tail) <= 1e-9,
                                    min_gap_in_tail, 1e-9));
  return report;
}

SuiteReport VerifyAuction(std::uint64_t seed, int random_instances) {
  SuiteReport report{"auction", {}};
  auto instances = ExhaustiveAuctionInstances();
  const std::size_t exhaustive = instances.size();
  for (int i = 0; i < random_instances; ++i) {
    instances.push_back(RandomAuctionInstance(seed, i));
  }
  const auto checks = CheckAuctionInstances(instances);
  auto count = [&](auto pred) {
    return static_cast<double>(std::count_if(checks.begin(), checks.end(), pred));
  };
  double max_gain = 0.0;
  for (const auto& c : checks) max_gain = std::max(max_gain, c.max_misreport_gain);
  const std::string scope = std::to_string(exhaustive) + " exhaustive + " +
                            std::to_string(random_instances) + " random";
  report.checks.push_back(MakeCheck("misreport gain <= 1e-12", max_gain <= 1e-12,
                                    max_gain, 1e-12, scope));
  const double total = static_cast<double>(checks.size());
  auto add = [&](const char* name, double passing) {
    report.checks.push_back(MakeCheck(name, passing == total, passing, total, scope));
  };
  add("individual rationality", count([](const AuctionCheck& c) { return c.individually_rational; }));
  add("envy-free common payment", count([](const AuctionCheck& c) { return c.envy_free; }));
  add("selection matches brute-force oracle",
      count([](const AuctionCheck& c) { return c.selection_matches_oracle; }));
  add("Lindahl cost <= VCG cost", count([](const AuctionCheck& c) { return c.lindahl_not_costlier; }));
  add("Lindahl strictly cheaper when gammas differ",
      count([](const AuctionCheck& c) { return c.strictness_ok; }));
  return report;
}

namespace {

QuantileModel DerivativeMixture() {
  return QuantileModel::NormalMixture({0.6, 0.4}, {3.0, 6.0}, {0.6, 1.2});
}

}  // namespace

SuiteReport VerifyDerivatives() {
  SuiteReport report{"derivatives", {}};
  const std::vector<std::pair<std::string, QuantileModel>> models = {
      {"lognormal(0,1)", QuantileModel::LogNormal(0.0, 1.0)},
      {"mixture", DerivativeMixture()}};
  constexpr double kStep = 1e-6;
  for (const auto& [name, model] : models) {
    for (const double beta : {1.0 / 3.0, 0.1}) {
      const CostCurve curve = MakeCostCurve(model, 1000.0, beta);
      double worst_vcg = 0.0, worst_l = 0.0, worst_parts = 0.0;
      for (const double x : AccuracyGrid(0.05, 0.95, 0.05)) {
        const double fd_vcg =
            CentralDifference([&](double t) { return CVcg(curve, t); }, x, kStep);
        const double fd_l =
            CentralDifference([&](double t) { return CLindahl(curve, t); }, x, kStep);
        worst_vcg = std::max(worst_vcg, Relative(DcVcg(curve, x), fd_vcg));
        worst_l = std::max(worst_l, Relative(DcLindahl(curve, x), fd_l));
        worst_parts = std::max(
            worst_parts, Relative(CLindahlByParts(curve, x), CLindahl(curve, x)));
      }
      const std::string tag = name + " beta=" + std::to_string(beta);
      report.checks.push_back(
          MakeCheck(tag + " dC_vcg vs central difference", worst_vcg <= 1e-5, worst_vcg, 1e-5));
      report.checks.push_back(
          MakeCheck(tag + " dC_lindahl vs central difference", worst_l <= 1e-5, worst_l, 1e-5));
      report.checks.push_back(MakeCheck(tag + " Lindahl cost forms agree",
                                        worst_parts <= 1e-8, worst_parts, 1e-8));
    }
  }
  return report;
}

SuiteReport VerifyOrdering(std::uint64_t seed, int count) {
  SuiteReport report{"ordering", {}};
  const auto trials = RunOrderingSuite(seed, count);
  double pointwise = 0, roots = 0, interior = 0, passed = 0;
  std::string first_failure;
  for (const auto& t : trials) {
    pointwise += t.pointwise_ok;
    roots += t.roots_ok;
    interior += t.interior;
    passed += t.passed();
    if (!t.passed() && first_failure.empty()) {
      first_failure = "config " + std::to_string(t.index) + ": " + t.detail;
    }
  }
  const double total = count;
  report.checks.push_back(MakeCheck("interior roots", interior == total, interior, total));
  report.checks.push_back(
      MakeCheck("0 < dC_L < dC_VCG pointwise", pointwise == total, pointwise, total));
  report.checks.push_back(MakeCheck(
      "I_vcg < I_L, I_vcg < I_0, eps_vcg < eps_0", roots == total, roots, total));
  report.checks.push_back(
      MakeCheck("all properties", passed == total, passed, total, first_failure));
  return report;
}

SuiteReport VerifyConvergence(std::uint64_t seed, std::int64_t n) {
  SuiteReport report{"convergence", {}};
  PopulationConfig config;
  config.n = n;
  config.gamma_model = QuantileModel::LogNormal(0.0, 1.0);
  config.seed = seed;
  const Population pop = GeneratePopulation(config);
  const AccuracyTarget target = MakeAccuracyTarget(0.4, 1.0 / 3.0);
  const CostCurve curve =
      MakeCostCurve(config.gamma_model, static_cast<double>(n), 1.0 / 3.0);
  const double vcg = MinCostAuction(pop, target).total_cost;
  const double lindahl = LindahlProcurement(pop, target).total_cost;
  const double c_vcg = CVcg(curve, target.accuracy());
  const double c_l = CLindahl(curve, target.accuracy());
  const double rel_vcg = Relative(vcg, c_vcg);
  const double rel_l = Relative(lindahl, c_l);
  report.checks.push_back(MakeCheck("VCG auction cost vs C_VCG(0.6)",
                                    rel_vcg <= 0.02, rel_vcg, 0.02,
                                    std::to_string(vcg) + " vs " + std::to_string(c_vcg)));
  report.checks.push_back(MakeCheck("Lindahl cost vs C_L(0.6)", rel_l <= 0.02, rel_l,
                                    0.02,
                                    std::to_string(lindahl) + " vs " + std::to_string(c_l)));
  return report;
}

}  // namespace dpprov
