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


#include "dpprov/cost_model.h"

#include <cmath>
#include <vector>

#include "dpprov/errors.h"
#include "gtest/gtest.h"

namespace dpprov {
namespace {

// Frozen values from tests/oracles/compute_oracles.py.
constexpr double kCVcg_08_01 = 56.354395213731957523;
constexpr double kCLindahl_08_01 = 15.693937237990522359;
constexpr double kCVcg_06_Third = 5.8782680783234089204;
constexpr double kCLindahl_06_Third = 2.4520864147163409808;
constexpr double kDcVcg_03_Third = 6.1970709439474316926;
constexpr double kDcLindahl_03_Third = 2.7430560874581216107;
constexpr double kDcVcg_08_Third = 193.25584012030982005;
constexpr double kDcLindahl_08_Third = 52.657679148065133819;
constexpr double kMixCVcg_05_Third = 11.133940176628568217;
constexpr double kMixDcVcg_05_Third = 46.234838701029969504;

CostCurve LogNormalCurve(double n, double beta) {
  return MakeCostCurve(QuantileModel::LogNormal(0.0, 1.0), n, beta);
}

CostCurve MixtureCurve(double n = 1000.0) {
  return MakeCostCurve(
      QuantileModel::NormalMixture({0.6, 0.4}, {3.0, 6.0}, {0.6, 1.2}), n,
      1.0 / 3.0);
}

double Rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

TEST(ProductionFunctionTest, CohortAndEpsilon) {
  const CostCurve c = LogNormalCurve(1000.0, 0.1);
  EXPECT_NEAR(CohortMeasure(c, 0.8), 928.63731399272631613, 1e-9);
  EXPECT_NEAR(EpsilonAt(c, 0.8) * 1000.0, 14.01292546497022842, 1e-11);
  EXPECT_NEAR(EpsilonAt(c, 0.8) * (1000.0 - CohortMeasure(c, 0.8)), 1.0,
              1e-12);
  EXPECT_NEAR(CohortMeasureSlope(c), 1000.0 / 2.802585092994045684, 1e-9);
  // eps'(I) = eps(I) / (1 - I).
  EXPECT_NEAR(EpsilonSlope(c, 0.8), EpsilonAt(c, 0.8) / 0.2, 1e-15);
}

TEST(CostTest, LevelsMatchOracle) {
  const CostCurve c1 = LogNormalCurve(1000.0, 0.1);
  EXPECT_LT(Rel(CVcg(c1, 0.8), kCVcg_08_01), 1e-12);
  EXPECT_LT(Rel(CLindahl(c1, 0.8), kCLindahl_08_01), 1e-12);
  const CostCurve c2 = LogNormalCurve(1000.0, 1.0 / 3.0);
  EXPECT_LT(Rel(CVcg(c2, 0.6), kCVcg_06_Third), 1e-12);
  EXPECT_LT(Rel(CLindahl(c2, 0.6), kCLindahl_06_Third), 1e-12);
  EXPECT_LT(Rel(CVcg(MixtureCurve(), 0.5), kMixCVcg_05_Third), 1e-10);
}

TEST(CostTest, MarginalCostsMatchOracle) {
  const CostCurve c = LogNormalCurve(1000.0, 1.0 / 3.0);
  EXPECT_LT(Rel(DcVcg(c, 0.3), kDcVcg_03_Third), 1e-12);
  EXPECT_LT(Rel(DcLindahl(c, 0.3), kDcLindahl_03_Third), 1e-12);
  EXPECT_LT(Rel(DcVcg(c, 0.8), kDcVcg_08_Third), 1e-12);
  EXPECT_LT(Rel(DcLindahl(c, 0.8), kDcLindahl_08_Third), 1e-12);
  EXPECT_LT(Rel(DcVcg(MixtureCurve(), 0.5), kMixDcVcg_05_Third), 1e-9);
}

TEST(CostTest, IndependentOfPopulationMeasure) {
  const CostCurve small = LogNormalCurve(1000.0, 0.2);
  const CostCurve large = LogNormalCurve(1e7, 0.2);
  for (double i = 0.05; i < 0.96; i += 0.05) {
    EXPECT_LT(Rel(CVcg(small, i), CVcg(large, i)), 1e-10);
    EXPECT_LT(Rel(CLindahl(small, i), CLindahl(large, i)), 1e-10);
    EXPECT_LT(Rel(DcVcg(small, i), DcVcg(large, i)), 1e-10);
    EXPECT_LT(Rel(DcLindahl(small, i), DcLindahl(large, i)), 1e-10);
  }
}

TEST(CostTest, DerivativesMatchCentralDifferences) {
  for (const CostCurve& c : {LogNormalCurve(1000.0, 1.0 / 3.0), MixtureCurve()}) {
    for (double i = 0.05; i < 0.951; i += 0.05) {
      const double h = 1e-6 * std::max(1.0, i);
      const double fd_vcg =
          CentralDifference([&](double x) { return CVcg(c, x); }, i, h);
      const double fd_lindahl =
          CentralDifference([&](double x) { return CLindahl(c, x); }, i, h);
      EXPECT_LT(Rel(DcVcg(c, i), fd_vcg), 1e-5) << "I=" << i;
      EXPECT_LT(Rel(DcLindahl(c, i), fd_lindahl), 1e-5) << "I=" << i;
    }
  }
}

TEST(CostTest, ReducedFormsAgree) {
  for (const CostCurve& c : {LogNormalCurve(500.0, 0.05), MixtureCurve()}) {
    for (double i = 0.05; i < 0.96; i += 0.05) {
      EXPECT_LT(Rel(DcVcg(c, i), DcVcgReduced(c, i)), 1e-10);
      EXPECT_LT(Rel(DcLindahl(c, i), DcLindahlReduced(c, i)), 1e-10);
      EXPECT_LT(Rel(CLindahl(c, i), CLindahlByParts(c, i)), 1e-8);
    }
  }
}

TEST(CostTest, LindahlBelowVcgPointwise) {
  const CostCurve c = LogNormalCurve(1000.0, 1.0 / 3.0);
  for (double i = 0.05; i < 0.96; i += 0.05) {
    EXPECT_LT(CLindahl(c, i), CVcg(c, i));
    EXPECT_GT(DcLindahl(c, i), 0.0);
    EXPECT_LT(DcLindahl(c, i), DcVcg(c, i));
  }
}

TEST(CostTest, PointMassGivesEqualCosts) {
  const CostCurve c =
      MakeCostCurve(QuantileModel::Empirical({2.0, 2.0, 2.0, 2.0}), 1000.0, 0.2);
  EXPECT_NEAR(CLindahl(c, 0.7), CVcg(c, 0.7), 1e-12 * CVcg(c, 0.7));
  EXPECT_THROW(DcVcg(c, 0.7), ModelError);
  EXPECT_THROW(DcLindahl(c, 0.7), ModelError);
}

TEST(CostTest, RegimeDispatch) {
  CostCurve c = LogNormalCurve(1000.0, 0.2);
  EXPECT_EQ(Cost(c, 0.5), CVcg(c, 0.5));
  EXPECT_EQ(MarginalCost(c, 0.5), DcVcg(c, 0.5));
  c.regime = Regime::kLindahl;
  EXPECT_EQ(Cost(c, 0.5), CLindahl(c, 0.5));
  EXPECT_EQ(MarginalCost(c, 0.5), DcLindahl(c, 0.5));
}

TEST(CostTest, RejectsBoundaryAndBadInputs) {
  const CostCurve c = LogNormalCurve(1000.0, 0.2);
  EXPECT_THROW(CVcg(c, 0.0), DomainError);
  EXPECT_THROW(CVcg(c, 1.0), DomainError);
  EXPECT_THROW(DcLindahl(c, -0.1), DomainError);
  EXPECT_THROW(MakeCostCurve(QuantileModel::LogNormal(0, 1), 0.0, 0.2),
               DomainError);
  EXPECT_THROW(MakeCostCurve(QuantileModel::LogNormal(0, 1), 100.0, 0.4),
               DomainError);
}

TEST(SecondOrderTest, LinearFunctionHasZeroCurvature) {
  EXPECT_NEAR(CentralDifference([](double x) { return 3.0 * x + 1.0; }, 0.4,
                                kSocStep),
              3.0, 1e-9);
  const auto slope = [](double x) { return 3.0 + 0.0 * x; };
  EXPECT_EQ(CentralDifference(slope, 0.4, kSocStep), 0.0);
}

TEST(SecondOrderTest, LogNormalIsConvexOnGrid) {
  const CostCurve c = LogNormalCurve(1000.0, 1.0 / 3.0);
  for (double i = 0.1; i < 0.91; i += 0.1) {
    EXPECT_GT(SocVcg(c, i), 0.0);
    EXPECT_GT(SocLindahl(c, i), 0.0);
  }
  EXPECT_THROW(SocVcg(c, 5e-6), DomainError);
}

TEST(SecondOrderTest, WideLogNormalReportsFiniteValues) {
  const CostCurve c = MakeCostCurve(QuantileModel::LogNormal(0, 2), 1000.0, 0.2);
  for (double i = 0.1; i < 0.91; i += 0.1) {
    EXPECT_TRUE(std::isfinite(SocVcg(c, i)));
  }
}

TEST(SweepTest, GridConstruction) {
  const auto grid = AccuracyGrid(0.05, 0.95, 0.05);
  ASSERT_EQ(grid.size(), 19u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.05);
  EXPECT_DOUBLE_EQ(grid.back(), 0.95);
  EXPECT_THROW(AccuracyGrid(0.1, 1.0, 0.1), DomainError);
  EXPECT_THROW(AccuracyGrid(0.0, 0.5, 0.1), DomainError);
  EXPECT_THROW(AccuracyGrid(0.1, 0.5, 0.0), DomainError);
}

TEST(SweepTest, ParallelMatchesSerialReference) {
  const auto grid = AccuracyGrid(0.02, 0.98, 0.01);
  for (const CostCurve& c : {LogNormalCurve(1000.0, 1.0 / 3.0), MixtureCurve()}) {
    const auto par = SweepCostCurves(c, grid);
    const auto ser = SweepCostCurvesReference(c, grid);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t j = 0; j < par.size(); ++j) {
      EXPECT_EQ(par[j].c_vcg, ser[j].c_vcg);
      EXPECT_EQ(par[j].c_lindahl, ser[j].c_lindahl);
      EXPECT_EQ(par[j].dc_vcg, ser[j].dc_vcg);
      EXPECT_EQ(par[j].dc_lindahl, ser[j].dc_lindahl);
      EXPECT_EQ(par[j].soc, ser[j].soc);
      EXPECT_TRUE(par[j].ordered);
    }
  }
}

TEST(SweepTest, ErrorsPropagate) {
  const CostCurve c =
      MakeCostCurve(QuantileModel::Empirical({2.0, 2.0}), 1000.0, 0.2);
  EXPECT_THROW(SweepCostCurves(c, {0.3, 0.5}), ModelError);
}

}  // namespace
}  // namespace dpprov
