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


#include "dpprov/quantile_model.h"

#include <cmath>
#include <limits>
#include <vector>

#include "dpprov/errors.h"
#include "gtest/gtest.h"

namespace dpprov {
namespace {

// Frozen values from tests/oracles/compute_oracles.py.
constexpr double kQLogNormal_0_92864 = 4.3307330217626840496;
constexpr double kPeLogNormalMedian = 0.26157829186512337168;
constexpr double kMixQ50 = 3.5484163528014858864;
constexpr double kMixQ90 = 6.8093877008491668769;
constexpr double kMixPe3 = 0.7628704365082245466;
constexpr double kMixPeQ75 = 2.5179858436067367946;

QuantileModel Mixture() {
  return QuantileModel::NormalMixture({0.6, 0.4}, {3.0, 6.0}, {0.6, 1.2});
}

TEST(NormalTest, QuantileAndCdfAgree) {
  EXPECT_DOUBLE_EQ(NormalQuantile(0.5), 0.0);
  EXPECT_NEAR(NormalCdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(NormalPdf(0.0), 0.3989422804014327, 1e-16);
}

TEST(LogNormalTest, QuantileValues) {
  const QuantileModel m = QuantileModel::LogNormal(0.0, 1.0);
  EXPECT_NEAR(m.Quantile(0.5), 1.0, 1e-15);
  EXPECT_NEAR(m.Quantile(0.92864), kQLogNormal_0_92864, 1e-12);
  EXPECT_THROW(m.Quantile(0.0), DomainError);
  EXPECT_THROW(m.Quantile(1.0), DomainError);
}

TEST(LogNormalTest, PartialExpectation) {
  const QuantileModel m = QuantileModel::LogNormal(0.0, 1.0);
  EXPECT_EQ(m.PartialExpectation(0.0), 0.0);
  EXPECT_NEAR(m.PartialExpectation(std::numeric_limits<double>::infinity()),
              std::exp(0.5), 1e-15);
  EXPECT_NEAR(m.PartialExpectation(1.0), kPeLogNormalMedian, 1e-14);
}

TEST(LogNormalTest, QuantileIntegralMatchesPartialExpectation) {
  const QuantileModel m = QuantileModel::LogNormal(0.3, 0.7);
  for (double p = 0.05; p < 1.0; p += 0.05) {
    EXPECT_NEAR(m.QuantileIntegral(p), m.PartialExpectation(m.Quantile(p)),
                1e-13);
  }
}

TEST(LogNormalTest, RejectsBadParameters) {
  EXPECT_THROW(QuantileModel::LogNormal(0.0, 0.0), ModelError);
  EXPECT_THROW(QuantileModel::LogNormal(NAN, 1.0), ModelError);
}

TEST(MixtureTest, QuantileAndPartialExpectationMatchOracle) {
  const QuantileModel m = Mixture();
  EXPECT_NEAR(m.Quantile(0.5), kMixQ50, 1e-11);
  EXPECT_NEAR(m.Quantile(0.9), kMixQ90, 1e-11);
  EXPECT_NEAR(m.PartialExpectation(3.0), kMixPe3, 1e-11);
  EXPECT_NEAR(m.QuantileIntegral(0.75), kMixPeQ75, 1e-10);
  EXPECT_NEAR(m.Cdf(0.0), 2.8665e-7, 1e-10);
}

TEST(MixtureTest, RejectsInvalidMixtures) {
  EXPECT_THROW(QuantileModel::NormalMixture({0.5, 0.4}, {3, 6}, {0.6, 1.2}),
               ModelError);
  EXPECT_THROW(QuantileModel::NormalMixture({0.6, 0.4}, {3, 6}, {0.6}),
               ModelError);
  EXPECT_THROW(QuantileModel::NormalMixture({0.6, 0.4}, {2, 5}, {0.5, 1.0}),
               ModelError);  // too much mass below zero
  EXPECT_THROW(QuantileModel::NormalMixture({1.0}, {3.0}, {-1.0}), ModelError);
}

TEST(QuantileModelTest, CdfRoundTrip) {
  for (const QuantileModel& m :
       {QuantileModel::LogNormal(0.0, 1.0), QuantileModel::LogNormal(-1.0, 0.4),
        Mixture()}) {
    for (double p = 0.01; p < 1.0; p += 0.01) {
      EXPECT_NEAR(m.Cdf(m.Quantile(p)), p, 1e-9) << m.KindName() << " p=" << p;
    }
  }
}

TEST(QuantileModelTest, DerivativeIsReciprocalDensity) {
  for (const QuantileModel& m : {QuantileModel::LogNormal(0.0, 1.0), Mixture()}) {
    for (double p = 0.1; p < 0.95; p += 0.1) {
      const double h = 1e-5;
      const double fd = (m.Quantile(p + h) - m.Quantile(p - h)) / (2 * h);
      EXPECT_NEAR(m.QuantileDerivative(p), fd, 1e-6 * fd);
      EXPECT_FALSE(m.DerivativeIsApproximate());
    }
  }
}

TEST(QuantileModelTest, ByPartsIdentity) {
  // PE(q) = q F(q) - integral of F on [0, q].
  for (const QuantileModel& m : {QuantileModel::LogNormal(0.0, 1.0), Mixture()}) {
    for (const double q : {0.5, 1.0, 3.0, 5.0, 8.0}) {
      EXPECT_NEAR(m.PartialExpectation(q), q * m.Cdf(q) - m.CdfIntegral(q),
                  1e-11 * (1.0 + q));
    }
  }
}

TEST(EmpiricalTest, OrderStatistics) {
  const QuantileModel m = QuantileModel::Empirical({5, 3, 1, 4, 2});
  EXPECT_FALSE(m.IsContinuous());
  EXPECT_TRUE(m.DerivativeIsApproximate());
  EXPECT_EQ(m.Quantile(0.5), 3.0);
  EXPECT_EQ(m.Quantile(0.2), 1.0);
  EXPECT_EQ(m.Quantile(0.21), 2.0);
  EXPECT_EQ(m.Cdf(3.0), 0.6);
  EXPECT_THROW(m.Pdf(1.0), ModelError);
}

TEST(EmpiricalTest, ExactSums) {
  const QuantileModel m = QuantileModel::Empirical({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(m.PartialExpectation(3.0), 6.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.CdfIntegral(3.5), (2.5 + 1.5 + 0.5) / 5.0);
  EXPECT_DOUBLE_EQ(m.QuantileIntegral(0.4), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.QuantileIntegral(0.5), (3.0 + 0.5 * 3.0) / 5.0);
  EXPECT_DOUBLE_EQ(m.QuantileIntegral(1.0), 3.0);
}

TEST(EmpiricalTest, DegenerateSampleIsFlagged) {
  const QuantileModel m = QuantileModel::Empirical({2.0, 2.0, 2.0});
  EXPECT_TRUE(m.IsDegenerate());
  EXPECT_THROW(m.QuantileDerivative(0.5), ModelError);
  EXPECT_FALSE(QuantileModel::Empirical({1.0, 2.0}).IsDegenerate());
}

TEST(EmpiricalTest, RejectsNonPositiveSample) {
  EXPECT_THROW(QuantileModel::Empirical({}), ModelError);
  EXPECT_THROW(QuantileModel::Empirical({1.0, 0.0}), ModelError);
}

TEST(EmpiricalTest, LargeSampleApproachesParent) {
  std::vector<double> sample;
  for (int i = 1; i <= 20000; ++i) {
    sample.push_back(std::exp(NormalQuantile((i - 0.5) / 20000.0)));
  }
  const QuantileModel m = QuantileModel::Empirical(sample);
  EXPECT_NEAR(m.Quantile(0.9), std::exp(NormalQuantile(0.9)), 1e-3);
  EXPECT_NEAR(m.QuantileDerivative(0.5), 1.0 / NormalPdf(0.0), 1e-2);
}

TEST(QuantileModelTest, KindNames) {
  EXPECT_EQ(QuantileModel::LogNormal(0, 1).KindName(), "lognormal");
  EXPECT_EQ(Mixture().KindName(), "mixture");
  EXPECT_EQ(QuantileModel::Empirical({1.0}).KindName(), "empirical");
}

}  // namespace
}  // namespace dpprov
