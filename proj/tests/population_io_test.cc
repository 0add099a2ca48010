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


#include "dpprov/population_io.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dpprov/errors.h"
#include "gtest/gtest.h"

namespace dpprov {
namespace {

PopulationConfig Config(std::int64_t n, double correlation, std::uint64_t seed) {
  PopulationConfig config;
  config.n = n;
  config.gamma_bit_correlation = correlation;
  config.seed = seed;
  return config;
}

// Pearson correlation between the rank of gamma and the bit.
double RankBitCorrelation(const Population& pop) {
  const std::int64_t n = pop.size();
  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return pop[a].gamma < pop[b].gamma; });
  std::vector<double> rank(n);
  for (std::int64_t r = 0; r < n; ++r) rank[order[r]] = static_cast<double>(r);
  double mr = 0, mb = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    mr += rank[i];
    mb += pop[i].bit;
  }
  mr /= n;
  mb /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double dx = rank[i] - mr, dy = pop[i].bit - mb;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(GeneratePopulationTest, GammaMarginalMatchesModel) {
  const Population pop = GeneratePopulation(Config(100000, 0.0, 1));
  std::vector<double> g = pop.Gammas();
  std::sort(g.begin(), g.end());
  const QuantileModel model = QuantileModel::LogNormal(0.0, 1.0);
  double ks = 0.0;
  const double n = static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double f = model.Cdf(g[i]);
    ks = std::max({ks, std::fabs(f - i / n), std::fabs((i + 1) / n - f)});
  }
  EXPECT_LT(ks, 0.01);
}

TEST(GeneratePopulationTest, IndependentBitsAtZeroCorrelation) {
  const Population pop = GeneratePopulation(Config(100000, 0.0, 2));
  EXPECT_LE(std::fabs(RankBitCorrelation(pop)), 0.01);
  double prevalence = 0;
  for (const auto& c : pop.consumers()) prevalence += c.bit;
  EXPECT_NEAR(prevalence / pop.size(), 0.5, 0.01);
}

TEST(GeneratePopulationTest, AssociationMonotoneInCorrelation) {
  double previous = -1.0;
  for (const double rho : {-0.9, -0.3, 0.0, 0.3, 0.6, 0.9}) {
    const double corr = RankBitCorrelation(GeneratePopulation(Config(100000, rho, 3)));
    EXPECT_GT(corr, previous) << "rho=" << rho;
    previous = corr;
  }
  EXPECT_GT(previous, 0.5);
}

TEST(GeneratePopulationTest, ZeroPrevalenceGivesZeroBits) {
  PopulationConfig config = Config(1000, 0.5, 4);
  config.bit_prevalence = 0.0;
  const Population pop = GeneratePopulation(config);
  for (const auto& c : pop.consumers()) {
    EXPECT_EQ(c.bit, 0);
  }
}

TEST(GeneratePopulationTest, EtaBoundedAndAggregatesCached) {
  PopulationConfig config = Config(5000, 0.0, 5);
  config.eta_model.eta_bar = 2.5;
  const Population pop = GeneratePopulation(config);
  double sum = 0, max = 0;
  for (const auto& c : pop.consumers()) {
    EXPECT_GE(c.eta, 0.0);
    EXPECT_LE(c.eta, 2.5);
    EXPECT_GT(c.income, 0.0);
    sum += c.eta;
    max = std::max(max, c.eta);
  }
  EXPECT_DOUBLE_EQ(pop.eta_bar(), max);
  EXPECT_NEAR(pop.eta_sum(), sum, 1e-9 * sum);
  // Beta(2, 5) has mean 2/7.
  EXPECT_NEAR(sum / pop.size(), 2.5 * 2.0 / 7.0, 0.02);
}

TEST(GeneratePopulationTest, DeterministicPerSeed) {
  EXPECT_EQ(PopulationCsv(GeneratePopulation(Config(500, 0.2, 6))),
            PopulationCsv(GeneratePopulation(Config(500, 0.2, 6))));
  EXPECT_NE(PopulationCsv(GeneratePopulation(Config(500, 0.2, 6))),
            PopulationCsv(GeneratePopulation(Config(500, 0.2, 7))));
}

TEST(GeneratePopulationTest, RejectsInvalidConfig) {
  PopulationConfig config = Config(1, 0.0, 0);
  EXPECT_THROW(GeneratePopulation(config), ModelError);
  config = Config(10, 1.5, 0);
  EXPECT_THROW(GeneratePopulation(config), ModelError);
  config = Config(10, 0.0, 0);
  config.bit_prevalence = 1.2;
  EXPECT_THROW(GeneratePopulation(config), ModelError);
  config = Config(10, 0.0, 0);
  config.eta_model.a = 0.0;
  EXPECT_THROW(GeneratePopulation(config), ModelError);
}

TEST(PopulationCsvTest, RoundTripIsByteIdentical) {
  const Population pop = GeneratePopulation(Config(2000, 0.4, 8));
  const std::string path = TempPath("dpprov_roundtrip.csv");
  SavePopulation(pop, path);
  const Population loaded = LoadPopulation(path);
  ASSERT_EQ(loaded.size(), pop.size());
  for (std::int64_t i = 0; i < pop.size(); ++i) {
    EXPECT_EQ(loaded[i].gamma, pop[i].gamma);
    EXPECT_EQ(loaded[i].eta, pop[i].eta);
    EXPECT_EQ(loaded[i].income, pop[i].income);
    EXPECT_EQ(loaded[i].bit, pop[i].bit);
  }
  EXPECT_EQ(PopulationCsv(loaded), PopulationCsv(pop));
  std::filesystem::remove(path);
}

TEST(PopulationCsvTest, NegativeGammaReportsLine) {
  std::istringstream in(
      "id,bit,gamma,eta,income\n0,1,1.5,0.2,100\n1,0,-1,0.3,100\n2,0,2,0.1,50\n");
  try {
    ReadPopulationCsv(in);
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(PopulationCsvTest, HeaderOnlyRejected) {
  std::istringstream in("id,bit,gamma,eta,income\n");
  EXPECT_THROW(ReadPopulationCsv(in), RangeError);
}

TEST(PopulationCsvTest, MalformedInputRejected) {
  {
    std::istringstream in("id,gamma\n0,1\n");
    EXPECT_THROW(ReadPopulationCsv(in), ParseError);
  }
  {
    std::istringstream in("id,bit,gamma,eta,income\n0,1,abc,0.2,1\n1,0,1,0,1\n");
    try {
      ReadPopulationCsv(in);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2);
    }
  }
  {
    std::istringstream in("id,bit,gamma,eta,income\n0,1,1,0.2\n");
    EXPECT_THROW(ReadPopulationCsv(in), ParseError);
  }
  {
    std::istringstream in("id,bit,gamma,eta,income\n1,1,1,0,1\n0,0,1,0,1\n");
    EXPECT_THROW(ReadPopulationCsv(in), ParseError);
  }
  {
    std::istringstream in("id,bit,gamma,eta,income\n0,2,1,0,1\n1,0,1,0,1\n");
    EXPECT_THROW(ReadPopulationCsv(in), RangeError);
  }
  EXPECT_THROW(LoadPopulation(TempPath("dpprov_does_not_exist.csv")), Error);
}

TEST(EmpiricalQuantileModelTest, UsesGammas) {
  const QuantileModel m =
      EmpiricalQuantileModel(PopulationFromGammas({5, 3, 1, 4, 2}));
  EXPECT_EQ(m.Quantile(0.2), 1.0);
  EXPECT_EQ(m.Quantile(0.5), 3.0);
  EXPECT_TRUE(EmpiricalQuantileModel(PopulationFromGammas({2, 2, 2}))
                  .IsDegenerate());
  EXPECT_THROW(EmpiricalQuantileModel(PopulationFromGammas({2})), RangeError);
}

}  // namespace
}  // namespace dpprov
