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

#ifndef DPPROV_POPULATION_IO_H_
#define DPPROV_POPULATION_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dpprov/population.h"
#include "dpprov/quantile_model.h"

namespace dpprov {

// Beta(a, b) scaled to [0, eta_bar].
struct EtaModel {
  double a = 2.0;
  double b = 5.0;
  double eta_bar = 1.0;
};

struct IncomeModel {
  double mu = 10.0;
  double sigma = 0.5;
};

struct PopulationConfig {
  std::int64_t n = 1000;
  QuantileModel gamma_model = QuantileModel::LogNormal(0.0, 1.0);
  EtaModel eta_model;
  double bit_prevalence = 0.5;
  // Correlation of the latent Gaussians behind gamma and the bit.
  double gamma_bit_correlation = 0.0;
  IncomeModel income_model;
  std::uint64_t seed = 0;
};

// Throws ModelError on invalid settings.
void ValidateConfig(const PopulationConfig& config);

// Consumer i draws, in order: a uniform for gamma, a normal mixing into the
// bit's latent Gaussian, a uniform for eta and a normal for income, all from
// one stream seeded by config.seed. The bit is 1 when the latent
// rho * z_gamma + sqrt(1 - rho^2) * w exceeds the (1 - prevalence) normal
// quantile. Ids run 0..n-1.
Population GeneratePopulation(const PopulationConfig& config);

// CSV with header `id,bit,gamma,eta,income`; floats printed with 17
// significant digits; rows in ascending id order.
void WritePopulationCsv(const Population& pop, std::ostream& out);
std::string PopulationCsv(const Population& pop);
void SavePopulation(const Population& pop, const std::string& path);

// Throws ParseError (with line number) on malformed rows, RangeError on
// out-of-range values or fewer than two rows.
Population ReadPopulationCsv(std::istream& in);
Population LoadPopulation(const std::string& path);

// Empirical model over the population's gammas.
QuantileModel EmpiricalQuantileModel(const Population& pop);

}  // namespace dpprov

#endif  // DPPROV_POPULATION_IO_H_
