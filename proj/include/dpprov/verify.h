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

#ifndef DPPROV_VERIFY_H_
#define DPPROV_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpprov/serialization.h"

namespace dpprov {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

Json ReportToJson(const SuiteReport& report);

// One row of the worked example: the cost of an (alpha, beta) target
// expressed per capita.
struct ExampleRow {
  double alpha;
  double beta;
  double epsilon_times_n;
  double cohort_fraction;
  double rounded_epsilon_times_n;   // nearest integer
  double rounded_cohort_fraction;   // two decimals
};

// Rows for (0.2, 0.1), (0.05, 0.05) and (0.4, 1/3) at N = 1000.
std::vector<ExampleRow> WorkedExample();
SuiteReport VerifyExample();

// Monte-Carlo failure rates on both adversarial databases for the three
// example targets at N = 1000. Bound: beta + 3 sqrt(beta (1 - beta) / trials).
SuiteReport VerifyAccuracy(std::uint64_t seed, std::int64_t trials);

// Certificate identity, production identity on a 10 x 10 (alpha, beta)
// grid, and pointwise log-density ratios on random neighboring databases.
SuiteReport VerifyDp(std::uint64_t seed);

// Exhaustive small instances plus `random_instances` random ones.
SuiteReport VerifyAuction(std::uint64_t seed, int random_instances);

// Analytic marginal costs against central differences (1e-5 relative) and
// the two forms of the Lindahl cost (1e-8) on I in [0.05, 0.95].
SuiteReport VerifyDerivatives();

// Randomized provision-ordering suite over `count` configurations.
SuiteReport VerifyOrdering(std::uint64_t seed, int count);

// Discrete auction costs on a lognormal(0, 1) sample of size n against the
// continuum costs at I = 0.6, beta = 1/3. Tolerance 2% relative.
SuiteReport VerifyConvergence(std::uint64_t seed, std::int64_t n);

}  // namespace dpprov

#endif  // DPPROV_VERIFY_H_
