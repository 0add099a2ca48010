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

#ifndef DPPROV_POPULATION_H_
#define DPPROV_POPULATION_H_

#include <cstdint>
#include <vector>

namespace dpprov {

struct Consumer {
  std::int64_t id;
  std::uint8_t bit;
  double gamma;   // marginal disutility of privacy loss
  double eta;     // marginal utility of accuracy
  double income;  // stored only; quasilinear utility makes it inert
};

// Immutable set of consumers with cached eta summaries.
class Population {
 public:
  // Throws RangeError on gamma <= 0, eta < 0, income <= 0, a non-bit, an
  // empty set, or a repeated id.
  explicit Population(std::vector<Consumer> consumers);

  std::int64_t size() const {
    return static_cast<std::int64_t>(consumers_.size());
  }
  const Consumer& operator[](std::int64_t i) const { return consumers_[i]; }
  const std::vector<Consumer>& consumers() const { return consumers_; }

  double eta_bar() const { return eta_bar_; }
  double eta_sum() const { return eta_sum_; }

  std::vector<double> Gammas() const;
  std::vector<std::uint8_t> Bits() const;

 private:
  std::vector<Consumer> consumers_;
  double eta_bar_ = 0.0;
  double eta_sum_ = 0.0;
};

// Population with the given gammas, ids 0..n-1, zero bits, unit income and
// zero eta. Handy for auction-only work.
Population PopulationFromGammas(const std::vector<double>& gammas);

}  // namespace dpprov

#endif  // DPPROV_POPULATION_H_
