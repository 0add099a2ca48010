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

#ifndef DPPROV_EQUILIBRIUM_H_
#define DPPROV_EQUILIBRIUM_H_

#include <optional>
#include <string>
#include <string_view>

#include "dpprov/cost_model.h"

namespace dpprov {

// Number of evenly spaced points scanned for sign changes before bisection.
inline constexpr int kPreScanPoints = 200;
// Bisection stops once the bracket is narrower than this.
inline constexpr double kRootTolerance = 1e-10;

struct RootResult {
  double accuracy = 0.0;
  // Marginal cost minus level at the returned root.
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Sign changes of (marginal cost - level) seen by the pre-scan.
  int sign_changes = 0;
  // More than one sign change: the smallest root was returned.
  bool nonmonotone = false;
  // Second derivative of the regime's cost at the root.
  double soc = 0.0;
  // soc > 0: a certified equilibrium rather than a stationary point.
  bool certified = false;
};

// Smallest I in [kAccuracyFloor, kAccuracyCeiling] with marginal cost of the
// curve's regime equal to `level`. Throws NoBracketError with
// kZeroProvision when the marginal cost already exceeds the level at the
// floor, and kAboveBracket when it never reaches it.
RootResult SolveMarginalCostRoot(const CostCurve& curve, double level);

// Private provision with VCG procurement: dC^VCG/dI = eta_bar.
RootResult SolveCompetitive(const CostCurve& curve_vcg, double eta_bar);
// Private provision with Lindahl procurement: dC^L/dI = eta_bar.
RootResult SolveLindahlSupply(const CostCurve& curve_lindahl, double eta_bar);
// Pareto optimum: dC^VCG/dI = sum of eta.
RootResult SolvePareto(const CostCurve& curve_vcg, double eta_sum);

enum class RegimeStatus { kInterior, kZeroProvision, kAboveBracket, kFailed };

std::string_view RegimeStatusName(RegimeStatus status);

struct RegimeResult {
  RegimeStatus status = RegimeStatus::kFailed;
  std::optional<RootResult> root;
  // m / ((1 - I) N) recomputed from the root; zero provision has none.
  std::optional<double> epsilon;
  std::string message;
};

struct RegimeComparison {
  double n = 0.0;
  double beta = 0.0;
  // Equilibrium price of accuracy: the largest individual valuation.
  double price_of_accuracy = 0.0;
  double eta_sum = 0.0;
  RegimeResult vcg;
  RegimeResult lindahl;
  RegimeResult pareto;
  // The two-term expansion of the private first-order condition
  // matches the N-free derivative at the VCG root to 1e-8.
  std::optional<bool> foc_crosscheck;
  // Set only when all three regimes are interior.
  std::optional<bool> ordering_holds;
  // I^L versus I^0 is reported, never asserted: -1, 0, or +1.
  std::optional<int> lindahl_vs_pareto;
};

// Solves the three regimes. Throws DomainError unless
// eta_sum >= eta_bar > 0; per-regime failures are recorded, not thrown.
RegimeComparison CompareRegimes(const QuantileModel& model, double n,
                                double beta, double eta_bar, double eta_sum);

}  // namespace dpprov

#endif  // DPPROV_EQUILIBRIUM_H_
