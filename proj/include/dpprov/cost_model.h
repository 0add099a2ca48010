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

#ifndef DPPROV_COST_MODEL_H_
#define DPPROV_COST_MODEL_H_

#include <functional>
#include <vector>

#include "dpprov/quantile_model.h"

namespace dpprov {

enum class Regime { kVcg, kLindahl };

// Continuum cost of producing data accuracy I for a population of measure n
// whose disutilities follow `model`. Accuracy I = 1 - alpha.
struct CostCurve {
  QuantileModel model;
  double n;
  double beta;
  Regime regime = Regime::kVcg;
};

// Validates n > 0 and the beta range.
CostCurve MakeCostCurve(QuantileModel model, double n, double beta,
                        Regime regime = Regime::kVcg);

// Evaluation floor and ceiling used by sweeps and root bracketing.
inline constexpr double kAccuracyFloor = 1e-6;
inline constexpr double kAccuracyCeiling = 1.0 - 1e-6;

// Production technology in continuum form. All throw DomainError unless
// 0 < I < 1.
double CohortMeasure(const CostCurve& curve, double accuracy);        // H(I)
double CohortMeasureSlope(const CostCurve& curve);                    // H'(I)
double EpsilonAt(const CostCurve& curve, double accuracy);            // eps(I)
double EpsilonSlope(const CostCurve& curve, double accuracy);         // eps'(I)

// C^VCG(I) = Q(H/N) H eps.
double CVcg(const CostCurve& curve, double accuracy);

// C^L(I) = N eps * integral_0^{H/N} Q(u) du. For continuous models this is
// cross-checked against the integration-by-parts form and a disagreement
// beyond 1e-8 relative raises ConsistencyError.
double CLindahl(const CostCurve& curve, double accuracy);

// [Q H - N integral_0^Q F] eps. Equal to CLindahl for continuous models.
double CLindahlByParts(const CostCurve& curve, double accuracy);

// Marginal VCG cost: Q H eps' + [Q + Q' H/N] H' eps. This is also the
// private first-order condition for the price of accuracy.
double DcVcg(const CostCurve& curve, double accuracy);

// Marginal Lindahl cost: [Q H - N integral_0^Q F] eps' + Q H' eps (the
// bracket is N integral_0^{H/N} Q for empirical models).
double DcLindahl(const CostCurve& curve, double accuracy);

// Same derivatives from the N-free forms C^VCG = Q(p)(m/(1-I) - 1) and
// C^L = m/(1-I) * integral_0^p Q, with p = 1 - (1-I)/m.
double DcVcgReduced(const CostCurve& curve, double accuracy);
double DcLindahlReduced(const CostCurve& curve, double accuracy);

// Cost and marginal cost of the curve's own regime.
double Cost(const CostCurve& curve, double accuracy);
double MarginalCost(const CostCurve& curve, double accuracy);

inline constexpr double kSocStep = 1e-5;

// Central difference of `derivative` at x with step h.
double CentralDifference(const std::function<double(double)>& f, double x,
                         double h);

// d^2 C^VCG / dI^2 by central difference of DcVcg. Positive certifies local
// convexity. DomainError unless I +- step stays inside (0, 1).
double SocVcg(const CostCurve& curve, double accuracy);
double SocLindahl(const CostCurve& curve, double accuracy);

struct CostSweepRow {
  double accuracy;
  double c_vcg;
  double c_lindahl;
  double dc_vcg;
  double dc_lindahl;
  double soc;
  // 0 < dc_lindahl < dc_vcg.
  bool ordered;
};

// Grid lo, lo + step, ... up to hi (inclusive within step/1e6). Throws
// DomainError unless 0 < lo <= hi < 1 and step > 0.
std::vector<double> AccuracyGrid(double lo, double hi, double step);

// Row-parallel sweep (OpenMP). Identical to SweepCostCurvesReference.
std::vector<CostSweepRow> SweepCostCurves(const CostCurve& curve,
                                          const std::vector<double>& grid);
std::vector<CostSweepRow> SweepCostCurvesReference(
    const CostCurve& curve, const std::vector<double>& grid);

}  // namespace dpprov

#endif  // DPPROV_COST_MODEL_H_
