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
#include <exception>
#include <string>

#include "dpprov/dp_core.h"
#include "dpprov/errors.h"

namespace dpprov {

namespace {

double MOf(const CostCurve& curve) { return MFromBeta(curve.beta); }

void RequireInterior(double accuracy) {
  if (!(accuracy > 0.0 && accuracy < 1.0)) {
    throw DomainError("accuracy I must lie in (0, 1), got " +
                      std::to_string(accuracy));
  }
}

// Cohort fraction H(I)/N = 1 - (1-I)/m.
double CohortFraction(const CostCurve& curve, double accuracy) {
  RequireInterior(accuracy);
  const double p = 1.0 - (1.0 - accuracy) / MOf(curve);
  if (!(p > 0.0)) {
    throw DomainError("empty cohort at I = " + std::to_string(accuracy));
  }
  return p;
}

void RequireDensity(const CostCurve& curve) {
  if (curve.model.IsDegenerate()) {
    throw ModelError("marginal cost needs a nondegenerate density");
  }
}

}  // namespace

CostCurve MakeCostCurve(QuantileModel model, double n, double beta,
                        Regime regime) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("population measure must be positive");
  }
  MFromBeta(beta);
  return CostCurve{std::move(model), n, beta, regime};
}

double CohortMeasure(const CostCurve& curve, double accuracy) {
  return curve.n * CohortFraction(curve, accuracy);
}

double CohortMeasureSlope(const CostCurve& curve) {
  return curve.n / MOf(curve);
}

double EpsilonAt(const CostCurve& curve, double accuracy) {
  RequireInterior(accuracy);
  return MOf(curve) / ((1.0 - accuracy) * curve.n);
}

double EpsilonSlope(const CostCurve& curve, double accuracy) {
  RequireInterior(accuracy);
  const double u = 1.0 - accuracy;
  return MOf(curve) / (u * u * curve.n);
}

double CVcg(const CostCurve& curve, double accuracy) {
  const double p = CohortFraction(curve, accuracy);
  return curve.model.Quantile(p) * CohortMeasure(curve, accuracy) *
         EpsilonAt(curve, accuracy);
}

double CLindahl(const CostCurve& curve, double accuracy) {
  const double p = CohortFraction(curve, accuracy);
  const double cost =
      curve.n * curve.model.QuantileIntegral(p) * EpsilonAt(curve, accuracy);
  if (curve.model.IsContinuous()) {
    const double by_parts = CLindahlByParts(curve, accuracy);
    if (std::fabs(cost - by_parts) > 1e-8 * std::fabs(cost)) {
      throw ConsistencyError("Lindahl cost forms disagree at I = " +
                             std::to_string(accuracy) + ": " +
                             std::to_string(cost) + " vs " +
                             std::to_string(by_parts));
    }
  }
  return cost;
}

namespace {

// Q H - N integral_0^Q F, or N integral_0^p Q where F has atoms.
double LindahlBracket(const CostCurve& curve, double accuracy) {
  const double p = CohortFraction(curve, accuracy);
  if (!curve.model.IsContinuous()) {
    return curve.n * curve.model.QuantileIntegral(p);
  }
  const double q = curve.model.Quantile(p);
  return q * CohortMeasure(curve, accuracy) - curve.n * curve.model.CdfIntegral(q);
}

}  // namespace

double CLindahlByParts(const CostCurve& curve, double accuracy) {
  return LindahlBracket(curve, accuracy) * EpsilonAt(curve, accuracy);
}

double DcVcg(const CostCurve& curve, double accuracy) {
  RequireDensity(curve);
  const double p = CohortFraction(curve, accuracy);
  const double q = curve.model.Quantile(p);
  const double q_slope = curve.model.QuantileDerivative(p);
  const double h = CohortMeasure(curve, accuracy);
  return q * h * EpsilonSlope(curve, accuracy) +
         (q + q_slope * p) * CohortMeasureSlope(curve) * EpsilonAt(curve, accuracy);
}

double DcLindahl(const CostCurve& curve, double accuracy) {
  RequireDensity(curve);
  const double p = CohortFraction(curve, accuracy);
  const double q = curve.model.Quantile(p);
  return LindahlBracket(curve, accuracy) * EpsilonSlope(curve, accuracy) +
         q * CohortMeasureSlope(curve) * EpsilonAt(curve, accuracy);
}

double DcVcgReduced(const CostCurve& curve, double accuracy) {
  RequireDensity(curve);
  const double m = MOf(curve);
  const double p = CohortFraction(curve, accuracy);
  const double u = 1.0 - accuracy;
  return curve.model.QuantileDerivative(p) / m * (m / u - 1.0) +
         curve.model.Quantile(p) * m / (u * u);
}

double DcLindahlReduced(const CostCurve& curve, double accuracy) {
  RequireDensity(curve);
  const double m = MOf(curve);
  const double p = CohortFraction(curve, accuracy);
  const double u = 1.0 - accuracy;
  return m / (u * u) * curve.model.QuantileIntegral(p) +
         curve.model.Quantile(p) / u;
}

double Cost(const CostCurve& curve, double accuracy) {
  return curve.regime == Regime::kVcg ? CVcg(curve, accuracy)
                                      : CLindahl(curve, accuracy);
}

double MarginalCost(const CostCurve& curve, double accuracy) {
  return curve.regime == Regime::kVcg ? DcVcg(curve, accuracy)
                                      : DcLindahl(curve, accuracy);
}

double CentralDifference(const std::function<double(double)>& f, double x,
                         double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

namespace {

void RequireSocWindow(double accuracy) {
  if (!(accuracy - kSocStep > 0.0 && accuracy + kSocStep < 1.0)) {
    throw DomainError("second-order check needs I +- " +
                      std::to_string(kSocStep) + " inside (0, 1)");
  }
}

}  // namespace

double SocVcg(const CostCurve& curve, double accuracy) {
  RequireSocWindow(accuracy);
  return CentralDifference([&](double x) { return DcVcg(curve, x); }, accuracy,
                           kSocStep);
}

double SocLindahl(const CostCurve& curve, double accuracy) {
  RequireSocWindow(accuracy);
  return CentralDifference([&](double x) { return DcLindahl(curve, x); },
                           accuracy, kSocStep);
}

std::vector<double> AccuracyGrid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) {
    throw DomainError("accuracy grid must lie strictly inside (0, 1)");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    if (x > hi + step * 1e-6) break;
    grid.push_back(std::min(x, hi));
  }
  return grid;
}

namespace {

CostSweepRow SweepRow(const CostCurve& curve, double accuracy) {
  CostSweepRow row;
  row.accuracy = accuracy;
  row.c_vcg = CVcg(curve, accuracy);
  row.c_lindahl = CLindahl(curve, accuracy);
  row.dc_vcg = DcVcg(curve, accuracy);
  row.dc_lindahl = DcLindahl(curve, accuracy);
  row.soc = SocVcg(curve, accuracy);
  row.ordered = 0.0 < row.dc_lindahl && row.dc_lindahl < row.dc_vcg;
  return row;
}

}  // namespace

std::vector<CostSweepRow> SweepCostCurves(const CostCurve& curve,
                                          const std::vector<double>& grid) {
  const long count = static_cast<long>(grid.size());
  std::vector<CostSweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      rows[i] = SweepRow(curve, grid[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<CostSweepRow> SweepCostCurvesReference(
    const CostCurve& curve, const std::vector<double>& grid) {
  std::vector<CostSweepRow> rows;
  rows.reserve(grid.size());
  for (const double accuracy : grid) rows.push_back(SweepRow(curve, accuracy));
  return rows;
}

}  // namespace dpprov
