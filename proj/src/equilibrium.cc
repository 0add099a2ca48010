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

#include "dpprov/equilibrium.h"

#include <cmath>
#include <string>
#include <vector>

#include "dpprov/dp_core.h"
#include "dpprov/errors.h"

namespace dpprov {

RootResult SolveMarginalCostRoot(const CostCurve& curve, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw DomainError("demand level must be positive and finite");
  }
  auto g = [&](double x) { return MarginalCost(curve, x) - level; };

  std::vector<double> xs(kPreScanPoints), gs(kPreScanPoints);
  for (int i = 0; i < kPreScanPoints; ++i) {
    xs[i] = kAccuracyFloor + (kAccuracyCeiling - kAccuracyFloor) * i /
                                 (kPreScanPoints - 1);
    gs[i] = g(xs[i]);
  }
  RootResult result;
  int first = -1;
  for (int i = 0; i + 1 < kPreScanPoints; ++i) {
    if ((gs[i] <= 0.0) != (gs[i + 1] <= 0.0)) {
      ++result.sign_changes;
      if (first < 0) first = i;
    }
  }
  if (first < 0 && gs.front() > 0.0) {
    throw NoBracketError("marginal cost " + std::to_string(gs.front() + level) +
                             " at the bracket floor exceeds demand " +
                             std::to_string(level) + " on the whole bracket",
                         NoBracketError::Side::kZeroProvision);
  }
  if (first < 0) {
    throw NoBracketError("demand " + std::to_string(level) +
                             " exceeds marginal cost on the whole bracket",
                         NoBracketError::Side::kAboveBracket);
  }
  result.nonmonotone = result.sign_changes > 1;

  double lo = xs[first], hi = xs[first + 1];
  if (gs[first] == 0.0) hi = lo;
  // Invariant: g(lo) and g(hi) keep the signs found by the scan.
  const bool rising = gs[first] <= 0.0;
  // Narrow to kRootTolerance, then keep going while the residual contract
  // |g| < 1e-8 (1 + level) is unmet and the midpoint is still representable.
  while (hi > lo) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if ((gm <= 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < kRootTolerance &&
        std::fabs(g(0.5 * (lo + hi))) < 1e-8 * (1.0 + level)) {
      break;
    }
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.accuracy = 0.5 * (lo + hi);
  result.residual = g(result.accuracy);
  if (result.accuracy - kSocStep > 0.0 && result.accuracy + kSocStep < 1.0) {
    result.soc = curve.regime == Regime::kVcg ? SocVcg(curve, result.accuracy)
                                              : SocLindahl(curve, result.accuracy);
  }
  result.certified = result.soc > 0.0;
  return result;
}

namespace {

CostCurve WithRegime(const CostCurve& curve, Regime regime) {
  CostCurve copy = curve;
  copy.regime = regime;
  return copy;
}

}  // namespace

RootResult SolveCompetitive(const CostCurve& curve_vcg, double eta_bar) {
  return SolveMarginalCostRoot(WithRegime(curve_vcg, Regime::kVcg), eta_bar);
}

RootResult SolveLindahlSupply(const CostCurve& curve_lindahl, double eta_bar) {
  return SolveMarginalCostRoot(WithRegime(curve_lindahl, Regime::kLindahl),
                               eta_bar);
}

RootResult SolvePareto(const CostCurve& curve_vcg, double eta_sum) {
  return SolveMarginalCostRoot(WithRegime(curve_vcg, Regime::kVcg), eta_sum);
}

std::string_view RegimeStatusName(RegimeStatus status) {
  switch (status) {
    case RegimeStatus::kInterior:
      return "interior";
    case RegimeStatus::kZeroProvision:
      return "zero_provision";
    case RegimeStatus::kAboveBracket:
      return "above_bracket";
    case RegimeStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

namespace {

template <class Solve>
RegimeResult Attempt(const CostCurve& curve, double level, Solve solve) {
  RegimeResult r;
  try {
    r.root = solve(curve, level);
    r.status = RegimeStatus::kInterior;
    r.epsilon = EpsilonAt(curve, r.root->accuracy);
  } catch (const NoBracketError& e) {
    r.status = e.side() == NoBracketError::Side::kZeroProvision
                   ? RegimeStatus::kZeroProvision
                   : RegimeStatus::kAboveBracket;
    r.message = e.what();
  } catch (const Error& e) {
    r.status = RegimeStatus::kFailed;
    r.message = e.what();
  }
  return r;
}

}  // namespace

RegimeComparison CompareRegimes(const QuantileModel& model, double n,
                                double beta, double eta_bar, double eta_sum) {
  if (!(eta_bar > 0.0)) throw DomainError("eta_bar must be positive");
  if (!(eta_sum >= eta_bar)) {
    throw DomainError("eta_sum must be at least eta_bar");
  }
  const CostCurve curve = MakeCostCurve(model, n, beta, Regime::kVcg);
  RegimeComparison out;
  out.n = n;
  out.beta = beta;
  out.price_of_accuracy = eta_bar;
  out.eta_sum = eta_sum;
  out.vcg = Attempt(curve, eta_bar, SolveCompetitive);
  out.lindahl = Attempt(curve, eta_bar, SolveLindahlSupply);
  out.pareto = Attempt(curve, eta_sum, SolvePareto);

  if (out.vcg.root) {
    const double at = out.vcg.root->accuracy;
    const double expanded = DcVcg(curve, at);
    const double reduced = DcVcgReduced(curve, at);
    out.foc_crosscheck =
        std::fabs(expanded - reduced) <= 1e-8 * std::fabs(expanded);
  }
  if (out.vcg.root && out.lindahl.root && out.pareto.root) {
    const double i_vcg = out.vcg.root->accuracy;
    const double i_l = out.lindahl.root->accuracy;
    const double i_0 = out.pareto.root->accuracy;
    // With eta_sum == eta_bar the Pareto root coincides with the VCG root.
    const bool single_consumer = eta_sum == eta_bar;
    const bool pareto_ok = single_consumer
                               ? std::fabs(i_0 - i_vcg) <= 1e-8
                               : (i_vcg < i_0 && *out.vcg.epsilon < *out.pareto.epsilon);
    out.ordering_holds = i_vcg < i_l && pareto_ok;
    out.lindahl_vs_pareto = (i_l > i_0) - (i_l < i_0);
  }
  return out;
}

}  // namespace dpprov
