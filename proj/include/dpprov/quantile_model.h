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

#ifndef DPPROV_QUANTILE_MODEL_H_
#define DPPROV_QUANTILE_MODEL_H_

#include <string_view>
#include <variant>
#include <vector>

namespace dpprov {

double NormalCdf(double z);
double NormalPdf(double z);
// Standard normal quantile. Throws DomainError outside (0, 1).
double NormalQuantile(double p);

struct LogNormalParams {
  double mu;
  double sigma;
};

struct NormalMixtureParams {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sigmas;
};

struct EmpiricalParams {
  std::vector<double> sorted_sample;
};

// Population distribution F of the privacy disutility gamma, with its
// quantile function Q. Immutable; all members are thread-safe.
class QuantileModel {
 public:
  enum class Kind { kLogNormal, kNormalMixture, kEmpirical };

  static QuantileModel LogNormal(double mu, double sigma);
  // Rejects components with sigma <= 0, nonpositive weights, weights not
  // summing to 1 within 1e-12, and mixtures with F(0) >= 1e-6.
  static QuantileModel NormalMixture(std::vector<double> weights,
                                     std::vector<double> means,
                                     std::vector<double> sigmas);
  // Any order; the sample is sorted. Every value must be positive.
  static QuantileModel Empirical(std::vector<double> sample);

  Kind kind() const;
  std::string_view KindName() const;
  const LogNormalParams* lognormal() const {
    return std::get_if<LogNormalParams>(&params_);
  }
  const NormalMixtureParams* mixture() const {
    return std::get_if<NormalMixtureParams>(&params_);
  }
  const EmpiricalParams* empirical() const {
    return std::get_if<EmpiricalParams>(&params_);
  }

  // True for the models with an absolutely continuous F.
  bool IsContinuous() const { return kind() != Kind::kEmpirical; }
  // An empirical model whose sample holds a single distinct value.
  bool IsDegenerate() const;

  double Cdf(double x) const;
  // Density; throws ModelError for empirical models.
  double Pdf(double x) const;
  // Throws DomainError unless 0 < p < 1.
  double Quantile(double p) const;
  // Q'(p) = 1 / f(Q(p)). Empirical models use a centered difference over a
  // window of max(1e-3, 2/n) in p. Throws ModelError on degenerate models.
  double QuantileDerivative(double p) const;
  // True when QuantileDerivative is a finite-difference approximation.
  bool DerivativeIsApproximate() const { return !IsContinuous(); }

  // Integral of gamma dF(gamma) over [0, q]. Infinite q gives the mean.
  double PartialExpectation(double q) const;
  // Integral of F(gamma) d(gamma) over [0, q]: adaptive quadrature for
  // continuous models, exact step sum for empirical ones.
  double CdfIntegral(double q) const;
  // Integral of Q(u) du over [0, p]: mean disutility mass of the cheapest
  // fraction p. Equals PartialExpectation(Quantile(p)) when F is continuous.
  double QuantileIntegral(double p) const;

 private:
  explicit QuantileModel(
      std::variant<LogNormalParams, NormalMixtureParams, EmpiricalParams> p)
      : params_(std::move(p)) {}

  std::variant<LogNormalParams, NormalMixtureParams, EmpiricalParams> params_;
};

}  // namespace dpprov

#endif  // DPPROV_QUANTILE_MODEL_H_
