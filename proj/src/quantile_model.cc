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

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dpprov/errors.h"

namespace dpprov {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kQuadratureTolerance = 1e-13;
constexpr unsigned kQuadratureMaxDepth = 20;

template <class F>
double Integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, kQuadratureMaxDepth, kQuadratureTolerance, &error);
  // Reported error is an estimate; 1e-9 relative is the contract.
  if (!(error <= 1e-9 * std::fabs(value) + 1e-300) || !std::isfinite(value)) {
    throw QuadratureError("quadrature on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "] did not converge (error " +
                          std::to_string(error) + ")");
  }
  return value;
}

void RequireOpenUnit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("probability must lie in (0, 1), got " + std::to_string(p));
  }
}

double MixtureCdf(const NormalMixtureParams& m, double x) {
  double f = 0.0;
  for (std::size_t j = 0; j < m.weights.size(); ++j) {
    f += m.weights[j] * NormalCdf((x - m.means[j]) / m.sigmas[j]);
  }
  return f;
}

double MixturePdf(const NormalMixtureParams& m, double x) {
  double f = 0.0;
  for (std::size_t j = 0; j < m.weights.size(); ++j) {
    f += m.weights[j] * NormalPdf((x - m.means[j]) / m.sigmas[j]) / m.sigmas[j];
  }
  return f;
}

// Support window holding all but a negligible tail of every component.
std::pair<double, double> MixtureWindow(const NormalMixtureParams& m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t j = 0; j < m.weights.size(); ++j) {
    lo = std::min(lo, m.means[j] - 40.0 * m.sigmas[j]);
    hi = std::max(hi, m.means[j] + 40.0 * m.sigmas[j]);
  }
  return {lo, hi};
}

double MixtureQuantile(const NormalMixtureParams& m, double p) {
  auto [lo, hi] = MixtureWindow(m);
  // Bisection to adjacent doubles.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (MixtureCdf(m, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::int64_t EmpiricalRank(std::size_t n, double p) {
  // 1-based order statistic ceil(p n).
  const double t = p * static_cast<double>(n);
  auto r = static_cast<std::int64_t>(std::ceil(t - 1e-12 * std::max(1.0, t)));
  return std::clamp<std::int64_t>(r, 1, static_cast<std::int64_t>(n));
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double NormalPdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double NormalQuantile(double p) {
  RequireOpenUnit(p);
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

QuantileModel QuantileModel::LogNormal(double mu, double sigma) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ModelError("lognormal needs finite mu and sigma > 0");
  }
  return QuantileModel(LogNormalParams{mu, sigma});
}

QuantileModel QuantileModel::NormalMixture(std::vector<double> weights,
                                           std::vector<double> means,
                                           std::vector<double> sigmas) {
  if (weights.empty() || weights.size() != means.size() ||
      weights.size() != sigmas.size()) {
    throw ModelError("mixture needs matching, nonempty weight/mean/sigma lists");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0)) throw ModelError("mixture weights must be positive");
    if (!(sigmas[j] > 0.0)) throw ModelError("mixture sigmas must be positive");
    if (!std::isfinite(means[j])) throw ModelError("mixture means must be finite");
    total += weights[j];
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw ModelError("mixture weights sum to " + std::to_string(total));
  }
  NormalMixtureParams params{std::move(weights), std::move(means),
                             std::move(sigmas)};
  const double mass_below_zero = MixtureCdf(params, 0.0);
  if (!(mass_below_zero < 1e-6)) {
    throw ModelError("mixture puts mass " + std::to_string(mass_below_zero) +
                     " on gamma <= 0");
  }
  return QuantileModel(std::move(params));
}

QuantileModel QuantileModel::Empirical(std::vector<double> sample) {
  if (sample.empty()) throw ModelError("empirical model needs a sample");
  for (const double g : sample) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ModelError("empirical sample values must be positive");
    }
  }
  std::sort(sample.begin(), sample.end());
  return QuantileModel(EmpiricalParams{std::move(sample)});
}

QuantileModel::Kind QuantileModel::kind() const {
  switch (params_.index()) {
    case 0:
      return Kind::kLogNormal;
    case 1:
      return Kind::kNormalMixture;
    default:
      return Kind::kEmpirical;
  }
}

std::string_view QuantileModel::KindName() const {
  switch (kind()) {
    case Kind::kLogNormal:
      return "lognormal";
    case Kind::kNormalMixture:
      return "mixture";
    case Kind::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

bool QuantileModel::IsDegenerate() const {
  const auto* e = empirical();
  return e != nullptr && e->sorted_sample.front() == e->sorted_sample.back();
}

double QuantileModel::Cdf(double x) const {
  if (const auto* ln = lognormal()) {
    if (x <= 0.0) return 0.0;
    return NormalCdf((std::log(x) - ln->mu) / ln->sigma);
  }
  if (const auto* mix = mixture()) return MixtureCdf(*mix, x);
  const auto& s = empirical()->sorted_sample;
  const auto count = std::upper_bound(s.begin(), s.end(), x) - s.begin();
  return static_cast<double>(count) / static_cast<double>(s.size());
}

double QuantileModel::Pdf(double x) const {
  if (const auto* ln = lognormal()) {
    if (x <= 0.0) return 0.0;
    return NormalPdf((std::log(x) - ln->mu) / ln->sigma) / (x * ln->sigma);
  }
  if (const auto* mix = mixture()) return MixturePdf(*mix, x);
  throw ModelError("empirical model has no density");
}

double QuantileModel::Quantile(double p) const {
  RequireOpenUnit(p);
  if (const auto* ln = lognormal()) {
    return std::exp(ln->mu + ln->sigma * NormalQuantile(p));
  }
  if (const auto* mix = mixture()) return MixtureQuantile(*mix, p);
  const auto& s = empirical()->sorted_sample;
  return s[EmpiricalRank(s.size(), p) - 1];
}

double QuantileModel::QuantileDerivative(double p) const {
  RequireOpenUnit(p);
  if (IsDegenerate()) {
    throw ModelError("quantile derivative undefined for a point-mass model");
  }
  if (IsContinuous()) {
    const double f = Pdf(Quantile(p));
    if (!(f > 0.0)) throw ModelError("zero density at the quantile");
    return 1.0 / f;
  }
  const double n = static_cast<double>(empirical()->sorted_sample.size());
  const double h = std::max(1e-3, 2.0 / n);
  const double lo = std::max(p - h, 0.5 / n);
  const double hi = std::min(p + h, 1.0 - 0.5 / n);
  if (!(hi > lo)) throw ModelError("sample too small for a quantile slope");
  return (Quantile(hi) - Quantile(lo)) / (hi - lo);
}

double QuantileModel::PartialExpectation(double q) const {
  if (std::isnan(q)) throw DomainError("partial expectation at NaN");
  if (q <= 0.0) return 0.0;
  if (const auto* ln = lognormal()) {
    const double mean = std::exp(ln->mu + 0.5 * ln->sigma * ln->sigma);
    if (std::isinf(q)) return mean;
    return mean * NormalCdf((std::log(q) - ln->mu) / ln->sigma - ln->sigma);
  }
  if (const auto* mix = mixture()) {
    const double upper = std::min(q, MixtureWindow(*mix).second);
    return Integrate([&](double x) { return x * MixturePdf(*mix, x); }, 0.0,
                     upper);
  }
  const auto& s = empirical()->sorted_sample;
  double sum = 0.0;
  for (const double g : s) {
    if (g > q) break;
    sum += g;
  }
  return sum / static_cast<double>(s.size());
}

double QuantileModel::CdfIntegral(double q) const {
  if (!std::isfinite(q)) throw DomainError("CDF integral needs a finite bound");
  if (q <= 0.0) return 0.0;
  if (IsContinuous()) {
    return Integrate([&](double x) { return Cdf(x); }, 0.0, q);
  }
  // Step function: each atom g contributes (q - g)/n once passed.
  const auto& s = empirical()->sorted_sample;
  double sum = 0.0;
  for (const double g : s) {
    if (g > q) break;
    sum += q - g;
  }
  return sum / static_cast<double>(s.size());
}

double QuantileModel::QuantileIntegral(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability must lie in [0, 1]");
  }
  if (p == 0.0) return 0.0;
  if (const auto* ln = lognormal()) {
    const double mean = std::exp(ln->mu + 0.5 * ln->sigma * ln->sigma);
    if (p == 1.0) return mean;
    return mean * NormalCdf(NormalQuantile(p) - ln->sigma);
  }
  if (mixture() != nullptr) {
    return PartialExpectation(p == 1.0 ? std::numeric_limits<double>::infinity()
                                       : Quantile(p));
  }
  const auto& s = empirical()->sorted_sample;
  const double n = static_cast<double>(s.size());
  const double t = p * n;
  const auto whole = std::min(static_cast<std::size_t>(std::floor(t)), s.size());
  double sum = std::accumulate(s.begin(), s.begin() + whole, 0.0);
  if (whole < s.size()) sum += (t - static_cast<double>(whole)) * s[whole];
  return sum / n;
}

}  // namespace dpprov
