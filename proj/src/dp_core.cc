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

#include "dpprov/dp_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpprov/errors.h"

namespace dpprov {

BitDatabase::BitDatabase(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) throw DomainError("database needs at least one row");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      throw DomainError("row " + std::to_string(i) + " is not a bit");
    }
  }
}

std::vector<std::int64_t> BitDatabase::Histogram() const {
  const auto ones = std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
  return {size() - ones, ones};
}

double MFromBeta(double beta) {
  if (!(beta > 0.0 && beta < kMaxBeta)) {
    throw DomainError("beta must lie in (0, 1/(1+sqrt(e)) = 0.377541), got " +
                      std::to_string(beta));
  }
  return 0.5 + std::log(1.0 / beta);
}

AccuracyTarget MakeAccuracyTarget(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  return AccuracyTarget(alpha, beta, MFromBeta(beta));
}

namespace {

void RequirePositiveN(std::int64_t n) {
  if (n < 1) throw DomainError("population size must be at least 1");
}

}  // namespace

PrivacyLoss EpsilonFor(const AccuracyTarget& target, std::int64_t n) {
  RequirePositiveN(n);
  return {target.m() / (target.alpha() * static_cast<double>(n))};
}

double CohortSize(const AccuracyTarget& target, std::int64_t n) {
  RequirePositiveN(n);
  const double nn = static_cast<double>(n);
  return nn - target.alpha() * nn / target.m();
}

std::int64_t RequiredCohortCount(const AccuracyTarget& target,
                                 std::int64_t n) {
  const double h = CohortSize(target, n);
  return static_cast<std::int64_t>(std::ceil(h - 1e-12 * std::max(1.0, h)));
}

double TrueStatistic(const BitDatabase& db) {
  const auto hist = db.Histogram();
  return static_cast<double>(hist[1]) / static_cast<double>(db.size());
}

double LaplaceFromUniform(double scale, double u) {
  if (!(scale > 0.0)) throw DomainError("Laplace scale must be positive");
  if (!(u > -0.5 && u < 0.5)) {
    throw DomainError("centered uniform must lie in (-1/2, 1/2)");
  }
  const double sign = (u > 0.0) - (u < 0.0);
  return -scale * sign * std::log1p(-2.0 * std::fabs(u));
}

double LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0.0)) throw DomainError("Laplace scale must be positive");
  return LaplaceFromUniform(scale, rng.CenteredUniform());
}

namespace {

// Validates the cohort and returns the unnormalized cohort sum.
std::int64_t CohortSum(const BitDatabase& db,
                       std::span<const std::int64_t> cohort,
                       const AccuracyTarget& target) {
  const std::int64_t n = db.size();
  const std::int64_t required = RequiredCohortCount(target, n);
  if (static_cast<std::int64_t>(cohort.size()) != required) {
    throw CohortSizeError("cohort has " + std::to_string(cohort.size()) +
                          " members, target requires " +
                          std::to_string(required));
  }
  std::vector<bool> seen(n, false);
  std::int64_t sum = 0;
  for (const std::int64_t i : cohort) {
    if (i < 0 || i >= n) {
      throw IndexError("cohort index " + std::to_string(i) + " out of range");
    }
    if (seen[i]) {
      throw IndexError("cohort index " + std::to_string(i) + " repeated");
    }
    seen[i] = true;
    sum += db.bit(i);
  }
  return sum;
}

double BiasCorrection(const AccuracyTarget& target, std::int64_t n) {
  return target.alpha() * static_cast<double>(n) / (2.0 * target.m());
}

PublishedStatistic Compose(std::int64_t cohort_sum, std::int64_t cohort_size,
                           std::int64_t n, const AccuracyTarget& target,
                           double noise_draw) {
  const double bias = BiasCorrection(target, n);
  PublishedStatistic out;
  out.value = (static_cast<double>(cohort_sum) + bias + noise_draw) /
              static_cast<double>(n);
  out.epsilon = EpsilonFor(target, n);
  out.cohort_size = cohort_size;
  out.bias_correction = bias;
  out.noise_draw = noise_draw;
  return out;
}

}  // namespace

PublishedStatistic GrPublishWithNoise(const BitDatabase& db,
                                      std::span<const std::int64_t> cohort,
                                      const AccuracyTarget& target,
                                      double noise_draw) {
  const std::int64_t sum = CohortSum(db, cohort, target);
  return Compose(sum, static_cast<std::int64_t>(cohort.size()), db.size(),
                 target, noise_draw);
}

PublishedStatistic GrPublish(const BitDatabase& db,
                             std::span<const std::int64_t> cohort,
                             const AccuracyTarget& target, Rng& rng) {
  const std::int64_t sum = CohortSum(db, cohort, target);
  const double scale = 1.0 / EpsilonFor(target, db.size()).epsilon;
  return Compose(sum, static_cast<std::int64_t>(cohort.size()), db.size(),
                 target, LaplaceSample(scale, rng));
}

bool AreNeighbors(std::span<const std::int64_t> a,
                  std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw ShapeError("histograms cover different category sets");
  }
  std::int64_t norm_a = 0, norm_b = 0, distance = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    norm_a += a[i];
    norm_b += b[i];
    distance += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  }
  return norm_a == norm_b && distance == 2;
}

double DpCertificate(const AccuracyTarget& target, std::int64_t n) {
  return kCohortSumSensitivity * EpsilonFor(target, n).epsilon;
}

double PublishLogDensityRatio(const BitDatabase& db_a, const BitDatabase& db_b,
                              std::span<const std::int64_t> cohort,
                              const AccuracyTarget& target, double x) {
  if (db_a.size() != db_b.size()) {
    throw ShapeError("databases differ in size");
  }
  const std::int64_t n = db_a.size();
  const double eps = EpsilonFor(target, n).epsilon;
  const double bias = BiasCorrection(target, n);
  const double center_a = static_cast<double>(CohortSum(db_a, cohort, target)) + bias;
  const double center_b = static_cast<double>(CohortSum(db_b, cohort, target)) + bias;
  const double t = x * static_cast<double>(n);
  // Both densities share the factor n * eps / 2.
  return eps * (std::fabs(t - center_b) - std::fabs(t - center_a));
}

namespace {

std::int64_t PartitionBegin(std::int64_t trials, int partitions, int j) {
  return trials * j / partitions;
}

// Failures in partition j. Shared by the parallel and serial drivers.
std::int64_t PartitionFailures(double center, double truth, double alpha_n,
                               double scale, const AccuracyRunOptions& opt,
                               int j) {
  Rng rng = Rng::Substream(opt.seed, static_cast<std::uint64_t>(j));
  const std::int64_t begin = PartitionBegin(opt.trials, opt.partitions, j);
  const std::int64_t end = PartitionBegin(opt.trials, opt.partitions, j + 1);
  std::int64_t failures = 0;
  for (std::int64_t t = begin; t < end; ++t) {
    const double noise =
        opt.suppress_noise ? 0.0 : LaplaceFromUniform(scale, rng.CenteredUniform());
    if (std::fabs(center + noise - truth) > alpha_n) ++failures;
  }
  return failures;
}

struct AccuracySetup {
  double center;  // cohort sum + bias, unnormalized
  double truth;   // total number of ones
  double alpha_n;
  double scale;
};

AccuracySetup PrepareAccuracyRun(const BitDatabase& db,
                                 const AccuracyTarget& target,
                                 std::span<const std::int64_t> cohort,
                                 const AccuracyRunOptions& options) {
  if (options.trials < 1) throw DomainError("trials must be positive");
  if (options.partitions < 1) throw DomainError("partitions must be positive");
  const std::int64_t n = db.size();
  AccuracySetup s;
  s.center = static_cast<double>(CohortSum(db, cohort, target)) +
             BiasCorrection(target, n);
  s.truth = static_cast<double>(db.Histogram()[1]);
  s.alpha_n = target.alpha() * static_cast<double>(n);
  s.scale = 1.0 / EpsilonFor(target, n).epsilon;
  return s;
}

}  // namespace

double EmpiricalAccuracy(const BitDatabase& db, const AccuracyTarget& target,
                         std::span<const std::int64_t> cohort,
                         const AccuracyRunOptions& options) {
  const AccuracySetup s = PrepareAccuracyRun(db, target, cohort, options);
  std::int64_t failures = 0;
#pragma omp parallel for schedule(static) reduction(+ : failures)
  for (int j = 0; j < options.partitions; ++j) {
    failures += PartitionFailures(s.center, s.truth, s.alpha_n, s.scale,
                                  options, j);
  }
  return static_cast<double>(failures) / static_cast<double>(options.trials);
}

double EmpiricalAccuracyReference(const BitDatabase& db,
                                  const AccuracyTarget& target,
                                  std::span<const std::int64_t> cohort,
                                  const AccuracyRunOptions& options) {
  // Full publication per trial, consuming the same sub-streams in the same
  // order as the parallel kernel.
  PrepareAccuracyRun(db, target, cohort, options);
  const double truth = TrueStatistic(db);
  std::int64_t failures = 0;
  for (int j = 0; j < options.partitions; ++j) {
    Rng rng = Rng::Substream(options.seed, static_cast<std::uint64_t>(j));
    const std::int64_t begin = PartitionBegin(options.trials, options.partitions, j);
    const std::int64_t end = PartitionBegin(options.trials, options.partitions, j + 1);
    for (std::int64_t t = begin; t < end; ++t) {
      const PublishedStatistic out =
          options.suppress_noise ? GrPublishWithNoise(db, cohort, target, 0.0)
                                 : GrPublish(db, cohort, target, rng);
      if (std::fabs(out.value - truth) > target.alpha()) ++failures;
    }
  }
  return static_cast<double>(failures) / static_cast<double>(options.trials);
}

BitDatabase AdversarialDatabase(std::int64_t n, std::int64_t k,
                                bool unsampled_ones) {
  if (k < 0 || k > n) throw DomainError("cohort larger than database");
  std::vector<std::uint8_t> bits(n);
  const std::uint8_t cohort_bit = unsampled_ones ? 0 : 1;
  for (std::int64_t i = 0; i < n; ++i) {
    bits[i] = i < k ? cohort_bit : static_cast<std::uint8_t>(1 - cohort_bit);
  }
  return BitDatabase(std::move(bits));
}

}  // namespace dpprov
