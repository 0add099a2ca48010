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

#ifndef DPPROV_DP_CORE_H_
#define DPPROV_DP_CORE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dpprov/rng.h"

namespace dpprov {

// Upper limit on the failure probability: 1 / (1 + sqrt(e)).
inline constexpr double kMaxBeta = 0.37754066879814546;

// The confidential database: one bit per individual.
class BitDatabase {
 public:
  // Throws DomainError if empty or if any entry is not 0/1.
  explicit BitDatabase(std::vector<std::uint8_t> bits);

  std::int64_t size() const { return static_cast<std::int64_t>(bits_.size()); }
  std::uint8_t bit(std::int64_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  // (count of 0s, count of 1s).
  std::vector<std::int64_t> Histogram() const;

 private:
  std::vector<std::uint8_t> bits_;
};

// An (alpha, beta)-accuracy requirement: |s_hat - s| <= alpha with
// probability at least 1 - beta.
class AccuracyTarget {
 public:
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // 1/2 + ln(1/beta).
  double m() const { return m_; }
  // Data accuracy I = 1 - alpha.
  double accuracy() const { return 1.0 - alpha_; }

 private:
  friend AccuracyTarget MakeAccuracyTarget(double alpha, double beta);
  AccuracyTarget(double alpha, double beta, double m)
      : alpha_(alpha), beta_(beta), m_(m) {}
  double alpha_;
  double beta_;
  double m_;
};

// Throws DomainError unless 0 < alpha < 1 and 0 < beta < kMaxBeta.
AccuracyTarget MakeAccuracyTarget(double alpha, double beta);

// 1/2 + ln(1/beta), validated against the admissible beta range.
double MFromBeta(double beta);

struct PrivacyLoss {
  double epsilon;
};

// Privacy loss bought from every cohort member: m / (alpha * n).
PrivacyLoss EpsilonFor(const AccuracyTarget& target, std::int64_t n);

// Real-valued cohort measure H = n - alpha * n / m.
double CohortSize(const AccuracyTarget& target, std::int64_t n);

// Number of participants a discrete auction must buy from: ceil(H). A
// relative slack of 1e-12 keeps an H that is integral up to rounding noise
// from being bumped to the next integer.
std::int64_t RequiredCohortCount(const AccuracyTarget& target, std::int64_t n);

// s = (1/n) * sum of bits.
double TrueStatistic(const BitDatabase& db);

// Inverse-CDF transform of one centered uniform u in (-1/2, 1/2):
// -scale * sign(u) * ln(1 - 2|u|).
double LaplaceFromUniform(double scale, double u);

// One Laplace(0, scale) draw. Throws DomainError if scale <= 0.
double LaplaceSample(double scale, Rng& rng);

struct PublishedStatistic {
  double value;
  PrivacyLoss epsilon;
  std::int64_t cohort_size;
  double bias_correction;
  double noise_draw;
};

// Publishes s_hat = (1/N)[sum_{i in cohort} b_i + alpha N / (2m) + Lap(1/eps)].
// The cohort must hold exactly RequiredCohortCount(target, N) distinct
// valid indices.
PublishedStatistic GrPublish(const BitDatabase& db,
                             std::span<const std::int64_t> cohort,
                             const AccuracyTarget& target, Rng& rng);

// Same composition with a caller-supplied noise draw (unnormalized units).
PublishedStatistic GrPublishWithNoise(const BitDatabase& db,
                                      std::span<const std::int64_t> cohort,
                                      const AccuracyTarget& target,
                                      double noise_draw);

// True iff both histograms have the same l1 norm and are at l1 distance 2.
bool AreNeighbors(std::span<const std::int64_t> a,
                  std::span<const std::int64_t> b);

// Sensitivity of the unnormalized cohort sum to one row.
inline constexpr double kCohortSumSensitivity = 1.0;

// Analytic supremum of the log density ratio of GrPublish outputs over
// neighboring databases: sensitivity * epsilon.
double DpCertificate(const AccuracyTarget& target, std::int64_t n);

// log p_a(x) - p_b(x) for the published-statistic densities of two
// databases at output x. Used to check the certificate pointwise.
double PublishLogDensityRatio(const BitDatabase& db_a, const BitDatabase& db_b,
                              std::span<const std::int64_t> cohort,
                              const AccuracyTarget& target, double x);

struct AccuracyRunOptions {
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  // Trials are split into this many partitions, each with its own
  // sub-stream; results depend on (seed, partitions) only.
  int partitions = 64;
  // Publish with zero noise. For degenerate-case testing.
  bool suppress_noise = false;
};

// Fraction of trials with |s_hat - s| > alpha. OpenMP-parallel over
// partitions; bit-identical to EmpiricalAccuracyReference.
double EmpiricalAccuracy(const BitDatabase& db, const AccuracyTarget& target,
                         std::span<const std::int64_t> cohort,
                         const AccuracyRunOptions& options);

// Serial reference implementation of EmpiricalAccuracy.
double EmpiricalAccuracyReference(const BitDatabase& db,
                                  const AccuracyTarget& target,
                                  std::span<const std::int64_t> cohort,
                                  const AccuracyRunOptions& options);

// The two extreme unsampled-mass databases for a cohort of the first k rows:
// cohort bits 0 with every other bit 1, and cohort bits 1 with every other
// bit 0.
BitDatabase AdversarialDatabase(std::int64_t n, std::int64_t k,
                                bool unsampled_ones);

}  // namespace dpprov

#endif  // DPPROV_DP_CORE_H_
