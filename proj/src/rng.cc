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

#include "dpprov/rng.h"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

namespace dpprov {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

Rng Rng::Substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(SplitMix64(seed) ^ SplitMix64(0xd1b54a32d192ed03ULL * (index + 1)));
}

double Rng::UniformOpen() {
  // (k + 1/2) / 2^53 for k in [0, 2^53): strictly inside (0, 1).
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::StandardNormal() {
  // Inverse CDF keeps one uniform per normal, so streams stay aligned.
  const double u = UniformOpen();
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

}  // namespace dpprov
