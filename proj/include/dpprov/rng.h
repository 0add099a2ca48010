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

#ifndef DPPROV_RNG_H_
#define DPPROV_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace dpprov {

// Identifier recorded in every run manifest. The engine is std::mt19937_64,
// whose output sequence is fixed by the C++ standard; sub-stream seeds come
// from SplitMix64 and uniforms are built from the top 53 bits.
inline constexpr std::string_view kGeneratorId =
    "mt19937_64+splitmix64-substreams+u53-open";

// SplitMix64 finalizer.
std::uint64_t SplitMix64(std::uint64_t x);

// Deterministic 64-bit random stream. Not thread-safe; give each worker its
// own stream via Substream().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream number `index` derived from `seed`. The same
  // (seed, index) always yields the same stream.
  static Rng Substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double UniformOpen();

  // Uniform on (-1/2, 1/2), never exactly +-1/2.
  double CenteredUniform() { return UniformOpen() - 0.5; }

  double StandardNormal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpprov

#endif  // DPPROV_RNG_H_
