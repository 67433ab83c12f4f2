// Copyright (c) 2026 The nc-coreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NCCORESET_CORE_RNG_H_
#define NCCORESET_CORE_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nccoreset {

// Stream contract, relied on by every seeded operation in the toolkit:
//  - raw bits come from std::mt19937_64 constructed with the 64-bit seed
//    (the engine's output sequence is fixed by the C++ standard);
//  - Uniform01() = (bits >> 11) * 2^-53, in [0, 1);
//  - UniformIndex(n) rejects raw draws >= the largest multiple of n, then
//    takes the remainder;
//  - Gaussian() is Box-Muller, cosine branch only, one standard normal per
//    two uniforms: sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
// std:: distributions are deliberately not used since their algorithms are
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  uint64_t UniformIndex(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  double Gaussian() {
    const double u1 = Uniform01();
    const double u2 = Uniform01();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive independent sub-seeds.
inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ stream);
}

}  // namespace nccoreset

#endif  // NCCORESET_CORE_RNG_H_
