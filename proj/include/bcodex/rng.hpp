// Copyright 2026 The bcodex Authors
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

#ifndef BCODEX_RNG_HPP
#define BCODEX_RNG_HPP

#include <cmath>
#include <cstdint>

namespace bcodex {

// Counter-based randomness: every draw is a pure function of
// (seed, sample index, slot). Results are identical no matter how samples
// are chunked across worker threads, which is what makes Monte Carlo output
// byte-reproducible. std::normal_distribution is implementation-defined and
// therefore unusable here.

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic per-sample stream: draw(slot) never depends on call order.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t sample_index)
      : key_(splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (sample_index + 1)))) {}

  /// Uniform in the open interval (0, 1).
  double uniform(uint64_t slot) const {
    uint64_t bits = splitmix64(key_ + 0x694d6f6b2c3b4a31ULL * (slot + 1));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; slot s consumes uniforms (2s, 2s+1).
  double normal(uint64_t slot) const {
    double u1 = uniform(2 * slot);
    double u2 = uniform(2 * slot + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  uint64_t key_;
};

}  // namespace bcodex

#endif  // BCODEX_RNG_HPP
