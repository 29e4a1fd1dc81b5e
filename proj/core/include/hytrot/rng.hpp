// Copyright (c) the hytrot contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace hytrot {

/// SplitMix64: a counter-style 64-bit generator (Steele, Lea & Flood 2014).
///
/// The generator is fully specified here so that any run is reproducible
/// bit-for-bit from its seed on any platform:
///   state_{k+1} = state_k + 0x9E3779B97F4A7C15
///   output_k    = mix(state_{k+1})
/// with mix(z) = the two xor-shift-multiply rounds below. Doubles are formed
/// from the top 53 bits, so draws never depend on libc or libstdc++ details.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_double() - 1.0; }

  /// Uniform integer in [0, bound), unbiased (rejection sampling).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Derives the generator for an independent stream. Stream i of base seed
  /// s is seeded with mix(s XOR mix(i + 1)), where mix is one SplitMix64
  /// output step. Trajectory i of an ensemble uses stream i, making
  /// ensembles order-independent and safe to evaluate concurrently.
  static SplitMix64 for_stream(std::uint64_t base_seed, std::uint64_t stream) {
    SplitMix64 a(stream + 1);
    SplitMix64 b(base_seed ^ a.next_u64());
    return SplitMix64(b.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace hytrot
