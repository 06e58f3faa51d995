// Copyright 2026 The R3D2 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef R3D2_RNG_H_
#define R3D2_RNG_H_

#include <cstdint>
#include <limits>

namespace r3d2 {

// SplitMix64 (Steele, Lea, Flood 2014). Fixed algorithm so that shuffles,
// epsilon draws and derived seeds reproduce bit-for-bit across platforms and
// implementations. Version 1; any change to the update or bound functions
// must bump the checkpoint/replay-log format version.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n) by rejection on the modulus tail.
  uint64_t NextBelow(uint64_t n) {
    for (;;) {
      uint64_t x = Next();
      uint64_t r = x % n;
      if (x - r <= std::numeric_limits<uint64_t>::max() - (n - 1)) return r;
    }
  }

  // Uniform double in [0, 1) with 53 bits of mantissa.
  double NextDouble() { return (Next() >> 11) * 0x1.0p-53; }

  // Independent child stream; used to hand each actor/game its own RNG.
  SplitMix64 Split() { return SplitMix64(Next()); }

  // Stateless seed derivation, e.g. per-game seeds from a master seed.
  static uint64_t Derive(uint64_t seed, uint64_t index) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return rng.Next();
  }

 private:
  uint64_t state_;
};

}  // namespace r3d2

#endif  // R3D2_RNG_H_
