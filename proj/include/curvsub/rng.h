// Copyright 2026 The Authors.
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

#ifndef CURVSUB_RNG_H_
#define CURVSUB_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

#include "curvsub/subset.h"

namespace curvsub {

// SplitMix64 finalizer; used to derive independent stream seeds.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for stream (a, b, c): Mix64(Mix64(Mix64(a) ^ b) ^ c).
inline uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b = 0) {
  return Mix64(Mix64(Mix64(base) ^ a) ^ b);
}

// mt19937_64 plus distribution helpers that do not depend on the standard
// library's implementation-defined distributions, so streams are identical
// across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double UniformDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform in [0, bound), bound >= 1.
  uint64_t UniformInt(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * UniformDouble();
  }
  bool Bernoulli(double p) { return UniformDouble() < p; }

  // Each element independently with probability p.
  Subset ProductSubset(int n, double p) {
    Subset s(n);
    for (int j = 0; j < n; ++j) {
      if (Bernoulli(p)) s.insert(j);
    }
    return s;
  }
  // Uniform over all 2^n subsets.
  Subset UniformSubset(int n) {
    Subset s(n);
    uint64_t word = 0;
    for (int j = 0; j < n; ++j) {
      if (j % 64 == 0) word = engine_();
      if ((word >> (j % 64)) & 1) s.insert(j);
    }
    return s;
  }
  // k distinct elements, uniformly without replacement.
  Subset SampleWithoutReplacement(int n, int k) {
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    Subset s(n);
    for (int i = 0; i < k; ++i) {
      const int pick = i + static_cast<int>(UniformInt(n - i));
      std::swap(perm[i], perm[pick]);
      s.insert(perm[i]);
    }
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace curvsub

#endif  // CURVSUB_RNG_H_
