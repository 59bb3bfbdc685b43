// Copyright 2026 The HyperDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERDP_RANDOM_H_
#define HYPERDP_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hyperdp {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
uint64_t SplitMix64(uint64_t x);

// Stable seed derivation: folds each path element into the running state as
// state = SplitMix64(state ^ SplitMix64(element + golden)). Identical inputs
// give identical seeds on every platform.
uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path);

struct Seed {
  uint64_t master = 0;
  uint64_t stream = 0;
};

// mt19937_64 seeded from a derived 64-bit value. The uniform helpers below
// are spelled out so the drawn values do not depend on the standard
// library's distribution implementations; Binomial() delegates to
// std::binomial_distribution.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}
  explicit Rng(Seed seed) : Rng(DeriveSeed(seed.master, {seed.stream})) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, bound); bound > 0.
  uint64_t UniformInt(uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double UniformDouble();
  bool Bernoulli(double p) { return UniformDouble() < p; }
  uint64_t Binomial(uint64_t trials, double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyperdp

#endif  // HYPERDP_RANDOM_H_
