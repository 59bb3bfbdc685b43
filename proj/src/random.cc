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

#include "hyperdp/random.h"

namespace hyperdp {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t state = SplitMix64(master);
  for (uint64_t element : path) {
    state = SplitMix64(state ^ SplitMix64(element + 0x632be59bd9b4e019ULL));
  }
  return state;
}

uint64_t Rng::UniformInt(uint64_t bound) {
  // Rejection on the largest multiple of bound below 2^64.
  const uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

double Rng::UniformDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::Binomial(uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<uint64_t> dist(trials, p);
  return dist(engine_);
}

}  // namespace hyperdp
