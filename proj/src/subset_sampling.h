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

#ifndef HYPERDP_SRC_SUBSET_SAMPLING_H_
#define HYPERDP_SRC_SUBSET_SAMPLING_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "hyperdp/random.h"

namespace hyperdp::internal {

// Classes larger than this are never materialized.
inline constexpr uint64_t kMaxEnumeratedClass = uint64_t{1} << 26;

// Chooses `count` distinct members uniformly from a class of `class_size`
// ranks. `draw(rng)` must return a uniform class member; `for_each(fn)` must
// call fn on every member in a fixed order. Dense selections, or classes
// where `draw` would reject too often, go through a partial Fisher-Yates
// shuffle of the materialized class.
template <typename Draw, typename ForEach>
std::vector<uint64_t> ChooseDistinct(Rng& rng, uint64_t count,
                                     uint64_t class_size,
                                     bool draw_is_cheap, Draw draw,
                                     ForEach for_each) {
  std::vector<uint64_t> chosen;
  if (count == 0) return chosen;
  const bool dense = count > class_size / 2 || !draw_is_cheap;
  if (dense && class_size <= kMaxEnumeratedClass) {
    std::vector<uint64_t> members;
    members.reserve(class_size);
    for_each([&members](uint64_t rank) { members.push_back(rank); });
    for (uint64_t i = 0; i < count; ++i) {
      uint64_t j = i + rng.UniformInt(members.size() - i);
      std::swap(members[i], members[j]);
    }
    members.resize(count);
    return members;
  }
  absl::flat_hash_set<uint64_t> seen;
  seen.reserve(count);
  chosen.reserve(count);
  while (chosen.size() < count) {
    uint64_t rank = draw(rng);
    if (seen.insert(rank).second) chosen.push_back(rank);
  }
  return chosen;
}

}  // namespace hyperdp::internal

#endif  // HYPERDP_SRC_SUBSET_SAMPLING_H_
