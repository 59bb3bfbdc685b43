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

#ifndef HYPERDP_COMBINATORICS_H_
#define HYPERDP_COMBINATORICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"

namespace hyperdp {

// 128-bit unsigned count. Every C(n, k) with n <= 128 fits.
using WideCount = unsigned __int128;

// Exact binomial coefficient. Returns 0 when k > n and an OutOfRange error
// when the value does not fit in 128 bits.
absl::StatusOr<WideCount> Binom(uint64_t n, uint64_t k);

// Binom narrowed to 64 bits; OutOfRange when the value does not fit.
absl::StatusOr<uint64_t> Binom64(uint64_t n, uint64_t k);

std::string WideCountToString(WideCount value);

// Ranks h-subsets of {0, ..., n-1} in colexicographic order:
//   rank(v_0 < v_1 < ... < v_{h-1}) = sum_i C(v_i, i + 1).
// The rank of a subset does not depend on n, so a subset of a prefix
// {0, ..., m-1} keeps its rank when embedded in a larger vertex set.
class SubsetCodec {
 public:
  // Fails when h < 1, n < h, or C(n, h) >= 2^63.
  static absl::StatusOr<SubsetCodec> Create(int n, int h);

  int n() const { return n_; }
  int h() const { return h_; }
  // C(n, h).
  uint64_t universe_size() const { return universe_size_; }

  // C(v, j) for 0 <= v <= n, 0 <= j <= h.
  uint64_t Binomial(int v, int j) const {
    return table_[static_cast<size_t>(v) * (h_ + 1) + j];
  }

  // OK iff `vertices` has h strictly increasing entries in [0, n).
  absl::Status Validate(absl::Span<const int> vertices) const;

  // Unchecked fast paths; callers validate first.
  uint64_t Rank(absl::Span<const int> vertices) const;
  void Unrank(uint64_t rank, absl::Span<int> out) const;

  // Checked variants.
  absl::StatusOr<uint64_t> RankChecked(absl::Span<const int> vertices) const;
  absl::StatusOr<std::vector<int>> UnrankChecked(uint64_t rank) const;

  // Bitmask of the subset's vertices; requires n <= 64.
  uint64_t VertexMask(uint64_t rank) const;

 private:
  SubsetCodec(int n, int h, std::vector<uint64_t> table);

  int n_;
  int h_;
  uint64_t universe_size_;
  std::vector<uint64_t> table_;
};

absl::StatusOr<uint64_t> RankSubset(absl::Span<const int> vertices, int n);
absl::StatusOr<std::vector<int>> UnrankSubset(uint64_t rank, int n, int h);

}  // namespace hyperdp

#endif  // HYPERDP_COMBINATORICS_H_
