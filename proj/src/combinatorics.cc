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

#include "hyperdp/combinatorics.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hyperdp {
namespace {

WideCount Gcd(WideCount a, WideCount b) {
  while (b != 0) {
    WideCount r = a % b;
    a = b;
    b = r;
  }
  return a;
}

constexpr uint64_t kMaxUniverse = uint64_t{1} << 63;

}  // namespace

absl::StatusOr<WideCount> Binom(uint64_t n, uint64_t k) {
  if (k > n) return WideCount{0};
  k = std::min(k, n - k);
  WideCount result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i, reduced first so that only the final value
    // has to fit.
    WideCount factor = n - k + i;
    WideCount divisor = i;
    WideCount g = Gcd(result, divisor);
    result /= g;
    divisor /= g;
    factor /= divisor;
    WideCount product;
    if (__builtin_mul_overflow(result, factor, &product)) {
      return absl::OutOfRangeError(
          absl::StrCat("binomial coefficient C(", n, ", ", k,
                       ") exceeds 128-bit range"));
    }
    result = product;
  }
  return result;
}

absl::StatusOr<uint64_t> Binom64(uint64_t n, uint64_t k) {
  auto wide = Binom(n, k);
  if (!wide.ok()) return wide.status();
  if (*wide > std::numeric_limits<uint64_t>::max()) {
    return absl::OutOfRangeError(absl::StrCat(
        "binomial coefficient C(", n, ", ", k, ") exceeds 64-bit range"));
  }
  return static_cast<uint64_t>(*wide);
}

std::string WideCountToString(WideCount value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

SubsetCodec::SubsetCodec(int n, int h, std::vector<uint64_t> table)
    : n_(n), h_(h), table_(std::move(table)) {
  universe_size_ = Binomial(n, h);
}

absl::StatusOr<SubsetCodec> SubsetCodec::Create(int n, int h) {
  if (h < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("uniformity h must be >= 1, got ", h));
  }
  if (n < h) {
    return absl::InvalidArgumentError(
        absl::StrCat("vertex count n = ", n, " is smaller than h = ", h));
  }
  auto universe = Binom(n, h);
  if (!universe.ok()) return universe.status();
  if (*universe >= kMaxUniverse) {
    return absl::OutOfRangeError(absl::StrCat(
        "C(", n, ", ", h, ") is too large for 63-bit hyperedge ranks"));
  }
  // Entries may exceed C(n, h) when h > n/2; creation fails if one overflows.
  std::vector<uint64_t> table(static_cast<size_t>(n + 1) * (h + 1));
  for (int v = 0; v <= n; ++v) {
    for (int j = 0; j <= h; ++j) {
      auto c = Binom64(v, j);
      if (!c.ok()) return c.status();
      table[static_cast<size_t>(v) * (h + 1) + j] = *c;
    }
  }
  return SubsetCodec(n, h, std::move(table));
}

absl::Status SubsetCodec::Validate(absl::Span<const int> vertices) const {
  if (static_cast<int>(vertices.size()) != h_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "hyperedge has ", vertices.size(), " vertices, expected ", h_));
  }
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] >= n_) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vertex ", vertices[i], " out of range [0, ", n_, ")"));
    }
    if (i > 0 && vertices[i] <= vertices[i - 1]) {
      return absl::InvalidArgumentError(
          "hyperedge vertices must be strictly increasing");
    }
  }
  return absl::OkStatus();
}

uint64_t SubsetCodec::Rank(absl::Span<const int> vertices) const {
  uint64_t rank = 0;
  for (int i = 0; i < h_; ++i) rank += Binomial(vertices[i], i + 1);
  return rank;
}

void SubsetCodec::Unrank(uint64_t rank, absl::Span<int> out) const {
  int upper = n_;  // exclusive bound for the current vertex
  for (int i = h_ - 1; i >= 0; --i) {
    // Largest v in [i, upper) with C(v, i + 1) <= rank.
    int lo = i;
    int hi = upper - 1;
    while (lo < hi) {
      int mid = lo + (hi - lo + 1) / 2;
      if (Binomial(mid, i + 1) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    out[i] = lo;
    rank -= Binomial(lo, i + 1);
    upper = lo;
  }
}

absl::StatusOr<uint64_t> SubsetCodec::RankChecked(
    absl::Span<const int> vertices) const {
  absl::Status status = Validate(vertices);
  if (!status.ok()) return status;
  return Rank(vertices);
}

absl::StatusOr<std::vector<int>> SubsetCodec::UnrankChecked(
    uint64_t rank) const {
  if (rank >= universe_size_) {
    return absl::OutOfRangeError(absl::StrCat(
        "rank ", rank, " out of range [0, ", universe_size_, ")"));
  }
  std::vector<int> out(h_);
  Unrank(rank, absl::MakeSpan(out));
  return out;
}

uint64_t SubsetCodec::VertexMask(uint64_t rank) const {
  uint64_t mask = 0;
  int upper = n_;
  for (int i = h_ - 1; i >= 0; --i) {
    int lo = i;
    int hi = upper - 1;
    while (lo < hi) {
      int mid = lo + (hi - lo + 1) / 2;
      if (Binomial(mid, i + 1) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    mask |= uint64_t{1} << lo;
    rank -= Binomial(lo, i + 1);
    upper = lo;
  }
  return mask;
}

absl::StatusOr<uint64_t> RankSubset(absl::Span<const int> vertices, int n) {
  auto codec = SubsetCodec::Create(n, static_cast<int>(vertices.size()));
  if (!codec.ok()) return codec.status();
  return codec->RankChecked(vertices);
}

absl::StatusOr<std::vector<int>> UnrankSubset(uint64_t rank, int n, int h) {
  auto codec = SubsetCodec::Create(n, h);
  if (!codec.ok()) return codec.status();
  return codec->UnrankChecked(rank);
}

}  // namespace hyperdp
