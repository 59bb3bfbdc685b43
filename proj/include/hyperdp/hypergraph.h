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

#ifndef HYPERDP_HYPERGRAPH_H_
#define HYPERDP_HYPERGRAPH_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hyperdp/combinatorics.h"

namespace hyperdp {

// An h-uniform hypergraph on vertices {0, ..., n-1}. Hyperedges are stored
// as colexicographic ranks (see SubsetCodec).
class Hypergraph {
 public:
  // Empty hypergraph. Requires h >= 2 and n >= h.
  static absl::StatusOr<Hypergraph> Create(int n, int h);
  static absl::StatusOr<Hypergraph> FromEdges(
      int n, int h, const std::vector<std::vector<int>>& edges);
  // Every h-subset present.
  static absl::StatusOr<Hypergraph> Complete(int n, int h);

  int n() const { return codec_->n(); }
  int h() const { return codec_->h(); }
  const SubsetCodec& codec() const { return *codec_; }
  uint64_t universe_size() const { return codec_->universe_size(); }
  size_t num_edges() const { return edges_.size(); }
  const absl::flat_hash_set<uint64_t>& ranks() const { return edges_; }

  bool Contains(uint64_t rank) const { return edges_.contains(rank); }

  // Idempotent. Errors on invalid vertices or ranks.
  absl::Status AddEdge(absl::Span<const int> vertices);
  absl::Status AddRank(uint64_t rank);
  // Returns whether the edge was present.
  bool RemoveRank(uint64_t rank) { return edges_.erase(rank) > 0; }
  absl::Status ToggleRank(uint64_t rank);

  std::vector<uint64_t> SortedRanks() const;
  // Vertex tuples sorted lexicographically.
  std::vector<std::vector<int>> SortedEdges() const;

  bool SameShape(const Hypergraph& other) const {
    return n() == other.n() && h() == other.h();
  }
  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.SameShape(b) && a.edges_ == b.edges_;
  }

 private:
  explicit Hypergraph(std::shared_ptr<const SubsetCodec> codec)
      : codec_(std::move(codec)) {}

  std::shared_ptr<const SubsetCodec> codec_;
  absl::flat_hash_set<uint64_t> edges_;
};

// A +/-1 community assignment.
class Labeling {
 public:
  static absl::StatusOr<Labeling> Create(const std::vector<int>& labels);
  // Vertex i gets +1 iff bit i of `plus_mask` is set. Requires n <= 64.
  static Labeling FromPlusMask(uint64_t plus_mask, int n);

  int size() const { return static_cast<int>(labels_.size()); }
  int operator[](int i) const { return labels_[i]; }
  const std::vector<int8_t>& labels() const { return labels_; }

  int CountPositive() const;
  bool IsBalanced() const { return 2 * CountPositive() == size(); }
  Labeling Negated() const;
  // Representative of {sigma, -sigma} with vertex 0 labelled +1.
  Labeling Canonical() const;
  uint64_t PlusMask() const;  // requires size() <= 64
  std::vector<int> ToVector() const {
    return std::vector<int>(labels_.begin(), labels_.end());
  }

  friend bool operator==(const Labeling& a, const Labeling& b) {
    return a.labels_ == b.labels_;
  }
  // Lexicographic order with -1 < +1. Used for every deterministic tie-break.
  friend bool operator<(const Labeling& a, const Labeling& b) {
    return a.labels_ < b.labels_;
  }

 private:
  explicit Labeling(std::vector<int8_t> labels) : labels_(std::move(labels)) {}

  std::vector<int8_t> labels_;
};

// Number of hyperedges whose vertices do not all share one label.
absl::StatusOr<uint64_t> CountCrossCluster(const Hypergraph& graph,
                                           const Labeling& sigma);

// C(n_plus, h) + C(n_minus, h): the number of potential in-cluster
// hyperedges.
absl::StatusOr<uint64_t> MonochromaticCapacity(uint64_t n_plus,
                                               uint64_t n_minus, int h);

absl::StatusOr<uint64_t> SymmetricDifferenceSize(const Hypergraph& a,
                                                 const Hypergraph& b);

// True iff the subset with vertex mask `edge_mask` is monochromatic under
// the labeling whose +1 vertices are `plus_mask`.
inline bool IsMonochromatic(uint64_t edge_mask, uint64_t plus_mask) {
  uint64_t inside = edge_mask & plus_mask;
  return inside == 0 || inside == edge_mask;
}

}  // namespace hyperdp

#endif  // HYPERDP_HYPERGRAPH_H_
