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

#ifndef HYPERDP_LABEL_SPACE_H_
#define HYPERDP_LABEL_SPACE_H_

#include <bit>
#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/hypergraph.h"

namespace hyperdp {

// Sets of labelings searched or sampled by the exhaustive estimators and
// mechanisms. Only canonical representatives (vertex 0 labelled +1) are
// enumerated, one per {sigma, -sigma} pair.
enum class LabelSpace {
  // n/2 vertices per community; n must be even.
  kBalanced,
  // Community sizes floor(n/2) and ceil(n/2); equals kBalanced for even n.
  kNearBalanced,
  // Every labeling.
  kAll,
};

absl::StatusOr<LabelSpace> ParseLabelSpace(std::string_view name);
std::string_view LabelSpaceName(LabelSpace space);

inline constexpr int kDefaultExhaustiveCap = 20;

// Canonical plus-masks of `space`, in increasing lexicographic order of the
// +/-1 vectors (-1 < +1, vertex 0 most significant).
absl::StatusOr<std::vector<uint64_t>> EnumerateCanonicalMasks(
    int n, LabelSpace space, int max_n = kDefaultExhaustiveCap);

// Log-likelihood of a hypergraph with `edges` hyperedges, `cross` of them
// cross-cluster, under a labeling with `n_in` potential in-cluster
// hyperedges out of `universe`.
double LogLikelihoodFromCounts(uint64_t edges, uint64_t cross, uint64_t n_in,
                               uint64_t universe, double log_p,
                               double log_1mp, double log_q, double log_1mq);

// Bitmask view of a label space over a hyperedge universe of at most 64
// potential hyperedges: hypergraphs are 64-bit masks over colex ranks, and
// each canonical labeling carries the mask of ranks that are cross-cluster
// under it. Backs every exhaustive search over hypergraph families.
class SmallUniverse {
 public:
  static constexpr int kMaxUniverse = 64;

  static absl::StatusOr<SmallUniverse> Create(int n, int h, LabelSpace space);

  int n() const { return n_; }
  int h() const { return h_; }
  LabelSpace space() const { return space_; }
  int universe() const { return universe_; }
  uint64_t full_mask() const {
    return universe_ == 64 ? ~uint64_t{0} : (uint64_t{1} << universe_) - 1;
  }
  size_t num_labelings() const { return plus_masks_.size(); }
  uint64_t plus_mask(size_t j) const { return plus_masks_[j]; }
  uint64_t cross_mask(size_t j) const { return cross_masks_[j]; }
  uint64_t capacity(size_t j) const { return capacities_[j]; }
  Labeling labeling(size_t j) const {
    return Labeling::FromPlusMask(plus_masks_[j], n_);
  }
  // Index of a labeling up to sign; NotFound if it lies outside the space.
  absl::StatusOr<size_t> IndexOf(const Labeling& sigma) const;

  int Psi(uint64_t graph, size_t j) const {
    return std::popcount(graph & cross_masks_[j]);
  }
  double LogLikelihood(uint64_t graph, size_t j, const ModelParams& p) const;

  // Lexicographically first maximizer of the likelihood.
  size_t MaximumLikelihood(uint64_t graph, const ModelParams& params) const;
  struct Maximizer {
    size_t index = 0;
    // False when another labeling attains the same likelihood.
    bool unique = true;
  };
  Maximizer MaximumLikelihoodWithTies(uint64_t graph,
                                      const ModelParams& params) const;
  // Lexicographically first minimizer of the cross-cluster count.
  size_t MinimumCrossCluster(uint64_t graph) const;

  absl::StatusOr<uint64_t> ToMask(const Hypergraph& graph) const;
  Hypergraph FromMask(uint64_t mask) const;

 private:
  SmallUniverse() = default;

  int n_ = 0;
  int h_ = 0;
  LabelSpace space_ = LabelSpace::kBalanced;
  int universe_ = 0;
  std::vector<uint64_t> plus_masks_;
  std::vector<uint64_t> cross_masks_;
  std::vector<uint64_t> capacities_;
  std::vector<uint64_t> edge_vertex_masks_;
};

}  // namespace hyperdp

#endif  // HYPERDP_LABEL_SPACE_H_
