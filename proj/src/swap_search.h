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

#ifndef HYPERDP_SRC_SWAP_SEARCH_H_
#define HYPERDP_SRC_SWAP_SEARCH_H_

#include <cstdint>
#include <vector>

#include "hyperdp/hypergraph.h"

namespace hyperdp::internal {

// Incremental cross-cluster bookkeeping for balanced moves that exchange one
// +1 vertex with one -1 vertex.
class SwapEvaluator {
 public:
  SwapEvaluator(const Hypergraph& graph, const Labeling& sigma);

  int64_t cross() const { return cross_; }
  const std::vector<int8_t>& labels() const { return labels_; }

  // Change in the cross-cluster count if u and v (opposite labels) swap.
  int64_t SwapDelta(int u, int v) const;
  void ApplySwap(int u, int v);

  struct Move {
    int u = -1;
    int v = -1;
    int64_t delta = 0;
  };
  // Smallest-delta swap; ties go to the smallest (u, v) with u labelled +1.
  // u = -1 when one side is empty.
  Move BestSwap() const;

 private:
  bool EdgeHas(int e, int v) const;
  bool IsCross(int plus_count) const { return plus_count > 0 && plus_count < h_; }

  int n_;
  int h_;
  std::vector<int> edge_vertices_;  // h_ entries per edge
  std::vector<std::vector<int>> incident_;
  std::vector<int> plus_count_;
  std::vector<int8_t> labels_;
  int64_t cross_ = 0;
};

// Repeatedly applies the best strictly improving swap, at most `max_moves`
// times. Returns the number of swaps applied.
int DescendBySwaps(SwapEvaluator& evaluator, int max_moves);

}  // namespace hyperdp::internal

#endif  // HYPERDP_SRC_SWAP_SEARCH_H_
