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

#include "swap_search.h"

#include <algorithm>

namespace hyperdp::internal {

SwapEvaluator::SwapEvaluator(const Hypergraph& graph, const Labeling& sigma)
    : n_(graph.n()),
      h_(graph.h()),
      incident_(graph.n()),
      labels_(sigma.labels()) {
  std::vector<int> vertices(h_);
  const std::vector<uint64_t> ranks = graph.SortedRanks();
  edge_vertices_.reserve(ranks.size() * h_);
  plus_count_.reserve(ranks.size());
  for (uint64_t r : ranks) {
    graph.codec().Unrank(r, absl::MakeSpan(vertices));
    const int e = static_cast<int>(plus_count_.size());
    int plus = 0;
    for (int v : vertices) {
      edge_vertices_.push_back(v);
      incident_[v].push_back(e);
      plus += labels_[v] > 0;
    }
    plus_count_.push_back(plus);
    cross_ += IsCross(plus);
  }
}

bool SwapEvaluator::EdgeHas(int e, int v) const {
  const int* begin = edge_vertices_.data() + static_cast<size_t>(e) * h_;
  return std::binary_search(begin, begin + h_, v);
}

int64_t SwapEvaluator::SwapDelta(int u, int v) const {
  // The vertex currently labelled +1 loses its sign, the other gains it;
  // edges holding both keep their plus count.
  const int plus_vertex = labels_[u] > 0 ? u : v;
  const int minus_vertex = plus_vertex == u ? v : u;
  int64_t delta = 0;
  for (int e : incident_[plus_vertex]) {
    if (EdgeHas(e, minus_vertex)) continue;
    delta += IsCross(plus_count_[e] - 1) - IsCross(plus_count_[e]);
  }
  for (int e : incident_[minus_vertex]) {
    if (EdgeHas(e, plus_vertex)) continue;
    delta += IsCross(plus_count_[e] + 1) - IsCross(plus_count_[e]);
  }
  return delta;
}

void SwapEvaluator::ApplySwap(int u, int v) {
  const int plus_vertex = labels_[u] > 0 ? u : v;
  const int minus_vertex = plus_vertex == u ? v : u;
  cross_ += SwapDelta(u, v);
  for (int e : incident_[plus_vertex]) {
    if (!EdgeHas(e, minus_vertex)) --plus_count_[e];
  }
  for (int e : incident_[minus_vertex]) {
    if (!EdgeHas(e, plus_vertex)) ++plus_count_[e];
  }
  labels_[plus_vertex] = -1;
  labels_[minus_vertex] = 1;
}

SwapEvaluator::Move SwapEvaluator::BestSwap() const {
  Move best;
  for (int u = 0; u < n_; ++u) {
    if (labels_[u] < 0) continue;
    for (int v = 0; v < n_; ++v) {
      if (labels_[v] > 0) continue;
      const int64_t delta = SwapDelta(u, v);
      if (best.u < 0 || delta < best.delta) best = {u, v, delta};
    }
  }
  return best;
}

int DescendBySwaps(SwapEvaluator& evaluator, int max_moves) {
  int moves = 0;
  while (moves < max_moves) {
    SwapEvaluator::Move move = evaluator.BestSwap();
    if (move.u < 0 || move.delta >= 0) break;
    evaluator.ApplySwap(move.u, move.v);
    ++moves;
  }
  return moves;
}

}  // namespace hyperdp::internal
