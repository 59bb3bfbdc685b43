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

#include "hyperdp/hypergraph.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_cat.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {

absl::StatusOr<Hypergraph> Hypergraph::Create(int n, int h) {
  if (h < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("uniformity h must be >= 2, got ", h));
  }
  HYPERDP_ASSIGN_OR_RETURN(SubsetCodec codec, SubsetCodec::Create(n, h));
  return Hypergraph(std::make_shared<const SubsetCodec>(std::move(codec)));
}

absl::StatusOr<Hypergraph> Hypergraph::FromEdges(
    int n, int h, const std::vector<std::vector<int>>& edges) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph, Create(n, h));
  for (const auto& edge : edges) {
    HYPERDP_RETURN_IF_ERROR(graph.AddEdge(edge));
  }
  return graph;
}

absl::StatusOr<Hypergraph> Hypergraph::Complete(int n, int h) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph, Create(n, h));
  graph.edges_.reserve(graph.universe_size());
  for (uint64_t r = 0; r < graph.universe_size(); ++r) graph.edges_.insert(r);
  return graph;
}

absl::Status Hypergraph::AddEdge(absl::Span<const int> vertices) {
  HYPERDP_ASSIGN_OR_RETURN(uint64_t rank, codec_->RankChecked(vertices));
  edges_.insert(rank);
  return absl::OkStatus();
}

absl::Status Hypergraph::AddRank(uint64_t rank) {
  if (rank >= universe_size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "hyperedge rank ", rank, " out of range [0, ", universe_size(), ")"));
  }
  edges_.insert(rank);
  return absl::OkStatus();
}

absl::Status Hypergraph::ToggleRank(uint64_t rank) {
  if (RemoveRank(rank)) return absl::OkStatus();
  return AddRank(rank);
}

std::vector<uint64_t> Hypergraph::SortedRanks() const {
  std::vector<uint64_t> out(edges_.begin(), edges_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> Hypergraph::SortedEdges() const {
  std::vector<std::vector<int>> out;
  out.reserve(edges_.size());
  for (uint64_t rank : edges_) {
    std::vector<int> vertices(h());
    codec_->Unrank(rank, absl::MakeSpan(vertices));
    out.push_back(std::move(vertices));
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<Labeling> Labeling::Create(const std::vector<int>& labels) {
  std::vector<int8_t> out;
  out.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label at vertex ", i, " is ", labels[i], ", expected +1 or -1"));
    }
    out.push_back(static_cast<int8_t>(labels[i]));
  }
  return Labeling(std::move(out));
}

Labeling Labeling::FromPlusMask(uint64_t plus_mask, int n) {
  std::vector<int8_t> out(n);
  for (int i = 0; i < n; ++i) out[i] = ((plus_mask >> i) & 1) ? 1 : -1;
  return Labeling(std::move(out));
}

int Labeling::CountPositive() const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), 1));
}

Labeling Labeling::Negated() const {
  std::vector<int8_t> out(labels_);
  for (auto& v : out) v = static_cast<int8_t>(-v);
  return Labeling(std::move(out));
}

Labeling Labeling::Canonical() const {
  if (labels_.empty() || labels_[0] == 1) return *this;
  return Negated();
}

uint64_t Labeling::PlusMask() const {
  uint64_t mask = 0;
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == 1) mask |= uint64_t{1} << i;
  }
  return mask;
}

absl::StatusOr<uint64_t> CountCrossCluster(const Hypergraph& graph,
                                           const Labeling& sigma) {
  if (sigma.size() != graph.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("labeling has length ", sigma.size(),
                     " but the hypergraph has ", graph.n(), " vertices"));
  }
  std::vector<int> vertices(graph.h());
  uint64_t cross = 0;
  for (uint64_t rank : graph.ranks()) {
    graph.codec().Unrank(rank, absl::MakeSpan(vertices));
    int first = sigma[vertices[0]];
    for (int i = 1; i < graph.h(); ++i) {
      if (sigma[vertices[i]] != first) {
        ++cross;
        break;
      }
    }
  }
  return cross;
}

absl::StatusOr<uint64_t> MonochromaticCapacity(uint64_t n_plus,
                                               uint64_t n_minus, int h) {
  HYPERDP_ASSIGN_OR_RETURN(uint64_t plus, Binom64(n_plus, h));
  HYPERDP_ASSIGN_OR_RETURN(uint64_t minus, Binom64(n_minus, h));
  uint64_t total;
  if (__builtin_add_overflow(plus, minus, &total)) {
    return absl::OutOfRangeError("monochromatic capacity overflows 64 bits");
  }
  return total;
}

absl::StatusOr<uint64_t> SymmetricDifferenceSize(const Hypergraph& a,
                                                 const Hypergraph& b) {
  if (!a.SameShape(b)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "shape mismatch: (n=", a.n(), ", h=", a.h(), ") vs (n=", b.n(),
        ", h=", b.h(), ")"));
  }
  const Hypergraph& small = a.num_edges() <= b.num_edges() ? a : b;
  const Hypergraph& large = a.num_edges() <= b.num_edges() ? b : a;
  uint64_t common = 0;
  for (uint64_t rank : small.ranks()) common += large.Contains(rank) ? 1 : 0;
  return (small.num_edges() - common) + (large.num_edges() - common);
}

}  // namespace hyperdp
