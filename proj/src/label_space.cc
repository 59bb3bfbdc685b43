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

#include "hyperdp/label_space.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {
namespace {

// Key whose integer order is the lexicographic order of the labeling.
uint64_t LexKey(uint64_t plus_mask, int n) {
  uint64_t key = 0;
  for (int i = 0; i < n; ++i) key = (key << 1) | ((plus_mask >> i) & 1);
  return key;
}

// All masks over bits 1..n-1 with exactly `k` bits set, shifted by one.
void AppendSubsetsOfRest(int n, int k, std::vector<uint64_t>& out) {
  const int m = n - 1;
  if (k < 0 || k > m) return;
  if (k == 0) {
    out.push_back(1);
    return;
  }
  uint64_t x = (uint64_t{1} << k) - 1;
  const uint64_t limit = uint64_t{1} << m;
  while (x < limit) {
    out.push_back((x << 1) | 1);
    // Gosper's hack: next integer with the same popcount.
    uint64_t c = x & -x;
    uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

}  // namespace

absl::StatusOr<LabelSpace> ParseLabelSpace(std::string_view name) {
  if (name == "balanced") return LabelSpace::kBalanced;
  if (name == "near_balanced") return LabelSpace::kNearBalanced;
  if (name == "all") return LabelSpace::kAll;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown label space '", std::string(name),
                   "' (expected balanced, near_balanced or all)"));
}

std::string_view LabelSpaceName(LabelSpace space) {
  switch (space) {
    case LabelSpace::kBalanced:
      return "balanced";
    case LabelSpace::kNearBalanced:
      return "near_balanced";
    case LabelSpace::kAll:
      return "all";
  }
  return "unknown";
}

absl::StatusOr<std::vector<uint64_t>> EnumerateCanonicalMasks(
    int n, LabelSpace space, int max_n) {
  if (n < 2) return absl::InvalidArgumentError("label space needs n >= 2");
  if (n > max_n || n > 63) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exhaustive label enumeration capped at n = ", std::min(max_n, 63),
        ", got n = ", n));
  }
  std::vector<uint64_t> masks;
  switch (space) {
    case LabelSpace::kBalanced:
      if (n % 2 != 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("balanced label space needs even n, got ", n));
      }
      AppendSubsetsOfRest(n, n / 2 - 1, masks);
      break;
    case LabelSpace::kNearBalanced:
      AppendSubsetsOfRest(n, n / 2 - 1, masks);
      if (n % 2 != 0) AppendSubsetsOfRest(n, n / 2, masks);
      break;
    case LabelSpace::kAll:
      for (int k = 0; k <= n - 1; ++k) AppendSubsetsOfRest(n, k, masks);
      break;
  }
  std::sort(masks.begin(), masks.end(), [n](uint64_t x, uint64_t y) {
    return LexKey(x, n) < LexKey(y, n);
  });
  return masks;
}

double LogLikelihoodFromCounts(uint64_t edges, uint64_t cross, uint64_t n_in,
                               uint64_t universe, double log_p,
                               double log_1mp, double log_q, double log_1mq) {
  const double e_in = static_cast<double>(edges - cross);
  const double e_cr = static_cast<double>(cross);
  const double n_cr = static_cast<double>(universe - n_in);
  return e_in * log_p + (static_cast<double>(n_in) - e_in) * log_1mp +
         e_cr * log_q + (n_cr - e_cr) * log_1mq;
}

absl::StatusOr<SmallUniverse> SmallUniverse::Create(int n, int h,
                                                    LabelSpace space) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph probe, Hypergraph::Create(n, h));
  if (probe.universe_size() > static_cast<uint64_t>(kMaxUniverse)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("C(", n, ", ", h, ") = ", probe.universe_size(),
                     " potential hyperedges exceeds the exhaustive cap of ",
                     kMaxUniverse));
  }
  SmallUniverse u;
  u.n_ = n;
  u.h_ = h;
  u.space_ = space;
  u.universe_ = static_cast<int>(probe.universe_size());
  HYPERDP_ASSIGN_OR_RETURN(u.plus_masks_,
                           EnumerateCanonicalMasks(n, space, 63));
  for (int r = 0; r < u.universe_; ++r) {
    u.edge_vertex_masks_.push_back(probe.codec().VertexMask(r));
  }
  for (uint64_t plus : u.plus_masks_) {
    uint64_t cross = 0;
    for (int r = 0; r < u.universe_; ++r) {
      if (!IsMonochromatic(u.edge_vertex_masks_[r], plus)) {
        cross |= uint64_t{1} << r;
      }
    }
    u.cross_masks_.push_back(cross);
    u.capacities_.push_back(static_cast<uint64_t>(u.universe_) -
                            std::popcount(cross));
  }
  return u;
}

absl::StatusOr<size_t> SmallUniverse::IndexOf(const Labeling& sigma) const {
  if (sigma.size() != n_) {
    return absl::InvalidArgumentError("labeling length mismatch");
  }
  const uint64_t plus = sigma.Canonical().PlusMask();
  auto it = std::find(plus_masks_.begin(), plus_masks_.end(), plus);
  if (it == plus_masks_.end()) {
    return absl::NotFoundError("labeling is outside the label space");
  }
  return static_cast<size_t>(it - plus_masks_.begin());
}

double SmallUniverse::LogLikelihood(uint64_t graph, size_t j,
                                    const ModelParams& p) const {
  return LogLikelihoodFromCounts(std::popcount(graph), Psi(graph, j),
                                 capacities_[j], universe_, std::log(p.p),
                                 std::log1p(-p.p), std::log(p.q),
                                 std::log1p(-p.q));
}

size_t SmallUniverse::MaximumLikelihood(uint64_t graph,
                                        const ModelParams& params) const {
  return MaximumLikelihoodWithTies(graph, params).index;
}

SmallUniverse::Maximizer SmallUniverse::MaximumLikelihoodWithTies(
    uint64_t graph, const ModelParams& params) const {
  const double lp = std::log(params.p), l1p = std::log1p(-params.p);
  const double lq = std::log(params.q), l1q = std::log1p(-params.q);
  const uint64_t edges = std::popcount(graph);
  Maximizer best;
  double best_value = 0.0;
  for (size_t j = 0; j < plus_masks_.size(); ++j) {
    double value = LogLikelihoodFromCounts(edges, Psi(graph, j),
                                           capacities_[j], universe_, lp, l1p,
                                           lq, l1q);
    if (j == 0 || value > best_value) {
      best = {j, true};
      best_value = value;
    } else if (value == best_value) {
      best.unique = false;
    }
  }
  return best;
}

size_t SmallUniverse::MinimumCrossCluster(uint64_t graph) const {
  size_t best = 0;
  int best_value = Psi(graph, 0);
  for (size_t j = 1; j < plus_masks_.size(); ++j) {
    int value = Psi(graph, j);
    if (value < best_value) {
      best = j;
      best_value = value;
    }
  }
  return best;
}

absl::StatusOr<uint64_t> SmallUniverse::ToMask(const Hypergraph& graph) const {
  if (graph.n() != n_ || graph.h() != h_) {
    return absl::InvalidArgumentError("hypergraph shape mismatch");
  }
  uint64_t mask = 0;
  for (uint64_t r : graph.ranks()) mask |= uint64_t{1} << r;
  return mask;
}

Hypergraph SmallUniverse::FromMask(uint64_t mask) const {
  Hypergraph graph = *Hypergraph::Create(n_, h_);
  for (int r = 0; r < universe_; ++r) {
    if ((mask >> r) & 1) graph.AddRank(r).IgnoreError();
  }
  return graph;
}

}  // namespace hyperdp
