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

#include "hyperdp/hsbm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "hyperdp/status_macros.h"
#include "subset_sampling.h"

namespace hyperdp {
namespace {

absl::Status CheckShape(int n, int h) {
  if (h < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("uniformity h must be >= 2, got ", h));
  }
  if (n < h) {
    return absl::InvalidArgumentError(
        absl::StrCat("n = ", n, " must be at least h = ", h));
  }
  return absl::OkStatus();
}

// Uniform h-subsets of one community, reported as global ranks.
class SideSampler {
 public:
  SideSampler(std::vector<int> vertices, const SubsetCodec& global, int h)
      : vertices_(std::move(vertices)), global_(global), h_(h) {
    auto local = SubsetCodec::Create(static_cast<int>(vertices_.size()), h);
    if (local.ok()) local_.emplace(std::move(*local));
  }

  uint64_t size() const { return local_ ? local_->universe_size() : 0; }

  uint64_t Draw(Rng& rng, std::vector<int>& scratch) const {
    return ToGlobal(rng.UniformInt(size()), scratch);
  }

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    std::vector<int> scratch(h_);
    for (uint64_t r = 0; r < size(); ++r) fn(ToGlobal(r, scratch));
  }

 private:
  uint64_t ToGlobal(uint64_t local_rank, std::vector<int>& scratch) const {
    scratch.resize(h_);
    local_->Unrank(local_rank, absl::MakeSpan(scratch));
    for (int& v : scratch) v = vertices_[v];
    return global_.Rank(scratch);
  }

  std::vector<int> vertices_;
  const SubsetCodec& global_;
  int h_;
  std::optional<SubsetCodec> local_;
};

}  // namespace

absl::StatusOr<double> DensityScale(int n, int h) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(n, h));
  if (n < 2) return absl::InvalidArgumentError("n must be at least 2");
  HYPERDP_ASSIGN_OR_RETURN(WideCount c, Binom(n - 1, h - 1));
  return static_cast<double>(c) / std::log(static_cast<double>(n));
}

absl::StatusOr<ModelParams> ModelParams::Create(int n, int h, double a,
                                                double b) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(n, h));
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need a >= b > 0 (assortative model), got a = ", a, ", b = ", b));
  }
  HYPERDP_ASSIGN_OR_RETURN(double scale, DensityScale(n, h));
  ModelParams params{n, h, a, b, a / scale, b / scale};
  if (params.p > 1.0 || params.q > 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "edge probabilities exceed 1: p = ", params.p, ", q = ", params.q,
        " (n = ", n, ", h = ", h, ", a = ", a, ", b = ", b, ")"));
  }
  return params;
}

absl::StatusOr<ModelParams> ModelParams::FromProbabilities(int n, int h,
                                                           double p,
                                                           double q) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(n, h));
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities must lie in [0, 1]: p = ", p, ", q = ", q));
  }
  HYPERDP_ASSIGN_OR_RETURN(double scale, DensityScale(n, h));
  return ModelParams{n, h, p * scale, q * scale, p, q};
}

absl::StatusOr<Labeling> SampleGroundTruth(int n, GroundTruthMode mode,
                                           Seed seed) {
  if (n < 1) return absl::InvalidArgumentError("n must be positive");
  Rng rng(seed);
  std::vector<int> labels(n);
  if (mode == GroundTruthMode::kUniformIid) {
    for (int& v : labels) v = (rng.NextU64() >> 63) ? 1 : -1;
    return Labeling::Create(labels);
  }
  if (n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("balanced ground truth needs even n, got ", n));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first n/2 slots form a uniform n/2-subset.
  for (int i = 0; i < n / 2; ++i) {
    int j = i + static_cast<int>(rng.UniformInt(n - i));
    std::swap(order[i], order[j]);
  }
  std::fill(labels.begin(), labels.end(), -1);
  for (int i = 0; i < n / 2; ++i) labels[order[i]] = 1;
  return Labeling::Create(labels);
}

absl::StatusOr<Hypergraph> SampleHypergraph(const ModelParams& params,
                                            const Labeling& sigma, Seed seed) {
  if (sigma.size() != params.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "labeling length ", sigma.size(), " != n = ", params.n));
  }
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph,
                           Hypergraph::Create(params.n, params.h));
  const SubsetCodec& codec = graph.codec();
  const int h = params.h;

  std::vector<int> plus, minus;
  for (int v = 0; v < params.n; ++v) (sigma[v] == 1 ? plus : minus).push_back(v);
  SideSampler plus_side(plus, codec, h);
  SideSampler minus_side(minus, codec, h);
  const uint64_t n_in = plus_side.size() + minus_side.size();
  const uint64_t n_cross = codec.universe_size() - n_in;

  auto is_mono = [&](uint64_t rank, std::vector<int>& scratch) {
    scratch.resize(h);
    codec.Unrank(rank, absl::MakeSpan(scratch));
    for (int i = 1; i < h; ++i) {
      if (sigma[scratch[i]] != sigma[scratch[0]]) return false;
    }
    return true;
  };

  Rng rng(seed);
  const uint64_t k_in = rng.Binomial(n_in, params.p);
  const uint64_t k_cross = rng.Binomial(n_cross, params.q);

  std::vector<int> scratch(h);
  auto draw_in = [&](Rng& r) {
    uint64_t pick = r.UniformInt(n_in);
    return pick < plus_side.size() ? plus_side.Draw(r, scratch)
                                   : minus_side.Draw(r, scratch);
  };
  auto for_each_in = [&](auto&& fn) {
    plus_side.ForEach(fn);
    minus_side.ForEach(fn);
  };
  for (uint64_t rank :
       internal::ChooseDistinct(rng, k_in, n_in, true, draw_in, for_each_in)) {
    HYPERDP_RETURN_IF_ERROR(graph.AddRank(rank));
  }

  const bool cross_is_common =
      n_cross >= codec.universe_size() / 10 && n_cross > 0;
  auto draw_cross = [&](Rng& r) {
    for (;;) {
      uint64_t rank = r.UniformInt(codec.universe_size());
      if (!is_mono(rank, scratch)) return rank;
    }
  };
  auto for_each_cross = [&](auto&& fn) {
    std::vector<int> local(h);
    for (uint64_t r = 0; r < codec.universe_size(); ++r) {
      if (!is_mono(r, local)) fn(r);
    }
  };
  for (uint64_t rank : internal::ChooseDistinct(
           rng, k_cross, n_cross, cross_is_common, draw_cross,
           for_each_cross)) {
    HYPERDP_RETURN_IF_ERROR(graph.AddRank(rank));
  }
  return graph;
}

absl::StatusOr<double> EdgeProbability(const ModelParams& params,
                                       const Labeling& sigma,
                                       absl::Span<const int> vertices) {
  if (sigma.size() != params.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "labeling length ", sigma.size(), " != n = ", params.n));
  }
  HYPERDP_ASSIGN_OR_RETURN(SubsetCodec codec,
                           SubsetCodec::Create(params.n, params.h));
  HYPERDP_RETURN_IF_ERROR(codec.Validate(vertices));
  for (int v : vertices) {
    if (sigma[v] != sigma[vertices[0]]) return params.q;
  }
  return params.p;
}

}  // namespace hyperdp
