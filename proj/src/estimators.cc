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

#include "hyperdp/estimators.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "hyperdp/combinatorics.h"
#include "hyperdp/status_macros.h"
#include "swap_search.h"

namespace hyperdp {
namespace {

absl::Status ValidateProbabilities(const ModelParams& params) {
  if (!(params.p > 0.0 && params.p < 1.0 && params.q > 0.0 &&
        params.q < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("log-likelihood needs p, q in (0, 1); got p = ",
                     params.p, ", q = ", params.q));
  }
  return absl::OkStatus();
}

absl::Status CheckShape(const Hypergraph& graph, const ModelParams& params) {
  if (graph.n() != params.n || graph.h() != params.h) {
    return absl::InvalidArgumentError(
        "hypergraph and model parameters disagree on n or h");
  }
  return absl::OkStatus();
}

// Calls fn(mask) for every mask over `universe` bits with exactly k bits set,
// stopping early when fn returns true. Returns whether it stopped early.
template <typename Fn>
bool ForEachKSubsetMask(int universe, int k, Fn fn) {
  if (k > universe) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    uint64_t mask = 0;
    for (int i : idx) mask |= uint64_t{1} << i;
    if (fn(mask)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == universe - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Vertices of `component` ordered by descending Fiedler value of its
// normalized Laplacian, index breaking ties. The eigenvector sign is fixed so
// that its first clearly nonzero entry is positive.
std::vector<int> FiedlerOrder(const Eigen::MatrixXd& weights,
                              const std::vector<int>& component) {
  const int m = static_cast<int>(component.size());
  if (m <= 1) return component;
  Eigen::MatrixXd sub(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sub(i, j) = weights(component[i], component[j]);
  }
  Eigen::VectorXd inv_sqrt_deg = sub.rowwise().sum().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd laplacian =
      Eigen::MatrixXd::Identity(m, m) -
      inv_sqrt_deg.asDiagonal() * sub * inv_sqrt_deg.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);
  for (int i = 0; i < m; ++i) {
    if (std::abs(fiedler(i)) > 1e-12) {
      if (fiedler(i) < 0) fiedler = -fiedler;
      break;
    }
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return fiedler(x) > fiedler(y);
  });
  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) out[i] = component[order[i]];
  return out;
}

std::vector<std::vector<int>> Components(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  std::vector<int> seen(n, 0);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> component = {s};
    seen[s] = 1;
    for (size_t head = 0; head < component.size(); ++head) {
      const int u = component[head];
      for (int v = 0; v < n; ++v) {
        if (!seen[v] && weights(u, v) > 0) {
          seen[v] = 1;
          component.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

// Assembles a labeling with floor(n/2) positives from a disconnected
// expansion.
std::vector<int> JoinComponents(const Eigen::MatrixXd& weights,
                                std::vector<std::vector<int>> components) {
  const int n = static_cast<int>(weights.rows());
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& x, const auto& y) {
                     return x.size() > y.size();
                   });
  const int target[2] = {n / 2, n - n / 2};  // sizes of +1 and -1 sides
  std::vector<int> side_of(components.size());
  int size[2] = {0, 0};
  for (size_t c = 0; c < components.size(); ++c) {
    const int s = size[0] <= size[1] ? 0 : 1;
    side_of[c] = s;
    size[s] += static_cast<int>(components[c].size());
  }
  std::vector<int> labels(n);
  for (size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) labels[v] = side_of[c] == 0 ? 1 : -1;
  }
  const int big = size[0] > target[0] ? 0 : 1;
  int excess = size[big] - target[big];
  if (excess <= 0) return labels;
  const int other_label = big == 0 ? -1 : 1;
  // Components on the oversized side, smallest first (stable on the
  // deterministic size-then-vertex order).
  std::vector<size_t> candidates;
  for (size_t c = components.size(); c-- > 0;) {
    if (side_of[c] == big) candidates.push_back(c);
  }
  for (size_t c : candidates) {
    const int m = static_cast<int>(components[c].size());
    if (m <= excess) {
      for (int v : components[c]) labels[v] = other_label;
      excess -= m;
      if (excess == 0) break;
      continue;
    }
    // Move the Fiedler tail of this component.
    std::vector<int> order = FiedlerOrder(weights, components[c]);
    for (int i = m - excess; i < m; ++i) labels[order[i]] = other_label;
    excess = 0;
    break;
  }
  return labels;
}

absl::StatusOr<Labeling> FromSpectralLabels(const std::vector<int>& labels) {
  HYPERDP_ASSIGN_OR_RETURN(Labeling sigma, Labeling::Create(labels));
  return sigma.Canonical();
}

}  // namespace

absl::StatusOr<double> LogLikelihood(const Hypergraph& graph,
                                     const Labeling& sigma,
                                     const ModelParams& params) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(graph, params));
  HYPERDP_RETURN_IF_ERROR(ValidateProbabilities(params));
  HYPERDP_ASSIGN_OR_RETURN(uint64_t cross, CountCrossCluster(graph, sigma));
  const int n_plus = sigma.CountPositive();
  HYPERDP_ASSIGN_OR_RETURN(
      uint64_t n_in,
      MonochromaticCapacity(n_plus, sigma.size() - n_plus, graph.h()));
  return LogLikelihoodFromCounts(graph.num_edges(), cross, n_in,
                                 graph.universe_size(), std::log(params.p),
                                 std::log1p(-params.p), std::log(params.q),
                                 std::log1p(-params.q));
}

absl::StatusOr<std::vector<uint64_t>> CrossCountsOverMasks(
    const Hypergraph& graph, const std::vector<uint64_t>& masks) {
  if (graph.n() > 64) {
    return absl::InvalidArgumentError("mask enumeration needs n <= 64");
  }
  std::vector<uint64_t> edge_masks;
  edge_masks.reserve(graph.num_edges());
  for (uint64_t r : graph.SortedRanks()) {
    edge_masks.push_back(graph.codec().VertexMask(r));
  }
  std::vector<uint64_t> counts(masks.size(), 0);
  for (size_t j = 0; j < masks.size(); ++j) {
    uint64_t cross = 0;
    for (uint64_t e : edge_masks) cross += !IsMonochromatic(e, masks[j]);
    counts[j] = cross;
  }
  return counts;
}

absl::StatusOr<RecoveryResult> MlExhaustive(const Hypergraph& graph,
                                            const ModelParams& params,
                                            const ExhaustiveOptions& options) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(graph, params));
  HYPERDP_RETURN_IF_ERROR(ValidateProbabilities(params));
  HYPERDP_ASSIGN_OR_RETURN(
      std::vector<uint64_t> masks,
      EnumerateCanonicalMasks(graph.n(), options.space, options.max_n));
  HYPERDP_ASSIGN_OR_RETURN(std::vector<uint64_t> cross,
                           CrossCountsOverMasks(graph, masks));
  std::vector<uint64_t> capacity(graph.n() + 1);
  for (int k = 0; k <= graph.n(); ++k) {
    HYPERDP_ASSIGN_OR_RETURN(capacity[k],
                             MonochromaticCapacity(k, graph.n() - k, graph.h()));
  }
  const double lp = std::log(params.p), l1p = std::log1p(-params.p);
  const double lq = std::log(params.q), l1q = std::log1p(-params.q);
  size_t best = 0;
  double best_value = 0.0;
  for (size_t j = 0; j < masks.size(); ++j) {
    const double value = LogLikelihoodFromCounts(
        graph.num_edges(), cross[j], capacity[std::popcount(masks[j])],
        graph.universe_size(), lp, l1p, lq, l1q);
    if (j == 0 || value > best_value) {
      best = j;
      best_value = value;
    }
  }
  return RecoveryResult{.labeling = Labeling::FromPlusMask(masks[best],
                                                           graph.n()),
                        .score = best_value,
                        .method = "ml_exhaustive"};
}

absl::StatusOr<RecoveryResult> SpectralRecover(const Hypergraph& graph,
                                               const SpectralOptions& options) {
  const int n = graph.n();
  if (n > options.max_n) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "spectral recovery capped at n = ", options.max_n, ", got ", n));
  }
  if (graph.num_edges() == 0) {
    return absl::InvalidArgumentError("spectral recovery needs hyperedges");
  }
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> vertices(graph.h());
  for (uint64_t r : graph.SortedRanks()) {
    graph.codec().Unrank(r, absl::MakeSpan(vertices));
    for (size_t i = 0; i < vertices.size(); ++i) {
      for (size_t j = i + 1; j < vertices.size(); ++j) {
        weights(vertices[i], vertices[j]) += 1.0;
        weights(vertices[j], vertices[i]) += 1.0;
      }
    }
  }
  std::vector<std::vector<int>> components = Components(weights);
  const bool disconnected = components.size() > 1;
  std::vector<int> labels(n, -1);
  if (!disconnected) {
    std::vector<int> order = FiedlerOrder(weights, components[0]);
    for (int i = 0; i < n / 2; ++i) labels[order[i]] = 1;
  } else {
    labels = JoinComponents(weights, std::move(components));
  }
  HYPERDP_ASSIGN_OR_RETURN(Labeling sigma, FromSpectralLabels(labels));
  internal::SwapEvaluator evaluator(graph, sigma);
  if (options.refine) {
    internal::DescendBySwaps(evaluator, n);
    HYPERDP_ASSIGN_OR_RETURN(
        sigma, FromSpectralLabels(std::vector<int>(evaluator.labels().begin(),
                                                   evaluator.labels().end())));
  }
  return RecoveryResult{.labeling = sigma,
                        .score = static_cast<double>(evaluator.cross()),
                        .method = "spectral",
                        .disconnected = disconnected};
}

absl::StatusOr<double> MisclassificationError(const Labeling& estimate,
                                              const Labeling& truth) {
  if (estimate.size() != truth.size() || truth.size() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("labeling lengths differ or are empty: ", estimate.size(),
                     " vs ", truth.size()));
  }
  int mismatches = 0;
  for (int i = 0; i < truth.size(); ++i) mismatches += estimate[i] != truth[i];
  const int n = truth.size();
  return static_cast<double>(std::min(mismatches, n - mismatches)) / n;
}

absl::StatusOr<StabilityDistance> DistanceToInstabilityExact(
    const Hypergraph& graph, const ModelParams& params, int k_max,
    const ExhaustiveOptions& options) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(graph, params));
  HYPERDP_RETURN_IF_ERROR(ValidateProbabilities(params));
  if (graph.n() > options.max_n) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exhaustive search capped at n = ", options.max_n));
  }
  HYPERDP_ASSIGN_OR_RETURN(
      SmallUniverse universe,
      SmallUniverse::Create(graph.n(), graph.h(), options.space));
  HYPERDP_ASSIGN_OR_RETURN(uint64_t mask, universe.ToMask(graph));
  return DistanceToInstability(universe, mask, params, k_max);
}

absl::StatusOr<StabilityDistance> DistanceToInstability(
    const SmallUniverse& universe, uint64_t graph, const ModelParams& params,
    int k_max) {
  if (k_max < 1) return absl::InvalidArgumentError("k_max must be >= 1");
  const SmallUniverse::Maximizer base =
      universe.MaximumLikelihoodWithTies(graph, params);
  if (!base.unique) return StabilityDistance{.d = 0, .k_max = k_max};
  for (int k = 1; k <= k_max; ++k) {
    const bool found =
        ForEachKSubsetMask(universe.universe(), k, [&](uint64_t edit) {
          const SmallUniverse::Maximizer edited =
              universe.MaximumLikelihoodWithTies(graph ^ edit, params);
          return !edited.unique || edited.index != base.index;
        });
    if (found) return StabilityDistance{.d = k, .k_max = k_max};
  }
  return StabilityDistance{.d = k_max + 1, .exceeds_cap = true, .k_max = k_max};
}

absl::StatusOr<StabilityDistance> DistanceToInstabilityGeneric(
    const Hypergraph& graph, const OptimalSetEstimator& estimator,
    int k_max) {
  if (k_max < 1) return absl::InvalidArgumentError("k_max must be >= 1");
  if (graph.universe_size() > 64) {
    return absl::ResourceExhaustedError(
        "generic edit search needs C(n, h) <= 64");
  }
  HYPERDP_ASSIGN_OR_RETURN(std::vector<Labeling> base, estimator(graph));
  if (base.size() != 1) return StabilityDistance{.d = 0, .k_max = k_max};
  const int universe = static_cast<int>(graph.universe_size());
  absl::Status failure = absl::OkStatus();
  for (int k = 1; k <= k_max; ++k) {
    const bool found = ForEachKSubsetMask(universe, k, [&](uint64_t edit) {
      Hypergraph edited = graph;
      for (int r = 0; r < universe; ++r) {
        if ((edit >> r) & 1) edited.ToggleRank(r).IgnoreError();
      }
      absl::StatusOr<std::vector<Labeling>> out = estimator(edited);
      if (!out.ok()) {
        failure = out.status();
        return true;
      }
      return *out != base;
    });
    HYPERDP_RETURN_IF_ERROR(failure);
    if (found) return StabilityDistance{.d = k, .k_max = k_max};
  }
  return StabilityDistance{.d = k_max + 1, .exceeds_cap = true, .k_max = k_max};
}

absl::StatusOr<uint64_t> InstabilitySurrogate(
    const Hypergraph& graph, const ExhaustiveOptions& options) {
  HYPERDP_ASSIGN_OR_RETURN(
      std::vector<uint64_t> masks,
      EnumerateCanonicalMasks(graph.n(), options.space, options.max_n));
  if (masks.size() < 2) return 0;
  HYPERDP_ASSIGN_OR_RETURN(std::vector<uint64_t> cross,
                           CrossCountsOverMasks(graph, masks));
  std::partial_sort(cross.begin(), cross.begin() + 2, cross.end());
  return cross[1] - cross[0];
}

absl::StatusOr<uint64_t> LocalSwapSurrogate(const Hypergraph& graph,
                                            const Labeling& sigma) {
  if (sigma.size() != graph.n()) {
    return absl::InvalidArgumentError("labeling length mismatch");
  }
  internal::SwapEvaluator evaluator(graph, sigma);
  internal::SwapEvaluator::Move move = evaluator.BestSwap();
  if (move.u < 0 || move.delta <= 0) return 0;
  return static_cast<uint64_t>(move.delta);
}

}  // namespace hyperdp
