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

#ifndef HYPERDP_ESTIMATORS_H_
#define HYPERDP_ESTIMATORS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/hypergraph.h"
#include "hyperdp/label_space.h"

namespace hyperdp {

struct RecoveryResult {
  // Canonical: vertex 0 is labelled +1.
  Labeling labeling;
  // Log-likelihood for "ml_exhaustive", cross-cluster count for "spectral".
  double score = 0.0;
  std::string method;
  // Spectral only: the clique expansion was disconnected and the labeling
  // was assembled from per-component splits.
  bool disconnected = false;
};

// A deterministic community estimator.
using Estimator = std::function<absl::StatusOr<Labeling>(const Hypergraph&)>;

// An optimization-based estimator reporting its whole set of optimal
// canonical labelings, sorted; ties are visible to the caller.
using OptimalSetEstimator =
    std::function<absl::StatusOr<std::vector<Labeling>>(const Hypergraph&)>;

// E_in ln p + (N_in - E_in) ln(1 - p) + E_cr ln q + (N_cr - E_cr) ln(1 - q).
// p or q in {0, 1} is rejected.
absl::StatusOr<double> LogLikelihood(const Hypergraph& graph,
                                     const Labeling& sigma,
                                     const ModelParams& params);

struct ExhaustiveOptions {
  LabelSpace space = LabelSpace::kBalanced;
  int max_n = kDefaultExhaustiveCap;
};

// Cross-cluster counts of every canonical labeling of `masks`, in order.
absl::StatusOr<std::vector<uint64_t>> CrossCountsOverMasks(
    const Hypergraph& graph, const std::vector<uint64_t>& masks);

// Maximum likelihood over the label space; ties go to the lexicographically
// smallest canonical labeling.
absl::StatusOr<RecoveryResult> MlExhaustive(const Hypergraph& graph,
                                            const ModelParams& params,
                                            const ExhaustiveOptions& options =
                                                {});

struct SpectralOptions {
  int max_n = 2000;
  // After the Fiedler split, apply balanced swaps while any swap lowers the
  // cross-cluster count (at most n swaps).
  bool refine = false;
};

// Clique expansion W_ij = #{hyperedges containing i and j}; symmetric
// normalized Laplacian L = I - D^-1/2 W D^-1/2; vertices sorted by the
// eigenvector of the second-smallest eigenvalue (descending, index breaks
// ties) and the first floor(n/2) labelled +1. Disconnected expansions are
// split per component, components are assigned largest-first to the smaller
// side, and the remaining imbalance is fixed by moving the smallest
// components or the Fiedler tail of one component.
absl::StatusOr<RecoveryResult> SpectralRecover(
    const Hypergraph& graph, const SpectralOptions& options = {});

// min over s in {+1, -1} of (1/n) #{i : est_i != s truth_i}.
absl::StatusOr<double> MisclassificationError(const Labeling& estimate,
                                              const Labeling& truth);

struct StabilityDistance {
  // Number of hyperedge edits needed before the estimate stops being the
  // unique optimum: 0 when H itself has tied optima, otherwise the smallest
  // k such that some k-edit makes the optimal set differ from {estimate}.
  // k_max + 1 when no edit of size <= k_max does.
  int d = 0;
  bool exceeds_cap = false;
  int k_max = 0;
};

inline constexpr int kDefaultStabilityCap = 3;

// Distance to instability of the exhaustive ML estimator (label space from
// `options`). Ties in the likelihood count as unstable, so d >= 1 exactly
// when every neighbor of H has the same unique ML labeling. The search
// enumerates every edit of exactly k hyperedges for k = 1, 2, ..., k_max.
// Requires C(n, h) <= 64.
absl::StatusOr<StabilityDistance> DistanceToInstabilityExact(
    const Hypergraph& graph, const ModelParams& params,
    int k_max = kDefaultStabilityCap, const ExhaustiveOptions& options = {});

// As above on a bitmask hypergraph over `universe`, whose label space
// defines the ML estimator. Lets exhaustive audits share one SmallUniverse.
absl::StatusOr<StabilityDistance> DistanceToInstability(
    const SmallUniverse& universe, uint64_t graph, const ModelParams& params,
    int k_max = kDefaultStabilityCap);

// Same search for any estimator that reports its optimal set. Slow: one
// estimator call per edit.
absl::StatusOr<StabilityDistance> DistanceToInstabilityGeneric(
    const Hypergraph& graph, const OptimalSetEstimator& estimator, int k_max);

// Second-smallest minus smallest cross-cluster count over the canonical
// labelings of the label space (0 when the minimum is shared).
absl::StatusOr<uint64_t> InstabilitySurrogate(
    const Hypergraph& graph, const ExhaustiveOptions& options = {});

// Scalable stand-in for InstabilitySurrogate when the label space cannot be
// enumerated: the smallest change in cross-cluster count over single
// balanced swaps from `sigma`, floored at 0. It only inspects neighbors of
// sigma, so it can exceed the exhaustive value and is not a certified lower
// bound on the distance to instability.
absl::StatusOr<uint64_t> LocalSwapSurrogate(const Hypergraph& graph,
                                            const Labeling& sigma);

}  // namespace hyperdp

#endif  // HYPERDP_ESTIMATORS_H_
