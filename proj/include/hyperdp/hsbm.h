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

#ifndef HYPERDP_HSBM_H_
#define HYPERDP_HSBM_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hyperdp/hypergraph.h"
#include "hyperdp/random.h"

namespace hyperdp {

// h-HSBM(n, p, q) in the dense regime:
//   p = a ln(n) / C(n-1, h-1),  q = b ln(n) / C(n-1, h-1).
// The logarithm is natural throughout the library.
struct ModelParams {
  int n = 0;
  int h = 0;
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;
  double q = 0.0;

  // Requires a >= b > 0, n >= h >= 2, n >= 2 and p, q <= 1. Probabilities
  // above one are an error, never clamped.
  static absl::StatusOr<ModelParams> Create(int n, int h, double a, double b);
  // Direct (p, q) in [0, 1]; a and b are back-computed. Used for degenerate
  // and small-n configurations outside the assortative dense regime.
  static absl::StatusOr<ModelParams> FromProbabilities(int n, int h, double p,
                                                       double q);
};

// C(n-1, h-1) / ln(n) as a double: the scale converting a, b to p, q.
absl::StatusOr<double> DensityScale(int n, int h);

enum class GroundTruthMode { kUniformIid, kBalanced };

// kUniformIid: i.i.d. fair signs. kBalanced: uniform over labelings with
// n/2 vertices per community (n must be even).
absl::StatusOr<Labeling> SampleGroundTruth(int n, GroundTruthMode mode,
                                           Seed seed);

// Each monochromatic h-subset appears independently with probability p, each
// other one with probability q. Sampled in two stages: the number of edges
// per class is Binomial, then that many distinct class members are chosen
// uniformly, which gives the same law as independent coin flips.
absl::StatusOr<Hypergraph> SampleHypergraph(const ModelParams& params,
                                            const Labeling& sigma, Seed seed);

absl::StatusOr<double> EdgeProbability(const ModelParams& params,
                                       const Labeling& sigma,
                                       absl::Span<const int> vertices);

}  // namespace hyperdp

#endif  // HYPERDP_HSBM_H_
