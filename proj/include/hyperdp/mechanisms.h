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

#ifndef HYPERDP_MECHANISMS_H_
#define HYPERDP_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "hyperdp/estimators.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/hypergraph.h"
#include "hyperdp/label_space.h"
#include "hyperdp/random.h"

namespace hyperdp {

struct PrivacyBudget {
  double eps = 0.0;
  double delta = 0.0;
  // Set when delta was derived as n^(-t).
  std::optional<double> t;

  // eps > 0, delta in [0, 1].
  static absl::StatusOr<PrivacyBudget> Create(double eps, double delta);
  // delta = n^(-t), t > 0.
  static absl::StatusOr<PrivacyBudget> FromExponent(int n, double eps,
                                                    double t);
};

struct MechanismDiagnostics {
  std::optional<int> d;
  bool d_exceeds_cap = false;
  // False for outputs whose privacy rests on a non-certified surrogate.
  bool certified = true;
  std::optional<double> laplace_draw;
  std::optional<double> threshold;
  std::optional<double> sampled_log_weight;
};

struct MechanismOutput {
  // Canonical. Absent only for randomized response without an estimator.
  std::optional<Labeling> labeling;
  bool released_bottom = false;
  std::optional<Hypergraph> perturbed_graph;
  std::string mechanism;
  MechanismDiagnostics diagnostics;
};

// Laplace(0, scale) by inversion: u uniform on (-1/2, 1/2),
// x = -scale sgn(u) ln(1 - 2|u|).
double LaplaceSample(double scale, Rng& rng);
absl::StatusOr<double> LaplaceSample(double scale, Seed seed);
// Pr[Laplace(0, scale) > x].
double LaplaceTail(double x, double scale);

// Uniform canonical labeling of `space`, drawn without enumerating it.
absl::StatusOr<Labeling> SampleUniformLabeling(int n, LabelSpace space,
                                               Rng& rng);

// ---------------------------------------------------------------------------
// Stability mechanism (propose-test-release on the distance to instability).

enum class DistanceMode {
  // Exact distance of the exhaustive ML estimator; requires C(n, h) <= 64.
  kExact,
  // Cross-count gap surrogate; NON-CERTIFIED.
  kSurrogate,
};

struct StabilityOptions {
  DistanceMode mode = DistanceMode::kExact;
  // Surrogate mode is refused unless the caller acknowledges that its
  // privacy is not certified.
  bool acknowledge_non_certified = false;
  // ML label space, also the support of the bottom output.
  LabelSpace space = LabelSpace::kBalanced;
  int k_max = kDefaultStabilityCap;
  int max_n = kDefaultExhaustiveCap;
  // Surrogate mode only: when set, or when the label space is too large to
  // enumerate, the released estimate is this estimator's output (spectral
  // recovery if unset) and the gap is LocalSwapSurrogate. Otherwise the
  // estimate is exhaustive ML and the gap is InstabilitySurrogate.
  Estimator estimator;
};

// ln(1/delta) / eps.
double StabilityThreshold(const PrivacyBudget& budget);
// Pr[d + Lap(1/eps) > ln(1/delta)/eps].
double StabilityReleaseProbability(int d, const PrivacyBudget& budget);

// Computes d, draws Lap(1/eps) and releases the estimate when
// d + noise > ln(1/delta)/eps; otherwise outputs a uniform labeling of the
// label space (released_bottom). In exact mode d is capped at k_max + 1,
// which keeps its sensitivity at one; the cap is reported in diagnostics.
absl::StatusOr<MechanismOutput> MechStability(const Hypergraph& graph,
                                              const ModelParams& params,
                                              const PrivacyBudget& budget,
                                              const StabilityOptions& options,
                                              Seed seed);

// ---------------------------------------------------------------------------
// Randomized response.

// nu = 1 / (e^eps + 1); eps >= 0.
double RrFlipProbability(double eps);

// Flips every potential hyperedge independently with probability nu. The
// number of removals and insertions are Binomial and their positions
// uniform without replacement, which is the same law.
absl::StatusOr<Hypergraph> RandomizedResponse(const Hypergraph& graph,
                                              double eps, Seed seed);

// Randomized response followed by `estimator` (if set) on the perturbed
// hypergraph; post-processing keeps eps-DP.
absl::StatusOr<MechanismOutput> MechRandomizedResponse(
    const Hypergraph& graph, double eps, Seed seed,
    const Estimator& estimator = nullptr);

// ---------------------------------------------------------------------------
// Sampling mechanisms over an enumerable label space.

struct LabelDistribution {
  int n = 0;
  std::vector<uint64_t> masks;  // canonical plus-masks, lexicographic
  std::vector<double> log_weights;
  std::vector<double> probabilities;  // normalized by log-sum-exp

  Labeling labeling(size_t j) const {
    return Labeling::FromPlusMask(masks[j], n);
  }
};

// exp(x_j - logsumexp(x)).
std::vector<double> NormalizeLogWeights(absl::Span<const double> log_weights);

// Index drawn from `probabilities` by inversion of one uniform double.
size_t SampleIndex(absl::Span<const double> probabilities, Rng& rng);

// Posterior Pr(sigma | H) under a uniform prior on the label space.
absl::StatusOr<LabelDistribution> BayesPosterior(
    const Hypergraph& graph, const ModelParams& params,
    const ExhaustiveOptions& options = {});

// Weights exp(-eps Psi(H; sigma)), normalized over the label space.
absl::StatusOr<LabelDistribution> ExponentialDistribution(
    const Hypergraph& graph, double eps,
    const ExhaustiveOptions& options = {});

absl::StatusOr<MechanismOutput> MechBayesSampling(
    const Hypergraph& graph, const ModelParams& params,
    const ExhaustiveOptions& options, Seed seed);

absl::StatusOr<MechanismOutput> MechExponentialSampling(
    const Hypergraph& graph, double eps, const ExhaustiveOptions& options,
    Seed seed);

// Exact output distributions over the labelings of `universe` (same order)
// for a hypergraph given as a rank bitmask. These are the closed forms the
// privacy audits enumerate; the samplers above draw from the same laws.

// Stability mechanism with exact distance: the ML estimate gets
// Pr[d + Lap(1/eps) > ln(1/delta)/eps] on top of the uniform bottom mass.
absl::StatusOr<std::vector<double>> StabilityOutputProbabilities(
    const SmallUniverse& universe, uint64_t graph, const ModelParams& params,
    const PrivacyBudget& budget, int k_max = kDefaultStabilityCap);

// Posterior under the uniform prior on the label space.
std::vector<double> BayesPosteriorProbabilities(const SmallUniverse& universe,
                                                uint64_t graph,
                                                const ModelParams& params);

// Normalized exp(-eps * Psi) weights.
std::vector<double> ExponentialProbabilities(const SmallUniverse& universe,
                                             uint64_t graph, double eps);

}  // namespace hyperdp

#endif  // HYPERDP_MECHANISMS_H_
