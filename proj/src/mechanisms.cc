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

#include "hyperdp/mechanisms.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "hyperdp/status_macros.h"
#include "subset_sampling.h"

namespace hyperdp {
namespace {

absl::Status CheckEps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be positive and finite, got ", eps));
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

absl::StatusOr<LabelDistribution> DistributionFromLogWeights(
    int n, std::vector<uint64_t> masks, std::vector<double> log_weights) {
  LabelDistribution dist;
  dist.n = n;
  dist.probabilities = NormalizeLogWeights(log_weights);
  dist.masks = std::move(masks);
  dist.log_weights = std::move(log_weights);
  return dist;
}

absl::StatusOr<MechanismOutput> SampleFrom(const LabelDistribution& dist,
                                           std::string mechanism, Seed seed) {
  Rng rng(seed);
  const size_t j = SampleIndex(dist.probabilities, rng);
  MechanismOutput out;
  out.labeling = dist.labeling(j);
  out.mechanism = std::move(mechanism);
  out.diagnostics.sampled_log_weight = dist.log_weights[j];
  return out;
}

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double eps, double delta) {
  HYPERDP_RETURN_IF_ERROR(CheckEps(eps));
  if (!(delta >= 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1], got ", delta));
  }
  return PrivacyBudget{.eps = eps, .delta = delta, .t = std::nullopt};
}

absl::StatusOr<PrivacyBudget> PrivacyBudget::FromExponent(int n, double eps,
                                                          double t) {
  if (n < 2) return absl::InvalidArgumentError("n must be at least 2");
  if (!(t > 0.0) || !std::isfinite(t)) {
    return absl::InvalidArgumentError(
        absl::StrCat("t must be positive, got ", t));
  }
  HYPERDP_ASSIGN_OR_RETURN(PrivacyBudget budget,
                           Create(eps, std::pow(static_cast<double>(n), -t)));
  budget.t = t;
  return budget;
}

double LaplaceSample(double scale, Rng& rng) {
  double u;
  do {
    u = rng.UniformDouble() - 0.5;
  } while (u == -0.5);
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

absl::StatusOr<double> LaplaceSample(double scale, Seed seed) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  Rng rng(seed);
  return LaplaceSample(scale, rng);
}

double LaplaceTail(double x, double scale) {
  if (x >= 0) return 0.5 * std::exp(-x / scale);
  return 1.0 - 0.5 * std::exp(x / scale);
}

absl::StatusOr<Labeling> SampleUniformLabeling(int n, LabelSpace space,
                                               Rng& rng) {
  if (n < 2) return absl::InvalidArgumentError("n must be at least 2");
  std::vector<int> labels(n, -1);
  if (space == LabelSpace::kAll) {
    for (int& l : labels) l = (rng.NextU64() >> 63) ? 1 : -1;
  } else {
    if (space == LabelSpace::kBalanced && n % 2 != 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("balanced label space needs even n, got ", n));
    }
    // A uniform floor(n/2)-subset hits each {sigma, -sigma} class equally
    // often: every class has exactly one member (two when n is even) with
    // that many positives.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n / 2; ++i) {
      const int j = i + static_cast<int>(rng.UniformInt(n - i));
      std::swap(order[i], order[j]);
      labels[order[i]] = 1;
    }
  }
  HYPERDP_ASSIGN_OR_RETURN(Labeling sigma, Labeling::Create(labels));
  return sigma.Canonical();
}

double StabilityThreshold(const PrivacyBudget& budget) {
  return std::log(1.0 / budget.delta) / budget.eps;
}

double StabilityReleaseProbability(int d, const PrivacyBudget& budget) {
  return LaplaceTail(StabilityThreshold(budget) - d, 1.0 / budget.eps);
}

absl::StatusOr<MechanismOutput> MechStability(const Hypergraph& graph,
                                              const ModelParams& params,
                                              const PrivacyBudget& budget,
                                              const StabilityOptions& options,
                                              Seed seed) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(graph, params));
  HYPERDP_RETURN_IF_ERROR(CheckEps(budget.eps));
  if (!(budget.delta > 0.0 && budget.delta <= 1.0)) {
    return absl::InvalidArgumentError(
        "the stability mechanism needs delta in (0, 1]");
  }
  MechanismOutput out;
  std::optional<Labeling> estimate;
  int d = 0;
  if (options.mode == DistanceMode::kExact) {
    out.mechanism = "stability";
    if (graph.n() > options.max_n) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "exact distance to instability capped at n = ", options.max_n));
    }
    HYPERDP_ASSIGN_OR_RETURN(
        SmallUniverse universe,
        SmallUniverse::Create(graph.n(), graph.h(), options.space));
    HYPERDP_ASSIGN_OR_RETURN(uint64_t mask, universe.ToMask(graph));
    HYPERDP_ASSIGN_OR_RETURN(
        StabilityDistance distance,
        DistanceToInstability(universe, mask, params, options.k_max));
    estimate = universe.labeling(universe.MaximumLikelihood(mask, params));
    d = distance.d;
    out.diagnostics.d_exceeds_cap = distance.exceeds_cap;
  } else {
    if (!options.acknowledge_non_certified) {
      return absl::FailedPreconditionError(
          "surrogate distance to instability has no certified sensitivity "
          "bound; pass the non-certified acknowledgment to run it");
    }
    out.mechanism = "stability_surrogate";
    out.diagnostics.certified = false;
    const bool enumerable = !options.estimator && graph.n() <= options.max_n;
    if (enumerable) {
      const ExhaustiveOptions exhaustive{.space = options.space,
                                         .max_n = options.max_n};
      HYPERDP_ASSIGN_OR_RETURN(RecoveryResult ml,
                               MlExhaustive(graph, params, exhaustive));
      HYPERDP_ASSIGN_OR_RETURN(uint64_t gap,
                               InstabilitySurrogate(graph, exhaustive));
      estimate = ml.labeling;
      d = static_cast<int>(std::min<uint64_t>(gap, 1 << 30));
    } else {
      Labeling sigma = *Labeling::Create(std::vector<int>(graph.n(), 1));
      if (options.estimator) {
        HYPERDP_ASSIGN_OR_RETURN(sigma, options.estimator(graph));
      } else {
        HYPERDP_ASSIGN_OR_RETURN(RecoveryResult spectral,
                                 SpectralRecover(graph));
        sigma = spectral.labeling;
      }
      HYPERDP_ASSIGN_OR_RETURN(uint64_t gap, LocalSwapSurrogate(graph, sigma));
      estimate = sigma.Canonical();
      d = static_cast<int>(std::min<uint64_t>(gap, 1 << 30));
    }
  }
  Rng rng(seed);
  const double noise = LaplaceSample(1.0 / budget.eps, rng);
  const double threshold = StabilityThreshold(budget);
  out.diagnostics.d = d;
  out.diagnostics.laplace_draw = noise;
  out.diagnostics.threshold = threshold;
  if (d + noise > threshold) {
    out.labeling = *estimate;
  } else {
    out.released_bottom = true;
    HYPERDP_ASSIGN_OR_RETURN(out.labeling,
                             SampleUniformLabeling(graph.n(), options.space,
                                                   rng));
  }
  return out;
}

double RrFlipProbability(double eps) { return 1.0 / (std::exp(eps) + 1.0); }

absl::StatusOr<Hypergraph> RandomizedResponse(const Hypergraph& graph,
                                              double eps, Seed seed) {
  if (!(eps >= 0.0) || std::isnan(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be nonnegative, got ", eps));
  }
  const double nu = RrFlipProbability(eps);
  const uint64_t universe = graph.universe_size();
  Rng rng(seed);
  std::vector<uint64_t> present = graph.SortedRanks();
  const uint64_t removals = rng.Binomial(present.size(), nu);
  const uint64_t absent = universe - present.size();
  const uint64_t insertions = rng.Binomial(absent, nu);
  // Partial Fisher-Yates: the first `removals` entries leave the graph.
  for (uint64_t i = 0; i < removals; ++i) {
    const uint64_t j = i + rng.UniformInt(present.size() - i);
    std::swap(present[i], present[j]);
  }
  const std::vector<uint64_t> added = internal::ChooseDistinct(
      rng, insertions, absent, /*draw_is_cheap=*/absent >= universe / 10,
      [&](Rng& r) {
        for (;;) {
          const uint64_t rank = r.UniformInt(universe);
          if (!graph.Contains(rank)) return rank;
        }
      },
      [&](auto fn) {
        for (uint64_t rank = 0; rank < universe; ++rank) {
          if (!graph.Contains(rank)) fn(rank);
        }
      });
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph out,
                           Hypergraph::Create(graph.n(), graph.h()));
  for (uint64_t i = removals; i < present.size(); ++i) {
    HYPERDP_RETURN_IF_ERROR(out.AddRank(present[i]));
  }
  for (uint64_t rank : added) HYPERDP_RETURN_IF_ERROR(out.AddRank(rank));
  return out;
}

absl::StatusOr<MechanismOutput> MechRandomizedResponse(
    const Hypergraph& graph, double eps, Seed seed,
    const Estimator& estimator) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph perturbed,
                           RandomizedResponse(graph, eps, seed));
  MechanismOutput out;
  out.mechanism = "rr";
  if (estimator) {
    HYPERDP_ASSIGN_OR_RETURN(Labeling sigma, estimator(perturbed));
    out.labeling = sigma.Canonical();
  }
  out.perturbed_graph = std::move(perturbed);
  return out;
}

std::vector<double> NormalizeLogWeights(absl::Span<const double> log_weights) {
  std::vector<double> out(log_weights.size(), 0.0);
  if (log_weights.empty()) return out;
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (size_t j = 0; j < log_weights.size(); ++j) {
    out[j] = std::exp(log_weights[j] - top);
    total += out[j];
  }
  for (double& p : out) p /= total;
  return out;
}

size_t SampleIndex(absl::Span<const double> probabilities, Rng& rng) {
  const double u = rng.UniformDouble();
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t j = 0; j < probabilities.size(); ++j) {
    if (probabilities[j] <= 0.0) continue;
    last_positive = j;
    cumulative += probabilities[j];
    if (u < cumulative) return j;
  }
  return last_positive;  // u landed in the rounding gap below 1
}

absl::StatusOr<LabelDistribution> BayesPosterior(
    const Hypergraph& graph, const ModelParams& params,
    const ExhaustiveOptions& options) {
  HYPERDP_RETURN_IF_ERROR(CheckShape(graph, params));
  if (!(params.p > 0.0 && params.p < 1.0 && params.q > 0.0 &&
        params.q < 1.0)) {
    return absl::InvalidArgumentError("posterior needs p, q in (0, 1)");
  }
  HYPERDP_ASSIGN_OR_RETURN(
      std::vector<uint64_t> masks,
      EnumerateCanonicalMasks(graph.n(), options.space, options.max_n));
  HYPERDP_ASSIGN_OR_RETURN(std::vector<uint64_t> cross,
                           CrossCountsOverMasks(graph, masks));
  const double lp = std::log(params.p), l1p = std::log1p(-params.p);
  const double lq = std::log(params.q), l1q = std::log1p(-params.q);
  std::vector<double> log_weights(masks.size());
  for (size_t j = 0; j < masks.size(); ++j) {
    const int plus = std::popcount(masks[j]);
    HYPERDP_ASSIGN_OR_RETURN(
        uint64_t n_in, MonochromaticCapacity(plus, graph.n() - plus, graph.h()));
    log_weights[j] = LogLikelihoodFromCounts(graph.num_edges(), cross[j], n_in,
                                             graph.universe_size(), lp, l1p,
                                             lq, l1q);
  }
  return DistributionFromLogWeights(graph.n(), std::move(masks),
                                    std::move(log_weights));
}

absl::StatusOr<LabelDistribution> ExponentialDistribution(
    const Hypergraph& graph, double eps, const ExhaustiveOptions& options) {
  HYPERDP_RETURN_IF_ERROR(CheckEps(eps));
  HYPERDP_ASSIGN_OR_RETURN(
      std::vector<uint64_t> masks,
      EnumerateCanonicalMasks(graph.n(), options.space, options.max_n));
  HYPERDP_ASSIGN_OR_RETURN(std::vector<uint64_t> cross,
                           CrossCountsOverMasks(graph, masks));
  std::vector<double> log_weights(masks.size());
  for (size_t j = 0; j < masks.size(); ++j) {
    log_weights[j] = -eps * static_cast<double>(cross[j]);
  }
  return DistributionFromLogWeights(graph.n(), std::move(masks),
                                    std::move(log_weights));
}

absl::StatusOr<MechanismOutput> MechBayesSampling(
    const Hypergraph& graph, const ModelParams& params,
    const ExhaustiveOptions& options, Seed seed) {
  HYPERDP_ASSIGN_OR_RETURN(LabelDistribution dist,
                           BayesPosterior(graph, params, options));
  return SampleFrom(dist, "bayes", seed);
}

absl::StatusOr<MechanismOutput> MechExponentialSampling(
    const Hypergraph& graph, double eps, const ExhaustiveOptions& options,
    Seed seed) {
  HYPERDP_ASSIGN_OR_RETURN(LabelDistribution dist,
                           ExponentialDistribution(graph, eps, options));
  return SampleFrom(dist, "exponential", seed);
}

absl::StatusOr<std::vector<double>> StabilityOutputProbabilities(
    const SmallUniverse& universe, uint64_t graph, const ModelParams& params,
    const PrivacyBudget& budget, int k_max) {
  HYPERDP_ASSIGN_OR_RETURN(
      StabilityDistance distance,
      DistanceToInstability(universe, graph, params, k_max));
  const double release = StabilityReleaseProbability(distance.d, budget);
  // Pr[Lap <= T - d] via symmetry, avoiding cancellation in 1 - release.
  const double bottom =
      LaplaceTail(distance.d - StabilityThreshold(budget), 1.0 / budget.eps);
  const size_t m = universe.num_labelings();
  std::vector<double> probs(m, bottom / static_cast<double>(m));
  probs[universe.MaximumLikelihood(graph, params)] += release;
  return probs;
}

std::vector<double> BayesPosteriorProbabilities(const SmallUniverse& universe,
                                                uint64_t graph,
                                                const ModelParams& params) {
  const double lp = std::log(params.p), l1p = std::log1p(-params.p);
  const double lq = std::log(params.q), l1q = std::log1p(-params.q);
  const uint64_t edges = std::popcount(graph);
  std::vector<double> log_weights(universe.num_labelings());
  for (size_t j = 0; j < log_weights.size(); ++j) {
    log_weights[j] = LogLikelihoodFromCounts(
        edges, universe.Psi(graph, j), universe.capacity(j),
        universe.universe(), lp, l1p, lq, l1q);
  }
  return NormalizeLogWeights(log_weights);
}

std::vector<double> ExponentialProbabilities(const SmallUniverse& universe,
                                             uint64_t graph, double eps) {
  std::vector<double> log_weights(universe.num_labelings());
  for (size_t j = 0; j < log_weights.size(); ++j) {
    log_weights[j] = -eps * universe.Psi(graph, j);
  }
  return NormalizeLogWeights(log_weights);
}

}  // namespace hyperdp
