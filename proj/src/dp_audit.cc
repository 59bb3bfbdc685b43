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

#include "hyperdp/dp_audit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperdp/parallel.h"
#include "hyperdp/random.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {
namespace {

constexpr int kDefaultSampledGraphs = 50;

using ProbabilityFn =
    std::function<absl::StatusOr<std::vector<double>>(uint64_t graph)>;

struct PairStats {
  double divergence = 0.0;
  double slack = 0.0;
  double pointwise_slack = 0.0;
  double log_ratio = 0.0;
  uint64_t pairs = 0;

  void Merge(const PairStats& other) {
    divergence = std::max(divergence, other.divergence);
    slack = std::max(slack, other.slack);
    pointwise_slack = std::max(pointwise_slack, other.pointwise_slack);
    log_ratio = std::max(log_ratio, other.log_ratio);
    pairs += other.pairs;
  }
};

// One direction: P against Q.
void CompareDirected(const std::vector<double>& p, const std::vector<double>& q,
                     double exp_eps, double delta, PairStats& stats) {
  double divergence = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    const double excess = p[j] - exp_eps * q[j];
    if (excess > 0) divergence += excess;
    stats.pointwise_slack = std::max(stats.pointwise_slack, excess - delta);
    if (p[j] > 0 && q[j] > 0) {
      stats.log_ratio =
          std::max(stats.log_ratio, std::log(p[j]) - std::log(q[j]));
    } else if (p[j] > 0) {
      stats.log_ratio = std::numeric_limits<double>::infinity();
    }
  }
  stats.divergence = std::max(stats.divergence, divergence);
  stats.slack = std::max(stats.slack, divergence - delta);
}

PairStats ComparePair(const std::vector<double>& p, const std::vector<double>& q,
                      double eps, double delta) {
  PairStats stats;
  const double exp_eps = std::exp(eps);
  CompareDirected(p, q, exp_eps, delta, stats);
  CompareDirected(q, p, exp_eps, delta, stats);
  stats.pairs = 1;
  return stats;
}

struct FamilyGraphs {
  std::vector<uint64_t> graphs;
  bool exhaustive = false;
  std::string description;
};

absl::StatusOr<FamilyGraphs> BuildFamily(const SmallUniverse& universe,
                                         const AuditFamily& family,
                                         int default_sampled) {
  FamilyGraphs out;
  const std::string shape =
      absl::StrCat("n=", family.n, " h=", family.h, " ",
                   std::string(LabelSpaceName(family.space)));
  const int sampled = family.num_graphs.value_or(default_sampled);
  if (sampled <= 0) {
    if (universe.universe() > 24) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "exhaustive family over 2^", universe.universe(),
          " hypergraphs is too large; sample instead"));
    }
    out.exhaustive = true;
    out.graphs.resize(uint64_t{1} << universe.universe());
    for (uint64_t g = 0; g < out.graphs.size(); ++g) out.graphs[g] = g;
    out.description = absl::StrCat("exhaustive ", shape, " (",
                                   out.graphs.size(), " hypergraphs)");
    return out;
  }
  Rng rng(DeriveSeed(family.seed, {0x61756469u}));
  out.graphs.resize(sampled);
  for (uint64_t& g : out.graphs) g = rng.NextU64() & universe.full_mask();
  out.description = absl::StrCat("sampled ", shape, " (", sampled,
                                 " hypergraphs, seed ", family.seed, ")");
  return out;
}

// Exhaustive families visit each unordered pair once (from its smaller
// member); sampled families visit all neighbors of each sampled hypergraph.
absl::StatusOr<PairStats> AuditFamilyPairs(const SmallUniverse& universe,
                                           const FamilyGraphs& family,
                                           const ProbabilityFn& probabilities,
                                           double eps, double delta,
                                           int threads) {
  std::vector<PairStats> per_graph(family.graphs.size());
  std::vector<absl::Status> errors(family.graphs.size());
  ParallelFor(family.graphs.size(), threads, [&](size_t i) {
    const uint64_t g = family.graphs[i];
    auto base = probabilities(g);
    if (!base.ok()) {
      errors[i] = base.status();
      return;
    }
    for (int w = 0; w < universe.universe(); ++w) {
      const uint64_t bit = uint64_t{1} << w;
      if (family.exhaustive && (g & bit)) continue;
      auto other = probabilities(g ^ bit);
      if (!other.ok()) {
        errors[i] = other.status();
        return;
      }
      per_graph[i].Merge(ComparePair(*base, *other, eps, delta));
    }
  });
  PairStats total;
  for (size_t i = 0; i < per_graph.size(); ++i) {
    HYPERDP_RETURN_IF_ERROR(errors[i]);
    total.Merge(per_graph[i]);
  }
  return total;
}

void FillReport(const PairStats& stats, AuditReport& report) {
  report.pairs_checked = stats.pairs;
  report.max_divergence = stats.divergence;
  report.max_slack = std::max(0.0, stats.slack);
  report.max_pointwise_slack = std::max(0.0, stats.pointwise_slack);
  report.max_log_ratio = stats.log_ratio;
  report.certified = report.exact && report.max_slack <= kCertifyTolerance;
}

AuditReport NewReport(std::string mechanism, std::string family, double eps,
                      double delta, uint64_t graphs) {
  AuditReport report;
  report.mechanism = std::move(mechanism);
  report.family = std::move(family);
  report.eps = eps;
  report.delta = delta;
  report.graphs = graphs;
  return report;
}

absl::Status CheckFamilyShape(const AuditFamily& family, int n, int h) {
  if (family.n != n || family.h != h) {
    return absl::InvalidArgumentError(
        absl::StrCat("audit family is n=", family.n, " h=", family.h,
                     " but the model is n=", n, " h=", h));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<AuditMechanism> ParseAuditMechanism(std::string_view name) {
  if (name == "rr") return AuditMechanism::kRandomizedResponse;
  if (name == "stability") return AuditMechanism::kStability;
  if (name == "bayes") return AuditMechanism::kBayes;
  if (name == "expo" || name == "exponential") {
    return AuditMechanism::kExponential;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name),
                   "' (expected rr, stability, bayes or expo)"));
}

std::string_view AuditMechanismName(AuditMechanism mechanism) {
  switch (mechanism) {
    case AuditMechanism::kRandomizedResponse:
      return "rr";
    case AuditMechanism::kStability:
      return "stability";
    case AuditMechanism::kBayes:
      return "bayes";
    case AuditMechanism::kExponential:
      return "exponential";
  }
  return "unknown";
}

absl::StatusOr<AuditReport> AuditExponential(double eps,
                                             const AuditOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be positive and finite");
  }
  const AuditFamily& family = options.family;
  HYPERDP_ASSIGN_OR_RETURN(
      SmallUniverse universe,
      SmallUniverse::Create(family.n, family.h, family.space));
  HYPERDP_ASSIGN_OR_RETURN(
      FamilyGraphs graphs,
      BuildFamily(universe, family, kDefaultSampledGraphs));
  HYPERDP_ASSIGN_OR_RETURN(
      PairStats stats,
      AuditFamilyPairs(
          universe, graphs,
          [&](uint64_t g) -> absl::StatusOr<std::vector<double>> {
            return ExponentialProbabilities(universe, g, eps);
          },
          eps, 0.0, options.threads));
  AuditReport report = NewReport("exponential", graphs.description, eps, 0.0,
                                 graphs.graphs.size());
  FillReport(stats, report);
  report.note = "exact output distribution: normalized exp(-eps * Psi)";
  return report;
}

absl::StatusOr<AuditReport> AuditBayes(const ModelParams& params,
                                       const AuditOptions& options) {
  const AuditFamily& family = options.family;
  HYPERDP_RETURN_IF_ERROR(CheckFamilyShape(family, params.n, params.h));
  if (!(params.p > params.q && params.q > 0.0 && params.p < 1.0)) {
    return absl::InvalidArgumentError(
        "the Bayes audit needs 0 < q < p < 1");
  }
  HYPERDP_ASSIGN_OR_RETURN(
      SmallUniverse universe,
      SmallUniverse::Create(family.n, family.h, family.space));
  HYPERDP_ASSIGN_OR_RETURN(FamilyGraphs graphs,
                           BuildFamily(universe, family, 0));
  const double reference = std::log(params.p) + std::log1p(-params.q) -
                           std::log(params.q) - std::log1p(-params.p);
  HYPERDP_ASSIGN_OR_RETURN(
      PairStats stats,
      AuditFamilyPairs(
          universe, graphs,
          [&](uint64_t g) -> absl::StatusOr<std::vector<double>> {
            return BayesPosteriorProbabilities(universe, g, params);
          },
          reference, 0.0, options.threads));
  AuditReport report = NewReport("bayes", graphs.description, reference, 0.0,
                                 graphs.graphs.size());
  report.reference_eps = reference;
  FillReport(stats, report);
  report.note = absl::StrCat(
      "exact posterior under the uniform prior; audited at eps = "
      "ln(p(1-q)/(q(1-p))); smallest passing eps on this family = "
      "max_log_ratio (gap ",
      reference - stats.log_ratio, ")");
  return report;
}

absl::StatusOr<AuditReport> AuditStability(const ModelParams& params,
                                           const PrivacyBudget& budget,
                                           int k_max,
                                           const AuditOptions& options) {
  const AuditFamily& family = options.family;
  HYPERDP_RETURN_IF_ERROR(CheckFamilyShape(family, params.n, params.h));
  if (!(budget.eps > 0.0) || !(budget.delta > 0.0 && budget.delta <= 1.0)) {
    return absl::InvalidArgumentError(
        "the stability audit needs eps > 0 and delta in (0, 1]");
  }
  HYPERDP_ASSIGN_OR_RETURN(
      SmallUniverse universe,
      SmallUniverse::Create(family.n, family.h, family.space));
  HYPERDP_ASSIGN_OR_RETURN(FamilyGraphs graphs,
                           BuildFamily(universe, family, 0));
  // Every hypergraph's law is reused by C(n, h) pairs, so tabulate first
  // when the family is exhaustive.
  std::vector<std::vector<double>> table;
  if (graphs.exhaustive) {
    table.resize(graphs.graphs.size());
    std::vector<absl::Status> errors(table.size());
    ParallelFor(table.size(), options.threads, [&](size_t g) {
      auto probs =
          StabilityOutputProbabilities(universe, g, params, budget, k_max);
      if (probs.ok()) {
        table[g] = *std::move(probs);
      } else {
        errors[g] = probs.status();
      }
    });
    for (const absl::Status& status : errors) HYPERDP_RETURN_IF_ERROR(status);
  }
  HYPERDP_ASSIGN_OR_RETURN(
      PairStats stats,
      AuditFamilyPairs(
          universe, graphs,
          [&](uint64_t g) -> absl::StatusOr<std::vector<double>> {
            if (!table.empty()) return table[g];
            return StabilityOutputProbabilities(universe, g, params, budget,
                                                k_max);
          },
          budget.eps, budget.delta, options.threads));
  AuditReport report = NewReport("stability", graphs.description, budget.eps,
                                 budget.delta, graphs.graphs.size());
  FillReport(stats, report);
  report.note = absl::StrCat(
      "exact distance to instability of the ML estimate (tie-aware, cap ",
      k_max + 1, "); release probability integrated over the Laplace draw");
  return report;
}

absl::StatusOr<AuditReport> AuditRandomizedResponse(int n, int h, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be positive and finite");
  }
  HYPERDP_ASSIGN_OR_RETURN(SubsetCodec codec, SubsetCodec::Create(n, h));
  const uint64_t universe = codec.universe_size();
  const double nu = RrFlipProbability(eps);
  // One coordinate: keeps with 1 - nu, flips with nu. Any neighbor pair
  // differs in exactly one coordinate and the rest of the product cancels.
  const std::vector<double> present = {1.0 - nu, nu};
  const std::vector<double> absent = {nu, 1.0 - nu};
  PairStats stats = ComparePair(present, absent, eps, 0.0);
  stats.pairs = 0;
  AuditReport report = NewReport("rr", "", eps, 0.0, 0);
  report.closed_form_slack = 0.0;
  if (universe <= 10) {
    // Enumerate every hypergraph, neighbor and output.
    const uint64_t size = uint64_t{1} << universe;
    const double log_keep = std::log1p(-nu), log_flip = std::log(nu);
    auto law = [&](uint64_t g) {
      std::vector<double> probs(size);
      for (uint64_t y = 0; y < size; ++y) {
        const int flips = std::popcount(g ^ y);
        probs[y] = std::exp(flips * log_flip +
                            static_cast<double>(universe - flips) * log_keep);
      }
      return probs;
    };
    for (uint64_t g = 0; g < size; ++g) {
      const std::vector<double> base = law(g);
      for (uint64_t w = 0; w < universe; ++w) {
        if (g & (uint64_t{1} << w)) continue;
        stats.Merge(ComparePair(base, law(g | (uint64_t{1} << w)), eps, 0.0));
      }
    }
    report.graphs = size;
    report.family = absl::StrCat("exhaustive n=", n, " h=", h, " (", size,
                                 " hypergraphs, all outputs)");
    report.note =
        "output space enumerated; closed form (1-nu)/nu = e^eps per edge";
  } else {
    report.family = absl::StrCat("all neighbor pairs n=", n, " h=", h,
                                 " (product form, per-edge factor)");
    report.note =
        "closed form: neighbors differ in one independent coordinate whose "
        "likelihood ratio is (1-nu)/nu = e^eps";
  }
  // Without enumeration pairs_checked stays at the single representative
  // coordinate comparison, which covers every pair by symmetry.
  if (stats.pairs == 0) stats.pairs = 1;
  FillReport(stats, report);
  return report;
}

absl::StatusOr<AuditReport> MonteCarloAuditStabilitySurrogate(
    const ModelParams& params, const PrivacyBudget& budget,
    const MonteCarloOptions& options) {
  const AuditFamily& family = options.audit.family;
  HYPERDP_RETURN_IF_ERROR(CheckFamilyShape(family, params.n, params.h));
  if (options.samples < 1) {
    return absl::InvalidArgumentError("samples must be positive");
  }
  HYPERDP_ASSIGN_OR_RETURN(
      SmallUniverse universe,
      SmallUniverse::Create(family.n, family.h, family.space));
  AuditFamily sampled = family;
  if (!sampled.num_graphs.has_value() || *sampled.num_graphs <= 0) {
    sampled.num_graphs = 20;
  }
  HYPERDP_ASSIGN_OR_RETURN(FamilyGraphs graphs,
                           BuildFamily(universe, sampled, 0));
  StabilityOptions mech;
  mech.mode = DistanceMode::kSurrogate;
  mech.acknowledge_non_certified = true;
  mech.space = family.space;
  const size_t m = universe.num_labelings();
  const double exp_eps = std::exp(budget.eps);
  struct Estimate {
    double divergence = 0.0;
    double slack = 0.0;
    double upper = 0.0;
  };
  std::vector<Estimate> estimates(graphs.graphs.size());
  std::vector<absl::Status> errors(graphs.graphs.size());
  ParallelFor(graphs.graphs.size(), options.audit.threads, [&](size_t i) {
    Rng pick(DeriveSeed(family.seed, {0x6d63u, i}));
    const uint64_t g = graphs.graphs[i];
    const uint64_t neighbor = g ^ (uint64_t{1} << pick.UniformInt(
                                       static_cast<uint64_t>(universe.universe())));
    std::vector<double> freq[2];
    const uint64_t pair[2] = {g, neighbor};
    for (int side = 0; side < 2; ++side) {
      freq[side].assign(m, 0.0);
      const Hypergraph graph = universe.FromMask(pair[side]);
      const uint64_t stream = DeriveSeed(family.seed, {0x6d63u, i, side + 1u});
      for (int s = 0; s < options.samples; ++s) {
        auto out = MechStability(graph, params, budget, mech,
                                 {stream, static_cast<uint64_t>(s)});
        if (!out.ok()) {
          errors[i] = out.status();
          return;
        }
        auto index = universe.IndexOf(*out->labeling);
        if (!index.ok()) {
          errors[i] = index.status();
          return;
        }
        freq[side][*index] += 1.0 / options.samples;
      }
    }
    for (int side = 0; side < 2; ++side) {
      const std::vector<double>& p = freq[side];
      const std::vector<double>& q = freq[1 - side];
      double divergence = 0.0, upper = 0.0;
      for (size_t j = 0; j < m; ++j) {
        const double se_p = std::sqrt(p[j] * (1 - p[j]) / options.samples);
        const double se_q = std::sqrt(q[j] * (1 - q[j]) / options.samples);
        divergence += std::max(0.0, p[j] - exp_eps * q[j]);
        upper += std::max(0.0, p[j] + options.z * se_p -
                                   exp_eps * std::max(0.0, q[j] - options.z * se_q));
      }
      estimates[i].divergence = std::max(estimates[i].divergence, divergence);
      estimates[i].slack =
          std::max(estimates[i].slack, divergence - budget.delta);
      estimates[i].upper = std::max(estimates[i].upper, upper - budget.delta);
    }
  });
  AuditReport report =
      NewReport("stability_surrogate", graphs.description, budget.eps,
                budget.delta, graphs.graphs.size());
  report.pairs_checked = graphs.graphs.size();
  report.exact = false;
  report.certified = false;
  double slack = 0.0, upper = 0.0;
  for (size_t i = 0; i < estimates.size(); ++i) {
    HYPERDP_RETURN_IF_ERROR(errors[i]);
    report.max_divergence =
        std::max(report.max_divergence, estimates[i].divergence);
    slack = std::max(slack, estimates[i].slack);
    upper = std::max(upper, estimates[i].upper);
  }
  report.max_slack = std::max(0.0, slack);
  report.slack_upper_bound = std::max(0.0, upper);
  report.max_log_ratio = std::numeric_limits<double>::quiet_NaN();
  report.note = absl::StrCat(
      "Monte Carlo estimate from ", options.samples,
      " runs per hypergraph on one random neighbor pair each; the surrogate "
      "distance has no established sensitivity bound, so this is NOT "
      "CERTIFIED");
  return report;
}

absl::StatusOr<AuditReport> RunAudit(const AuditRequest& request) {
  const AuditFamily& family = request.options.family;
  switch (request.mechanism) {
    case AuditMechanism::kRandomizedResponse:
      return AuditRandomizedResponse(family.n, family.h, request.eps);
    case AuditMechanism::kExponential:
      return AuditExponential(request.eps, request.options);
    case AuditMechanism::kBayes: {
      HYPERDP_ASSIGN_OR_RETURN(
          ModelParams params,
          ModelParams::Create(family.n, family.h, request.a, request.b));
      return AuditBayes(params, request.options);
    }
    case AuditMechanism::kStability: {
      HYPERDP_ASSIGN_OR_RETURN(
          ModelParams params,
          ModelParams::Create(family.n, family.h, request.a, request.b));
      PrivacyBudget budget;
      if (request.t.has_value()) {
        HYPERDP_ASSIGN_OR_RETURN(
            budget, PrivacyBudget::FromExponent(family.n, request.eps,
                                                *request.t));
      } else {
        HYPERDP_ASSIGN_OR_RETURN(
            budget, PrivacyBudget::Create(request.eps, request.delta));
      }
      if (request.surrogate) {
        if (!request.monte_carlo) {
          return absl::FailedPreconditionError(
              "the surrogate-distance stability mechanism cannot be "
              "certified: its output law has no closed form with a proven "
              "sensitivity bound; request the Monte Carlo estimate instead");
        }
        return MonteCarloAuditStabilitySurrogate(
            params, budget,
            {.audit = request.options, .samples = request.samples});
      }
      return AuditStability(params, budget, request.k_max, request.options);
    }
  }
  return absl::InvalidArgumentError("unknown mechanism");
}

}  // namespace hyperdp
