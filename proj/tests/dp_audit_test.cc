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
#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hyperdp/estimators.h"
#include "hyperdp/mechanisms.h"

namespace hyperdp {
namespace {

using ::testing::HasSubstr;

struct Oracle {
  double divergence = 0.0;
  double log_ratio = 0.0;
};

// Worst hockey-stick divergence and log ratio over all neighbor pairs of
// all hypergraphs on the universe, both directions, by brute force.
template <typename Law>
Oracle BruteForce(const SmallUniverse& universe, double eps, Law law) {
  Oracle oracle;
  const uint64_t size = uint64_t{1} << universe.universe();
  for (uint64_t g = 0; g < size; ++g) {
    const std::vector<double> p = law(universe.FromMask(g));
    for (int w = 0; w < universe.universe(); ++w) {
      const std::vector<double> q = law(universe.FromMask(g ^ (1ull << w)));
      double divergence = 0.0;
      for (size_t j = 0; j < p.size(); ++j) {
        divergence += std::max(0.0, p[j] - std::exp(eps) * q[j]);
        oracle.log_ratio =
            std::max(oracle.log_ratio, std::abs(std::log(p[j] / q[j])));
      }
      oracle.divergence = std::max(oracle.divergence, divergence);
    }
  }
  return oracle;
}

AuditOptions FiveVertexFamily() {
  AuditOptions options;
  options.family = {.n = 5, .h = 3, .space = LabelSpace::kNearBalanced};
  return options;
}

TEST(AuditMechanismTest, Names) {
  EXPECT_EQ(*ParseAuditMechanism("rr"), AuditMechanism::kRandomizedResponse);
  EXPECT_EQ(*ParseAuditMechanism("expo"), AuditMechanism::kExponential);
  EXPECT_EQ(*ParseAuditMechanism("exponential"), AuditMechanism::kExponential);
  EXPECT_EQ(*ParseAuditMechanism("bayes"), AuditMechanism::kBayes);
  EXPECT_EQ(*ParseAuditMechanism("stability"), AuditMechanism::kStability);
  EXPECT_FALSE(ParseAuditMechanism("laplace").ok());
  EXPECT_EQ(AuditMechanismName(AuditMechanism::kBayes), "bayes");
}

TEST(SmallUniverseLawsTest, MatchHypergraphLevelDistributions) {
  auto universe = *SmallUniverse::Create(6, 3, LabelSpace::kBalanced);
  auto params = *ModelParams::Create(6, 3, 5, 1);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const uint64_t g = rng.NextU64() & universe.full_mask();
    const Hypergraph graph = universe.FromMask(g);
    auto bayes = *BayesPosterior(graph, params);
    auto expo = *ExponentialDistribution(graph, 1.3);
    const auto fast_bayes = BayesPosteriorProbabilities(universe, g, params);
    const auto fast_expo = ExponentialProbabilities(universe, g, 1.3);
    for (size_t j = 0; j < universe.num_labelings(); ++j) {
      ASSERT_EQ(bayes.masks[j], universe.plus_mask(j));
      EXPECT_NEAR(fast_bayes[j], bayes.probabilities[j], 1e-15);
      EXPECT_NEAR(fast_expo[j], expo.probabilities[j], 1e-15);
    }
  }
}

TEST(SmallUniverseLawsTest, StabilityLawMatchesComponents) {
  auto universe = *SmallUniverse::Create(5, 3, LabelSpace::kNearBalanced);
  auto params = *ModelParams::Create(5, 3, 3, 1);
  auto budget = *PrivacyBudget::Create(1.0, 0.05);
  const ExhaustiveOptions exhaustive{.space = LabelSpace::kNearBalanced};
  for (uint64_t g = 0; g < 1024; g += 7) {
    const Hypergraph graph = universe.FromMask(g);
    auto probs = *StabilityOutputProbabilities(universe, g, params, budget);
    const int d = DistanceToInstabilityExact(graph, params, 3, exhaustive)->d;
    const Labeling ml = MlExhaustive(graph, params, exhaustive)->labeling;
    const double release = StabilityReleaseProbability(d, budget);
    double total = 0.0;
    for (size_t j = 0; j < probs.size(); ++j) {
      const double expected =
          (1 - release) / 10 + (universe.labeling(j) == ml ? release : 0.0);
      EXPECT_NEAR(probs[j], expected, 1e-15);
      total += probs[j];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExponentialAuditTest, SampledSixVertexFamilyHasZeroSlack) {
  for (LabelSpace space : {LabelSpace::kBalanced, LabelSpace::kAll}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      AuditOptions options;
      options.family.space = space;
      auto report = AuditExponential(eps, options);
      ASSERT_TRUE(report.ok());
      EXPECT_EQ(report->graphs, 50u);
      EXPECT_EQ(report->pairs_checked, 50u * 20u);
      EXPECT_EQ(report->max_slack, 0.0);
      EXPECT_LE(report->max_log_ratio, eps);
      EXPECT_TRUE(report->certified);
      EXPECT_TRUE(report->exact);
    }
  }
}

TEST(ExponentialAuditTest, ExhaustiveFamilyMatchesBruteForce) {
  auto universe = *SmallUniverse::Create(5, 3, LabelSpace::kNearBalanced);
  const double eps = 0.9;
  auto report = AuditExponential(eps, [] {
    AuditOptions options = FiveVertexFamily();
    options.family.num_graphs = 0;
    return options;
  }());
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->pairs_checked, 5120u);
  const Oracle oracle = BruteForce(universe, eps, [&](const Hypergraph& g) {
    return ExponentialDistribution(
               g, eps, {.space = LabelSpace::kNearBalanced})
        ->probabilities;
  });
  EXPECT_NEAR(report->max_log_ratio, oracle.log_ratio, 1e-12);
  EXPECT_NEAR(report->max_divergence, oracle.divergence, 1e-15);
  // Adding one hyperedge moves every cross count by 0 or 1, so the ratio
  // stays below e^eps.
  EXPECT_LE(oracle.log_ratio, eps);
}

TEST(BayesAuditTest, ExactWorstRatioAtSixVertices) {
  // Every triple is monochromatic under exactly one balanced labeling, so
  // the posterior is proportional to R^m_j with m_j in {0, 1, 2}; the worst
  // neighbor pair adds the second triple of a labeling whose rivals hold
  // both of theirs: ratio (1 + 9R^2) / (9R + 1), strictly below R.
  auto params = *ModelParams::Create(6, 3, 5, 1);
  const double ratio = params.p * (1 - params.q) / (params.q * (1 - params.p));
  AuditOptions options;
  options.threads = 2;
  auto report = AuditBayes(params, options);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->graphs, 1u << 20);
  EXPECT_EQ(report->pairs_checked, 20u << 19);
  EXPECT_NEAR(*report->reference_eps, std::log(ratio), 1e-12);
  EXPECT_NEAR(report->max_log_ratio,
              std::log((1 + 9 * ratio * ratio) / (9 * ratio + 1)), 1e-12);
  EXPECT_LT(report->max_log_ratio, *report->reference_eps);
  EXPECT_EQ(report->max_slack, 0.0);
  EXPECT_TRUE(report->certified);
}

TEST(BayesAuditTest, AllLabelingsMatchesBruteForce) {
  auto universe = *SmallUniverse::Create(4, 3, LabelSpace::kAll);
  auto params = *ModelParams::FromProbabilities(4, 3, 0.8, 0.3);
  AuditOptions options;
  options.family = {.n = 4, .h = 3, .space = LabelSpace::kAll};
  auto report = AuditBayes(params, options);
  ASSERT_TRUE(report.ok());
  const Oracle oracle =
      BruteForce(universe, *report->reference_eps, [&](const Hypergraph& g) {
        return BayesPosterior(g, params, {.space = LabelSpace::kAll})
            ->probabilities;
      });
  EXPECT_NEAR(report->max_log_ratio, oracle.log_ratio, 1e-12);
  EXPECT_NEAR(report->max_divergence, oracle.divergence, 1e-15);
  EXPECT_TRUE(report->certified);
}

TEST(BayesAuditTest, RejectsMismatchedFamily) {
  auto params = *ModelParams::Create(5, 3, 3, 1);
  EXPECT_EQ(AuditBayes(params, {}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(StabilityAuditTest, ExhaustiveFiveVertexFamilyPassesGrid) {
  auto params = *ModelParams::Create(5, 3, 3, 1);
  for (double eps : {0.5, 1.0, 2.0}) {
    for (double t : {1.0, 2.0, 3.0}) {
      auto budget = *PrivacyBudget::FromExponent(5, eps, t);
      auto report = AuditStability(params, budget, 3, FiveVertexFamily());
      ASSERT_TRUE(report.ok());
      EXPECT_EQ(report->graphs, 1024u);
      EXPECT_EQ(report->pairs_checked, 5120u);
      EXPECT_LE(report->max_slack, kCertifyTolerance) << eps << " " << t;
      EXPECT_TRUE(report->certified);
    }
  }
}

TEST(StabilityAuditTest, DivergenceMatchesBruteForce) {
  auto universe = *SmallUniverse::Create(5, 3, LabelSpace::kNearBalanced);
  auto params = *ModelParams::Create(5, 3, 3, 1);
  auto budget = *PrivacyBudget::Create(0.7, 0.3);
  auto report = AuditStability(params, budget, 3, FiveVertexFamily());
  ASSERT_TRUE(report.ok());
  const ExhaustiveOptions exhaustive{.space = LabelSpace::kNearBalanced};
  const Oracle oracle =
      BruteForce(universe, budget.eps, [&](const Hypergraph& g) {
        const int d = DistanceToInstabilityExact(g, params, 3, exhaustive)->d;
        const Labeling ml = MlExhaustive(g, params, exhaustive)->labeling;
        const double release = StabilityReleaseProbability(d, budget);
        std::vector<double> probs(10, (1 - release) / 10);
        probs[*universe.IndexOf(ml)] += release;
        return probs;
      });
  EXPECT_NEAR(report->max_divergence, oracle.divergence, 1e-12);
  EXPECT_NEAR(report->max_log_ratio, oracle.log_ratio, 1e-9);
  EXPECT_GT(report->max_divergence, 0.0);
  EXPECT_LE(report->max_divergence, budget.delta);
}

TEST(StabilityAuditTest, SurrogateRefusedWithoutMonteCarlo) {
  AuditRequest request{.mechanism = AuditMechanism::kStability,
                       .eps = 1.0,
                       .t = 1.0,
                       .a = 3.0,
                       .surrogate = true};
  request.options.family = {.n = 5, .h = 3,
                            .space = LabelSpace::kNearBalanced};
  auto refused = RunAudit(request);
  EXPECT_EQ(refused.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(refused.status().message(), HasSubstr("cannot be certified"));

  request.monte_carlo = true;
  request.samples = 500;
  request.options.family.num_graphs = 5;
  auto estimate = RunAudit(request);
  ASSERT_TRUE(estimate.ok());
  EXPECT_EQ(estimate->mechanism, "stability_surrogate");
  EXPECT_FALSE(estimate->exact);
  EXPECT_FALSE(estimate->certified);
  EXPECT_THAT(estimate->note, HasSubstr("NOT CERTIFIED"));
  ASSERT_TRUE(estimate->slack_upper_bound.has_value());
  EXPECT_GE(*estimate->slack_upper_bound, estimate->max_slack);
}

TEST(RandomizedResponseAuditTest, ClosedFormSlackIsZero) {
  for (int n = 4; n <= 8; ++n) {
    for (double eps : {0.5, 1.0, 7.0}) {
      auto report = AuditRandomizedResponse(n, 3, eps);
      ASSERT_TRUE(report.ok());
      EXPECT_EQ(*report->closed_form_slack, 0.0);
      EXPECT_LE(report->max_slack, kCertifyTolerance);
      EXPECT_NEAR(report->max_log_ratio, eps, 1e-9);
      EXPECT_TRUE(report->certified);
    }
  }
  // n = 5, h = 3 enumerates all 1024 x 1024 (hypergraph, output) pairs.
  auto enumerated = AuditRandomizedResponse(5, 3, 1.0);
  EXPECT_EQ(enumerated->pairs_checked, 5120u);
}

TEST(AuditTest, ThreadCountDoesNotChangeReport) {
  auto params = *ModelParams::Create(5, 3, 3, 1);
  auto budget = *PrivacyBudget::Create(1.0, 0.1);
  AuditOptions one = FiveVertexFamily();
  AuditOptions four = FiveVertexFamily();
  four.threads = 4;
  auto a = *AuditStability(params, budget, 3, one);
  auto b = *AuditStability(params, budget, 3, four);
  EXPECT_EQ(a.max_divergence, b.max_divergence);
  EXPECT_EQ(a.max_log_ratio, b.max_log_ratio);
  EXPECT_EQ(a.pairs_checked, b.pairs_checked);
  auto x = *AuditExponential(1.0, {.threads = 1});
  auto y = *AuditExponential(1.0, {.threads = 3});
  EXPECT_EQ(x.max_log_ratio, y.max_log_ratio);
  EXPECT_EQ(x.family, y.family);
}

TEST(AuditTest, ExhaustiveFamilyCap) {
  AuditOptions options;
  options.family = {
      .n = 7, .h = 3, .space = LabelSpace::kNearBalanced, .num_graphs = 0};
  EXPECT_EQ(AuditExponential(1.0, options).status().code(),
            absl::StatusCode::kResourceExhausted);
  options.family.num_graphs = 10;
  EXPECT_TRUE(AuditExponential(1.0, options).ok());
}

}  // namespace
}  // namespace hyperdp
