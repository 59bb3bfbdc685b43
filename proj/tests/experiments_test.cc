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

#include "hyperdp/experiments.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hyperdp/random.h"

namespace hyperdp {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

constexpr char kTrialHeader[] =
    "mechanism,estimator,n,h,a,b,eps,t,trial,seed,error,exact_success\n";
constexpr char kSummaryHeader[] =
    "sweep_param,sweep_value,mean_error,success_rate,stderr,trials\n";

TrialRecord Record(double a, double error) {
  TrialRecord r;
  r.mechanism = "none";
  r.estimator = "spectral";
  r.n = 10;
  r.h = 3;
  r.a = a;
  r.b = 1.0;
  r.error = error;
  r.exact_success = error == 0.0;
  return r;
}

ExperimentConfig SmallRrConfig() {
  ExperimentConfig config;
  config.n = 30;
  config.h = 3;
  config.b = 1.0;
  config.a_values = {6.0, 14.0};
  config.eps = 4.0;
  config.mechanism = ExperimentMechanism::kRr;
  config.estimator = EstimatorKind::kSpectral;
  config.trials = 6;
  config.master_seed = 2024;
  return config;
}

TEST(AggregateTest, AllZeroErrorsGiveFullSuccess) {
  auto rows = Aggregate({Record(5, 0), Record(5, 0), Record(5, 0)}, "a");
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].success_rate, 1.0);
  EXPECT_EQ((*rows)[0].mean_error, 0.0);
  EXPECT_EQ((*rows)[0].stderr_error, 0.0);
  EXPECT_EQ((*rows)[0].trials, 3);
}

TEST(AggregateTest, MeanAndStandardError) {
  auto rows = Aggregate({Record(5, 0.0), Record(5, 0.5)}, "a");
  ASSERT_TRUE(rows.ok());
  EXPECT_DOUBLE_EQ((*rows)[0].mean_error, 0.25);
  EXPECT_DOUBLE_EQ((*rows)[0].success_rate, 0.5);
  // Sample sd sqrt(0.125) over sqrt(2).
  EXPECT_DOUBLE_EQ((*rows)[0].stderr_error, 0.25);
}

TEST(AggregateTest, GroupsBySweepValueInOrder) {
  auto rows = Aggregate(
      {Record(7, 0.1), Record(3, 0.0), Record(7, 0.3), Record(3, 0.2)}, "a");
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 2u);
  EXPECT_EQ((*rows)[0].sweep_value, 7.0);
  EXPECT_DOUBLE_EQ((*rows)[0].mean_error, 0.2);
  EXPECT_EQ((*rows)[1].sweep_value, 3.0);
  EXPECT_DOUBLE_EQ((*rows)[1].success_rate, 0.5);
}

TEST(AggregateTest, SingleTrialHasZeroStandardError) {
  auto rows = Aggregate({Record(5, 0.4)}, "a");
  ASSERT_TRUE(rows.ok());
  EXPECT_EQ((*rows)[0].stderr_error, 0.0);
}

TEST(AggregateTest, RejectsEmptyAndMissingEps) {
  EXPECT_FALSE(Aggregate({}, "a").ok());
  EXPECT_FALSE(Aggregate({Record(5, 0)}, "eps").ok());
  EXPECT_FALSE(Aggregate({Record(5, 0)}, "b").ok());
}

TEST(CsvTest, EmptyRecordListIsHeaderOnly) {
  EXPECT_EQ(TrialCsv({}), kTrialHeader);
  EXPECT_EQ(SummaryCsv({}), kSummaryHeader);
}

TEST(CsvTest, TrialCsvRoundTrips) {
  TrialRecord quoted = Record(10.6008, 0.03);
  quoted.mechanism = "odd,name \"x\"";
  quoted.eps = 5.8611;
  quoted.t = 1.0;
  quoted.seed = 18446744073709551615ull;
  quoted.trial = 99;
  const std::vector<TrialRecord> records = {Record(5, 0.0), quoted,
                                            Record(1.0 / 3.0, 0.1)};
  const std::string csv = TrialCsv(records);
  EXPECT_THAT(csv, StartsWith(kTrialHeader));
  auto parsed = ParseTrialCsv(csv);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& a = records[i];
    const TrialRecord& b = (*parsed)[i];
    EXPECT_EQ(a.mechanism, b.mechanism);
    EXPECT_EQ(a.estimator, b.estimator);
    EXPECT_EQ(a.n, b.n);
    EXPECT_EQ(a.h, b.h);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.b, b.b);
    EXPECT_EQ(a.eps, b.eps);
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.trial, b.trial);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.error, b.error);
    EXPECT_EQ(a.exact_success, b.exact_success);
  }
  EXPECT_EQ(TrialCsv(*parsed), csv);
}

TEST(CsvTest, SummaryCsvRoundTrips) {
  auto rows = Aggregate({Record(5, 0.0), Record(5, 0.5), Record(9, 0.01)}, "a");
  ASSERT_TRUE(rows.ok());
  const std::string csv = SummaryCsv(*rows);
  auto parsed = ParseSummaryCsv(csv);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(SummaryCsv(*parsed), csv);
  for (const SummaryRow& row : *parsed) {
    EXPECT_GE(row.success_rate, 0.0);
    EXPECT_LE(row.success_rate, 1.0);
  }
}

TEST(CsvTest, ParsersRejectWrongHeaderAndWidth) {
  EXPECT_FALSE(ParseTrialCsv("a,b\n").ok());
  EXPECT_FALSE(ParseSummaryCsv(kTrialHeader).ok());
  EXPECT_FALSE(
      ParseSummaryCsv(std::string(kSummaryHeader) + "a,1,0\n").ok());
  EXPECT_FALSE(ParseTrialCsv("").ok());
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig config = SmallRrConfig();
  config.label_space = LabelSpace::kNearBalanced;
  config.master_seed = 18446744073709551615ull;
  auto back = ExperimentConfigFromJson(ExperimentConfigToJson(config));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ExperimentConfigToJson(*back), ExperimentConfigToJson(config));
  EXPECT_EQ(back->master_seed, config.master_seed);
  EXPECT_EQ(back->label_space, LabelSpace::kNearBalanced);
}

TEST(ConfigTest, JsonRejectsUnknownAndMistypedFields) {
  EXPECT_FALSE(ExperimentConfigFromJson({{"trails", 3}}).ok());
  EXPECT_FALSE(ExperimentConfigFromJson({{"n", 3.5}}).ok());
  EXPECT_FALSE(ExperimentConfigFromJson({{"mechanism", "laplace"}}).ok());
  EXPECT_FALSE(ExperimentConfigFromJson({{"master_seed", -1}}).ok());
  EXPECT_FALSE(ExperimentConfigFromJson(nlohmann::json::array()).ok());
}

TEST(ConfigTest, ValidationRules) {
  ExperimentConfig both = SmallRrConfig();
  both.eps_values = {1.0};
  EXPECT_FALSE(ValidateExperimentConfig(both).ok());

  ExperimentConfig neither = SmallRrConfig();
  neither.a_values.clear();
  EXPECT_FALSE(ValidateExperimentConfig(neither).ok());

  ExperimentConfig eps_for_none = SmallRrConfig();
  eps_for_none.a_values.clear();
  eps_for_none.eps_values = {1.0, 2.0};
  eps_for_none.mechanism = ExperimentMechanism::kNone;
  EXPECT_FALSE(ValidateExperimentConfig(eps_for_none).ok());

  ExperimentConfig zero_trials = SmallRrConfig();
  zero_trials.trials = 0;
  EXPECT_FALSE(ValidateExperimentConfig(zero_trials).ok());

  ExperimentConfig ml_large = SmallRrConfig();
  ml_large.estimator = EstimatorKind::kMl;
  EXPECT_FALSE(ValidateExperimentConfig(ml_large).ok());

  ExperimentConfig bayes_large = SmallRrConfig();
  bayes_large.mechanism = ExperimentMechanism::kBayes;
  EXPECT_FALSE(ValidateExperimentConfig(bayes_large).ok());

  ExperimentConfig infeasible = SmallRrConfig();
  infeasible.n = 10;
  infeasible.a_values = {10000.0};
  EXPECT_FALSE(ValidateExperimentConfig(infeasible).ok());

  ExperimentConfig odd_balanced = SmallRrConfig();
  odd_balanced.n = 31;
  EXPECT_FALSE(ValidateExperimentConfig(odd_balanced).ok());
  odd_balanced.label_space = LabelSpace::kNearBalanced;
  EXPECT_TRUE(ValidateExperimentConfig(odd_balanced).ok());

  EXPECT_TRUE(ValidateExperimentConfig(SmallRrConfig()).ok());
}

TEST(ConfigTest, SurrogateStabilityNeedsAcknowledgment) {
  ExperimentConfig config = SmallRrConfig();
  config.mechanism = ExperimentMechanism::kStability;
  config.trials = 2;
  auto refused = RunExperiment(config);
  ASSERT_FALSE(refused.ok());
  EXPECT_EQ(refused.status().code(), absl::StatusCode::kFailedPrecondition);

  config.acknowledge_non_certified = true;
  auto run = RunExperiment(config);
  ASSERT_TRUE(run.ok()) << run.status();
  for (const TrialRecord& r : run->records) {
    EXPECT_EQ(r.mechanism, "stability_surrogate");
    EXPECT_EQ(r.estimator, "spectral");
    EXPECT_EQ(r.t, 1.0);
    EXPECT_EQ(r.eps, 4.0);
  }
  EXPECT_EQ(ExperimentManifest(config, *run)["certified"], false);
}

TEST(RunExperimentTest, RecordsFollowSeedDerivationAndOrder) {
  const ExperimentConfig config = SmallRrConfig();
  auto run = RunExperiment(config);
  ASSERT_TRUE(run.ok()) << run.status();
  ASSERT_EQ(run->records.size(), 12u);
  for (size_t i = 0; i < run->records.size(); ++i) {
    const TrialRecord& r = run->records[i];
    const size_t point = i / 6;
    EXPECT_EQ(r.trial, static_cast<int>(i % 6));
    EXPECT_EQ(r.a, config.a_values[point]);
    EXPECT_EQ(r.seed, DeriveSeed(config.master_seed, {point, i % 6}));
    EXPECT_EQ(r.seed, TrialSeed(config.master_seed, point, i % 6));
    EXPECT_EQ(r.mechanism, "rr");
    EXPECT_EQ(r.eps, 4.0);
    EXPECT_FALSE(r.t.has_value());
    EXPECT_GE(r.error, 0.0);
    EXPECT_LE(r.error, 0.5);
    EXPECT_EQ(r.exact_success, r.error == 0.0);
  }
  ASSERT_EQ(run->summary.size(), 2u);
  EXPECT_EQ(run->summary[0].sweep_param, "a");
}

TEST(RunExperimentTest, SummaryMatchesRecomputationFromSavedCsv) {
  auto run = RunExperiment(SmallRrConfig());
  ASSERT_TRUE(run.ok());
  auto records = ParseTrialCsv(TrialCsv(run->records));
  ASSERT_TRUE(records.ok());
  // Independent recomputation, keyed by a.
  std::map<double, std::vector<double>> errors;
  for (const TrialRecord& r : *records) errors[r.a].push_back(r.error);
  for (const SummaryRow& row : run->summary) {
    const std::vector<double>& e = errors[row.sweep_value];
    double sum = 0.0;
    int zeros = 0;
    for (double x : e) {
      sum += x;
      zeros += x == 0.0;
    }
    const double mean = sum / e.size();
    double ss = 0.0;
    for (double x : e) ss += (x - mean) * (x - mean);
    EXPECT_NEAR(row.mean_error, mean, 1e-15);
    EXPECT_DOUBLE_EQ(row.success_rate, static_cast<double>(zeros) / e.size());
    EXPECT_NEAR(row.stderr_error, std::sqrt(ss / (e.size() - 1) / e.size()),
                1e-15);
    EXPECT_EQ(row.trials, static_cast<int>(e.size()));
  }
}

TEST(RunExperimentTest, ByteIdenticalAcrossThreadCounts) {
  const ExperimentConfig config = SmallRrConfig();
  auto one = RunExperiment(config, 1);
  ASSERT_TRUE(one.ok());
  const std::string trials = TrialCsv(one->records);
  const std::string summary = SummaryCsv(one->summary);
  for (int threads : {4, 8}) {
    auto many = RunExperiment(config, threads);
    ASSERT_TRUE(many.ok());
    EXPECT_EQ(TrialCsv(many->records), trials) << threads;
    EXPECT_EQ(SummaryCsv(many->summary), summary) << threads;
  }
}

TEST(RunExperimentTest, SingleTrialRerunIsByteIdentical) {
  ExperimentConfig config = SmallRrConfig();
  config.trials = 1;
  auto first = RunExperiment(config);
  auto second = RunExperiment(config);
  ASSERT_TRUE(first.ok() && second.ok());
  EXPECT_EQ(TrialCsv(first->records), TrialCsv(second->records));
  config.master_seed += 1;
  auto other = RunExperiment(config);
  ASSERT_TRUE(other.ok());
  EXPECT_NE(TrialCsv(first->records), TrialCsv(other->records));
}

TEST(RunExperimentTest, MechanismsShareTruthAndGraphStreams) {
  // With eps = 60 randomized response flips nothing in practice, so RR +
  // spectral must reproduce the non-private errors trial by trial.
  ExperimentConfig none = SmallRrConfig();
  none.mechanism = ExperimentMechanism::kNone;
  ExperimentConfig rr = SmallRrConfig();
  rr.eps = 60.0;
  auto a = RunExperiment(none);
  auto b = RunExperiment(rr);
  ASSERT_TRUE(a.ok() && b.ok());
  ASSERT_EQ(a->records.size(), b->records.size());
  for (size_t i = 0; i < a->records.size(); ++i) {
    EXPECT_EQ(a->records[i].seed, b->records[i].seed);
    EXPECT_EQ(a->records[i].error, b->records[i].error) << i;
    EXPECT_FALSE(a->records[i].eps.has_value());
  }
}

TEST(RunExperimentTest, EpsSweepRecordsEps) {
  ExperimentConfig config = SmallRrConfig();
  config.a_values.clear();
  config.a = 13.0;
  config.eps_values = {2.0, 9.0};
  config.trials = 3;
  auto run = RunExperiment(config);
  ASSERT_TRUE(run.ok()) << run.status();
  ASSERT_EQ(run->summary.size(), 2u);
  EXPECT_EQ(run->summary[0].sweep_param, "eps");
  EXPECT_EQ(run->summary[1].sweep_value, 9.0);
  for (const TrialRecord& r : run->records) EXPECT_EQ(r.a, 13.0);
}

TEST(RunExperimentTest, SmallExhaustiveMechanisms) {
  ExperimentConfig config;
  config.n = 6;
  config.h = 3;
  config.b = 1.0;
  config.a_values = {3.0};
  config.eps = 1.0;
  config.trials = 4;
  config.estimator = EstimatorKind::kMl;
  for (auto [mechanism, label, estimator] :
       std::vector<std::tuple<ExperimentMechanism, std::string, std::string>>{
           {ExperimentMechanism::kNone, "none", "ml"},
           {ExperimentMechanism::kRr, "rr", "ml"},
           {ExperimentMechanism::kStability, "stability", "ml"},
           {ExperimentMechanism::kBayes, "bayes", "sampling"},
           {ExperimentMechanism::kExponential, "expo", "sampling"}}) {
    config.mechanism = mechanism;
    auto run = RunExperiment(config, 2);
    ASSERT_TRUE(run.ok()) << label << ": " << run.status();
    for (const TrialRecord& r : run->records) {
      EXPECT_EQ(r.mechanism, label);
      EXPECT_EQ(r.estimator, estimator);
      EXPECT_EQ(r.eps.has_value(),
                label == "rr" || label == "stability" || label == "expo");
      EXPECT_EQ(r.t.has_value(), label == "stability");
    }
    EXPECT_EQ(ExperimentManifest(config, *run)["certified"], true);
  }
}

TEST(RunExperimentTest, ErrorFallsWithAssortativity) {
  ExperimentConfig config;
  config.n = 60;
  config.h = 3;
  config.b = 1.0;
  config.a_values = {3.0, 30.0};
  config.mechanism = ExperimentMechanism::kNone;
  config.estimator = EstimatorKind::kSpectral;
  config.trials = 20;
  config.master_seed = 5;
  auto run = RunExperiment(config);
  ASSERT_TRUE(run.ok());
  EXPECT_GT(run->summary[0].mean_error, run->summary[1].mean_error);
  EXPECT_GT(run->summary[1].success_rate, 0.9);
}

TEST(ManifestTest, EchoesConfigAndVersion) {
  const ExperimentConfig config = SmallRrConfig();
  auto run = RunExperiment(config);
  ASSERT_TRUE(run.ok());
  const auto manifest = ExperimentManifest(config, *run);
  EXPECT_EQ(manifest["version"], std::string(kVersion));
  EXPECT_EQ(manifest["config"], ExperimentConfigToJson(config));
  EXPECT_GE(manifest["wall_seconds"].get<double>(), 0.0);
  EXPECT_EQ(manifest["records"], 12);
  EXPECT_THAT(manifest["trial_seed"].get<std::string>(),
              HasSubstr("DeriveSeed"));
}

}  // namespace
}  // namespace hyperdp
