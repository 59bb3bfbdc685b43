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

#ifndef HYPERDP_EXPERIMENTS_H_
#define HYPERDP_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperdp/label_space.h"
#include "json.hpp"

namespace hyperdp {

inline constexpr std::string_view kVersion = "hyperdp 0.1.0";

enum class ExperimentMechanism { kNone, kRr, kStability, kBayes, kExponential };
// "none", "rr", "stability", "bayes", "expo".
absl::StatusOr<ExperimentMechanism> ParseExperimentMechanism(
    std::string_view name);
std::string_view ExperimentMechanismName(ExperimentMechanism mechanism);

enum class EstimatorKind { kMl, kSpectral };
absl::StatusOr<EstimatorKind> ParseEstimatorKind(std::string_view name);
std::string_view EstimatorKindName(EstimatorKind kind);

// One sweep over either a (eps fixed) or eps (a fixed). JSON field names
// match the member names.
struct ExperimentConfig {
  int n = 100;
  int h = 3;
  double b = 1.0;
  std::vector<double> a_values;
  std::vector<double> eps_values;
  // Fixed counterparts of the sweep axis.
  double a = 13.0;
  double eps = 7.0;
  ExperimentMechanism mechanism = ExperimentMechanism::kNone;
  // Ignored by the sampling mechanisms (bayes, expo).
  EstimatorKind estimator = EstimatorKind::kSpectral;
  int trials = 100;
  uint64_t master_seed = 0;
  // Stability mechanism: delta = n^(-t).
  double t = 1.0;
  // Label space of the exhaustive estimators, samplers and ground truth.
  LabelSpace label_space = LabelSpace::kBalanced;
  // Required to run the stability mechanism with the surrogate distance
  // (whenever C(n, h) > 64 or the estimator is spectral).
  bool acknowledge_non_certified = false;
};

absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& json);
nlohmann::ordered_json ExperimentConfigToJson(const ExperimentConfig& config);
// Checks the sweep, trial count, model parameters at every point, and the
// mechanism/estimator caps. FailedPrecondition for an unacknowledged
// non-certified stability run.
absl::Status ValidateExperimentConfig(const ExperimentConfig& config);

// Trial seed: DeriveSeed(master, {point index, trial index}). Each trial
// draws its ground truth, hypergraph and mechanism noise from streams 0, 1
// and 2 of that seed, so different mechanisms with the same master seed see
// identical (truth, hypergraph) pairs.
uint64_t TrialSeed(uint64_t master, uint64_t point, uint64_t trial);

struct TrialRecord {
  std::string mechanism;
  std::string estimator;
  int n = 0;
  int h = 0;
  double a = 0.0;
  double b = 0.0;
  // Absent when the mechanism takes no such parameter.
  std::optional<double> eps;
  std::optional<double> t;
  int trial = 0;
  uint64_t seed = 0;
  double error = 0.0;
  bool exact_success = false;
};

struct SummaryRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  double mean_error = 0.0;
  double success_rate = 0.0;
  // Standard error of the mean error (sample standard deviation / sqrt
  // trials); 0 for a single trial.
  double stderr_error = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // by sweep point, then trial
  std::vector<SummaryRow> summary;
  double wall_seconds = 0.0;
};

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config,
                                               int threads = 1);

// Groups by sweep value ("a" or "eps") in first-appearance order.
absl::StatusOr<std::vector<SummaryRow>> Aggregate(
    const std::vector<TrialRecord>& records, std::string_view sweep_param);

// `mechanism,estimator,n,h,a,b,eps,t,trial,seed,error,exact_success`.
std::string TrialCsv(const std::vector<TrialRecord>& records);
// `sweep_param,sweep_value,mean_error,success_rate,stderr,trials`.
std::string SummaryCsv(const std::vector<SummaryRow>& rows);
absl::StatusOr<std::vector<TrialRecord>> ParseTrialCsv(std::string_view text);
absl::StatusOr<std::vector<SummaryRow>> ParseSummaryCsv(std::string_view text);

// Config echo, version and wall time.
nlohmann::ordered_json ExperimentManifest(const ExperimentConfig& config,
                                          const ExperimentResult& result);

}  // namespace hyperdp

#endif  // HYPERDP_EXPERIMENTS_H_
