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

#include <chrono>
#include <cmath>
#include <cstddef>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hyperdp/combinatorics.h"
#include "hyperdp/csv.h"
#include "hyperdp/estimators.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/mechanisms.h"
#include "hyperdp/parallel.h"
#include "hyperdp/random.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {
namespace {

constexpr std::string_view kTrialHeader =
    "mechanism,estimator,n,h,a,b,eps,t,trial,seed,error,exact_success";
constexpr std::string_view kSummaryHeader =
    "sweep_param,sweep_value,mean_error,success_rate,stderr,trials";

bool UsesEps(ExperimentMechanism m) {
  return m == ExperimentMechanism::kRr || m == ExperimentMechanism::kStability ||
         m == ExperimentMechanism::kExponential;
}

bool IsSampling(ExperimentMechanism m) {
  return m == ExperimentMechanism::kBayes ||
         m == ExperimentMechanism::kExponential;
}

bool SweepsA(const ExperimentConfig& config) {
  return !config.a_values.empty();
}

// Stability runs with the exact distance only for the exhaustive ML
// estimator over a universe of at most 64 potential hyperedges.
bool StabilityIsExact(const ExperimentConfig& config) {
  if (config.estimator != EstimatorKind::kMl) return false;
  absl::StatusOr<uint64_t> universe = Binom64(config.n, config.h);
  return universe.ok() && *universe <= SmallUniverse::kMaxUniverse;
}

struct Point {
  double a = 0.0;
  double eps = 0.0;
};

std::vector<Point> Points(const ExperimentConfig& config) {
  std::vector<Point> points;
  if (SweepsA(config)) {
    for (double a : config.a_values) points.push_back({a, config.eps});
  } else {
    for (double eps : config.eps_values) points.push_back({config.a, eps});
  }
  return points;
}

std::string MechanismLabel(const ExperimentConfig& config) {
  if (config.mechanism == ExperimentMechanism::kStability &&
      !StabilityIsExact(config)) {
    return "stability_surrogate";
  }
  return std::string(ExperimentMechanismName(config.mechanism));
}

std::string EstimatorLabel(const ExperimentConfig& config) {
  if (IsSampling(config.mechanism)) return "sampling";
  return std::string(EstimatorKindName(config.estimator));
}

absl::StatusOr<Labeling> SampleTruth(const ExperimentConfig& config,
                                     uint64_t seed) {
  const Seed truth_seed{seed, 0};
  switch (config.label_space) {
    case LabelSpace::kBalanced:
      return SampleGroundTruth(config.n, GroundTruthMode::kBalanced,
                               truth_seed);
    case LabelSpace::kAll:
      return SampleGroundTruth(config.n, GroundTruthMode::kUniformIid,
                               truth_seed);
    case LabelSpace::kNearBalanced: {
      Rng rng(truth_seed);
      return SampleUniformLabeling(config.n, config.label_space, rng);
    }
  }
  return absl::InternalError("unknown label space");
}

absl::StatusOr<Labeling> Estimate(const ExperimentConfig& config,
                                  const Hypergraph& graph,
                                  const ModelParams& params) {
  if (config.estimator == EstimatorKind::kMl) {
    HYPERDP_ASSIGN_OR_RETURN(
        RecoveryResult ml,
        MlExhaustive(graph, params, {.space = config.label_space}));
    return ml.labeling;
  }
  HYPERDP_ASSIGN_OR_RETURN(RecoveryResult spectral, SpectralRecover(graph));
  return spectral.labeling;
}

// Model seen by the estimator after randomized response: every potential
// hyperedge flips with probability nu.
absl::StatusOr<ModelParams> PerturbedParams(const ModelParams& params,
                                            double eps) {
  const double nu = RrFlipProbability(eps);
  return ModelParams::FromProbabilities(
      params.n, params.h, params.p * (1.0 - nu) + (1.0 - params.p) * nu,
      params.q * (1.0 - nu) + (1.0 - params.q) * nu);
}

absl::StatusOr<TrialRecord> RunTrial(const ExperimentConfig& config,
                                     const Point& point, int trial,
                                     uint64_t seed) {
  HYPERDP_ASSIGN_OR_RETURN(
      ModelParams params,
      ModelParams::Create(config.n, config.h, point.a, config.b));
  HYPERDP_ASSIGN_OR_RETURN(Labeling truth, SampleTruth(config, seed));
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph,
                           SampleHypergraph(params, truth, Seed{seed, 1}));
  const Seed mechanism_seed{seed, 2};
  const ExhaustiveOptions exhaustive{.space = config.label_space};

  Labeling estimate = truth;
  switch (config.mechanism) {
    case ExperimentMechanism::kNone: {
      HYPERDP_ASSIGN_OR_RETURN(estimate, Estimate(config, graph, params));
      break;
    }
    case ExperimentMechanism::kRr: {
      HYPERDP_ASSIGN_OR_RETURN(
          Hypergraph perturbed,
          RandomizedResponse(graph, point.eps, mechanism_seed));
      ModelParams seen = params;
      if (config.estimator == EstimatorKind::kMl) {
        HYPERDP_ASSIGN_OR_RETURN(seen, PerturbedParams(params, point.eps));
      }
      HYPERDP_ASSIGN_OR_RETURN(estimate, Estimate(config, perturbed, seen));
      break;
    }
    case ExperimentMechanism::kStability: {
      HYPERDP_ASSIGN_OR_RETURN(
          PrivacyBudget budget,
          PrivacyBudget::FromExponent(config.n, point.eps, config.t));
      StabilityOptions options;
      options.space = config.label_space;
      if (StabilityIsExact(config)) {
        options.mode = DistanceMode::kExact;
      } else {
        options.mode = DistanceMode::kSurrogate;
        options.acknowledge_non_certified = config.acknowledge_non_certified;
        if (config.estimator == EstimatorKind::kSpectral) {
          options.estimator =
              [](const Hypergraph& g) -> absl::StatusOr<Labeling> {
            HYPERDP_ASSIGN_OR_RETURN(RecoveryResult r, SpectralRecover(g));
            return r.labeling;
          };
        }
      }
      HYPERDP_ASSIGN_OR_RETURN(
          MechanismOutput out,
          MechStability(graph, params, budget, options, mechanism_seed));
      estimate = *out.labeling;
      break;
    }
    case ExperimentMechanism::kBayes: {
      HYPERDP_ASSIGN_OR_RETURN(
          MechanismOutput out,
          MechBayesSampling(graph, params, exhaustive, mechanism_seed));
      estimate = *out.labeling;
      break;
    }
    case ExperimentMechanism::kExponential: {
      HYPERDP_ASSIGN_OR_RETURN(
          MechanismOutput out,
          MechExponentialSampling(graph, point.eps, exhaustive,
                                  mechanism_seed));
      estimate = *out.labeling;
      break;
    }
  }
  HYPERDP_ASSIGN_OR_RETURN(double error,
                           MisclassificationError(estimate, truth));
  TrialRecord record;
  record.mechanism = MechanismLabel(config);
  record.estimator = EstimatorLabel(config);
  record.n = config.n;
  record.h = config.h;
  record.a = point.a;
  record.b = config.b;
  if (UsesEps(config.mechanism)) record.eps = point.eps;
  if (config.mechanism == ExperimentMechanism::kStability) {
    record.t = config.t;
  }
  record.trial = trial;
  record.seed = seed;
  record.error = error;
  record.exact_success = error == 0.0;
  return record;
}

// JSON helpers -------------------------------------------------------------

absl::Status FieldError(std::string_view key, std::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("experiment config: field '", std::string(key),
                   "' must be ", std::string(expected)));
}

absl::StatusOr<double> JsonDouble(const nlohmann::json& v,
                                  std::string_view key) {
  if (!v.is_number()) return FieldError(key, "a number");
  return v.get<double>();
}

absl::StatusOr<int> JsonInt(const nlohmann::json& v, std::string_view key) {
  if (!v.is_number_integer()) return FieldError(key, "an integer");
  const int64_t value = v.get<int64_t>();
  if (value < INT32_MIN || value > INT32_MAX) {
    return FieldError(key, "a 32-bit integer");
  }
  return static_cast<int>(value);
}

absl::StatusOr<std::vector<double>> JsonDoubles(const nlohmann::json& v,
                                                std::string_view key) {
  if (!v.is_array()) return FieldError(key, "an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    HYPERDP_ASSIGN_OR_RETURN(double d, JsonDouble(x, key));
    out.push_back(d);
  }
  return out;
}

absl::StatusOr<std::string> JsonString(const nlohmann::json& v,
                                       std::string_view key) {
  if (!v.is_string()) return FieldError(key, "a string");
  return v.get<std::string>();
}

// CSV parsing helpers ------------------------------------------------------

absl::StatusOr<int64_t> ParseInt(std::string_view text) {
  HYPERDP_ASSIGN_OR_RETURN(double value, ParseDouble(text));
  if (value != std::floor(value) || std::abs(value) > 9.0e15) {
    return absl::InvalidArgumentError(
        absl::StrCat("not an integer: '", std::string(text), "'"));
  }
  return static_cast<int64_t>(value);
}

absl::StatusOr<uint64_t> ParseU64(std::string_view text) {
  if (text.empty()) return absl::InvalidArgumentError("empty seed field");
  uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      return absl::InvalidArgumentError(
          absl::StrCat("not an unsigned integer: '", std::string(text), "'"));
    }
    const uint64_t digit = static_cast<uint64_t>(c - '0');
    if (value > (UINT64_MAX - digit) / 10) {
      return absl::InvalidArgumentError(
          absl::StrCat("unsigned integer overflow: '", std::string(text), "'"));
    }
    value = value * 10 + digit;
  }
  return value;
}

absl::StatusOr<bool> ParseBool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  return absl::InvalidArgumentError(
      absl::StrCat("not a boolean: '", std::string(text), "'"));
}

absl::StatusOr<std::optional<double>> ParseOptionalDouble(
    std::string_view text) {
  if (text.empty()) return std::optional<double>();
  HYPERDP_ASSIGN_OR_RETURN(double value, ParseDouble(text));
  return std::optional<double>(value);
}

std::string OptionalField(const std::optional<double>& value) {
  return value.has_value() ? FormatDouble(*value) : std::string();
}

absl::StatusOr<std::vector<std::vector<std::string>>> ParseTable(
    std::string_view text, std::string_view header) {
  HYPERDP_ASSIGN_OR_RETURN(auto rows, ParseCsv(text));
  if (rows.empty()) return absl::InvalidArgumentError("CSV has no header");
  std::string got;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    if (i > 0) got += ",";
    got += rows[0][i];
  }
  if (got != header) {
    return absl::InvalidArgumentError(
        absl::StrCat("unexpected CSV header '", got, "', expected '",
                     std::string(header), "'"));
  }
  const size_t width = rows[0].size();
  rows.erase(rows.begin());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      return absl::InvalidArgumentError(absl::StrCat(
          "CSV row ", i + 2, " has ", rows[i].size(), " fields, expected ",
          width));
    }
  }
  return rows;
}

}  // namespace

absl::StatusOr<ExperimentMechanism> ParseExperimentMechanism(
    std::string_view name) {
  if (name == "none") return ExperimentMechanism::kNone;
  if (name == "rr") return ExperimentMechanism::kRr;
  if (name == "stability") return ExperimentMechanism::kStability;
  if (name == "bayes") return ExperimentMechanism::kBayes;
  if (name == "expo" || name == "exponential") {
    return ExperimentMechanism::kExponential;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name),
                   "' (expected none, rr, stability, bayes or expo)"));
}

std::string_view ExperimentMechanismName(ExperimentMechanism mechanism) {
  switch (mechanism) {
    case ExperimentMechanism::kNone:
      return "none";
    case ExperimentMechanism::kRr:
      return "rr";
    case ExperimentMechanism::kStability:
      return "stability";
    case ExperimentMechanism::kBayes:
      return "bayes";
    case ExperimentMechanism::kExponential:
      return "expo";
  }
  return "unknown";
}

absl::StatusOr<EstimatorKind> ParseEstimatorKind(std::string_view name) {
  if (name == "ml") return EstimatorKind::kMl;
  if (name == "spectral") return EstimatorKind::kSpectral;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown estimator '", std::string(name), "' (expected ml or spectral)"));
}

std::string_view EstimatorKindName(EstimatorKind kind) {
  return kind == EstimatorKind::kMl ? "ml" : "spectral";
}

absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("experiment config must be an object");
  }
  ExperimentConfig config;
  for (const auto& [key, value] : json.items()) {
    if (key == "n") {
      HYPERDP_ASSIGN_OR_RETURN(config.n, JsonInt(value, key));
    } else if (key == "h") {
      HYPERDP_ASSIGN_OR_RETURN(config.h, JsonInt(value, key));
    } else if (key == "b") {
      HYPERDP_ASSIGN_OR_RETURN(config.b, JsonDouble(value, key));
    } else if (key == "a") {
      HYPERDP_ASSIGN_OR_RETURN(config.a, JsonDouble(value, key));
    } else if (key == "eps") {
      HYPERDP_ASSIGN_OR_RETURN(config.eps, JsonDouble(value, key));
    } else if (key == "a_values") {
      HYPERDP_ASSIGN_OR_RETURN(config.a_values, JsonDoubles(value, key));
    } else if (key == "eps_values") {
      HYPERDP_ASSIGN_OR_RETURN(config.eps_values, JsonDoubles(value, key));
    } else if (key == "mechanism") {
      HYPERDP_ASSIGN_OR_RETURN(std::string name, JsonString(value, key));
      HYPERDP_ASSIGN_OR_RETURN(config.mechanism,
                               ParseExperimentMechanism(name));
    } else if (key == "estimator") {
      HYPERDP_ASSIGN_OR_RETURN(std::string name, JsonString(value, key));
      HYPERDP_ASSIGN_OR_RETURN(config.estimator, ParseEstimatorKind(name));
    } else if (key == "trials") {
      HYPERDP_ASSIGN_OR_RETURN(config.trials, JsonInt(value, key));
    } else if (key == "master_seed") {
      if (!value.is_number_unsigned()) {
        return FieldError(key, "a nonnegative integer");
      }
      config.master_seed = value.get<uint64_t>();
    } else if (key == "t") {
      HYPERDP_ASSIGN_OR_RETURN(config.t, JsonDouble(value, key));
    } else if (key == "label_space") {
      HYPERDP_ASSIGN_OR_RETURN(std::string name, JsonString(value, key));
      HYPERDP_ASSIGN_OR_RETURN(config.label_space, ParseLabelSpace(name));
    } else if (key == "acknowledge_non_certified") {
      if (!value.is_boolean()) return FieldError(key, "a boolean");
      config.acknowledge_non_certified = value.get<bool>();
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("experiment config: unknown field '", key, "'"));
    }
  }
  return config;
}

nlohmann::ordered_json ExperimentConfigToJson(const ExperimentConfig& config) {
  nlohmann::ordered_json json;
  json["n"] = config.n;
  json["h"] = config.h;
  json["b"] = config.b;
  if (SweepsA(config)) {
    json["a_values"] = config.a_values;
    json["eps"] = config.eps;
  } else {
    json["eps_values"] = config.eps_values;
    json["a"] = config.a;
  }
  json["mechanism"] = std::string(ExperimentMechanismName(config.mechanism));
  json["estimator"] = std::string(EstimatorKindName(config.estimator));
  json["trials"] = config.trials;
  json["master_seed"] = config.master_seed;
  json["t"] = config.t;
  json["label_space"] = std::string(LabelSpaceName(config.label_space));
  json["acknowledge_non_certified"] = config.acknowledge_non_certified;
  return json;
}

absl::Status ValidateExperimentConfig(const ExperimentConfig& config) {
  if (config.a_values.empty() == config.eps_values.empty()) {
    return absl::InvalidArgumentError(
        "experiment config needs exactly one of a_values and eps_values");
  }
  if (!config.eps_values.empty() && !UsesEps(config.mechanism)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mechanism '",
        std::string(ExperimentMechanismName(config.mechanism)),
        "' takes no eps, so it cannot sweep eps_values"));
  }
  if (config.trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be >= 1, got ", config.trials));
  }
  if (config.label_space == LabelSpace::kBalanced && config.n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("balanced labelings need even n, got ", config.n));
  }
  const bool exhaustive = IsSampling(config.mechanism) ||
                          config.estimator == EstimatorKind::kMl;
  if (exhaustive && config.n > kDefaultExhaustiveCap) {
    return absl::InvalidArgumentError(absl::StrCat(
        "exhaustive estimators and sampling mechanisms enumerate the label "
        "space and are capped at n = ",
        kDefaultExhaustiveCap, ", got n = ", config.n));
  }
  for (const Point& point : Points(config)) {
    HYPERDP_RETURN_IF_ERROR(
        ModelParams::Create(config.n, config.h, point.a, config.b).status());
    if (UsesEps(config.mechanism) &&
        !(point.eps > 0.0 && std::isfinite(point.eps))) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps must be positive and finite, got ", point.eps));
    }
  }
  if (config.mechanism == ExperimentMechanism::kStability) {
    if (!(config.t > 0.0 && std::isfinite(config.t))) {
      return absl::InvalidArgumentError(
          absl::StrCat("t must be positive, got ", config.t));
    }
    if (!StabilityIsExact(config) && !config.acknowledge_non_certified) {
      return absl::FailedPreconditionError(
          "this configuration runs the stability mechanism with the surrogate "
          "distance to instability, whose privacy is not certified; set "
          "acknowledge_non_certified to run it");
    }
  }
  return absl::OkStatus();
}

uint64_t TrialSeed(uint64_t master, uint64_t point, uint64_t trial) {
  return DeriveSeed(master, {point, trial});
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config,
                                               int threads) {
  HYPERDP_RETURN_IF_ERROR(ValidateExperimentConfig(config));
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Point> points = Points(config);
  const size_t trials = static_cast<size_t>(config.trials);
  const size_t total = points.size() * trials;
  std::vector<absl::StatusOr<TrialRecord>> slots(
      total, absl::UnknownError("trial not run"));
  ParallelFor(total, threads, [&](size_t i) {
    const size_t point = i / trials;
    const size_t trial = i % trials;
    slots[i] = RunTrial(config, points[point], static_cast<int>(trial),
                        TrialSeed(config.master_seed, point, trial));
  });
  ExperimentResult result;
  result.records.reserve(total);
  for (size_t i = 0; i < total; ++i) {
    if (!slots[i].ok()) {
      return absl::Status(
          slots[i].status().code(),
          absl::StrCat("sweep point ", i / trials, ", trial ", i % trials,
                       ": ", slots[i].status().message()));
    }
    result.records.push_back(*std::move(slots[i]));
  }
  HYPERDP_ASSIGN_OR_RETURN(
      result.summary,
      Aggregate(result.records, SweepsA(config) ? "a" : "eps"));
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

absl::StatusOr<std::vector<SummaryRow>> Aggregate(
    const std::vector<TrialRecord>& records, std::string_view sweep_param) {
  if (records.empty()) {
    return absl::InvalidArgumentError("cannot aggregate an empty record list");
  }
  if (sweep_param != "a" && sweep_param != "eps") {
    return absl::InvalidArgumentError(absl::StrCat(
        "sweep parameter must be 'a' or 'eps', got '",
        std::string(sweep_param), "'"));
  }
  // Groups in first-appearance order; sums are taken in record order within
  // each group.
  std::vector<double> keys;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& record : records) {
    double key = record.a;
    if (sweep_param == "eps") {
      if (!record.eps.has_value()) {
        return absl::InvalidArgumentError(
            "eps sweep over records without an eps value");
      }
      key = *record.eps;
    }
    size_t g = 0;
    while (g < keys.size() && keys[g] != key) ++g;
    if (g == keys.size()) {
      keys.push_back(key);
      groups.emplace_back();
    }
    groups[g].push_back(&record);
  }
  std::vector<SummaryRow> rows;
  for (size_t g = 0; g < keys.size(); ++g) {
    const auto& group = groups[g];
    const double count = static_cast<double>(group.size());
    double sum = 0.0;
    double successes = 0.0;
    for (const TrialRecord* r : group) {
      sum += r->error;
      if (r->exact_success) successes += 1.0;
    }
    const double mean = sum / count;
    double squares = 0.0;
    for (const TrialRecord* r : group) {
      squares += (r->error - mean) * (r->error - mean);
    }
    SummaryRow row;
    row.sweep_param = std::string(sweep_param);
    row.sweep_value = keys[g];
    row.mean_error = mean;
    row.success_rate = successes / count;
    row.stderr_error =
        group.size() > 1 ? std::sqrt(squares / (count - 1.0)) / std::sqrt(count)
                         : 0.0;
    row.trials = static_cast<int>(group.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string TrialCsv(const std::vector<TrialRecord>& records) {
  std::string out = absl::StrCat(std::string(kTrialHeader), "\n");
  for (const TrialRecord& r : records) {
    out += CsvRecord({r.mechanism, r.estimator, absl::StrCat(r.n),
                      absl::StrCat(r.h), FormatDouble(r.a), FormatDouble(r.b),
                      OptionalField(r.eps), OptionalField(r.t),
                      absl::StrCat(r.trial), absl::StrCat(r.seed),
                      FormatDouble(r.error),
                      r.exact_success ? "true" : "false"});
  }
  return out;
}

std::string SummaryCsv(const std::vector<SummaryRow>& rows) {
  std::string out = absl::StrCat(std::string(kSummaryHeader), "\n");
  for (const SummaryRow& r : rows) {
    out += CsvRecord({r.sweep_param, FormatDouble(r.sweep_value),
                      FormatDouble(r.mean_error), FormatDouble(r.success_rate),
                      FormatDouble(r.stderr_error), absl::StrCat(r.trials)});
  }
  return out;
}

absl::StatusOr<std::vector<TrialRecord>> ParseTrialCsv(std::string_view text) {
  HYPERDP_ASSIGN_OR_RETURN(auto rows, ParseTable(text, kTrialHeader));
  std::vector<TrialRecord> records;
  for (const auto& f : rows) {
    TrialRecord r;
    r.mechanism = f[0];
    r.estimator = f[1];
    HYPERDP_ASSIGN_OR_RETURN(int64_t n, ParseInt(f[2]));
    HYPERDP_ASSIGN_OR_RETURN(int64_t h, ParseInt(f[3]));
    r.n = static_cast<int>(n);
    r.h = static_cast<int>(h);
    HYPERDP_ASSIGN_OR_RETURN(r.a, ParseDouble(f[4]));
    HYPERDP_ASSIGN_OR_RETURN(r.b, ParseDouble(f[5]));
    HYPERDP_ASSIGN_OR_RETURN(r.eps, ParseOptionalDouble(f[6]));
    HYPERDP_ASSIGN_OR_RETURN(r.t, ParseOptionalDouble(f[7]));
    HYPERDP_ASSIGN_OR_RETURN(int64_t trial, ParseInt(f[8]));
    r.trial = static_cast<int>(trial);
    HYPERDP_ASSIGN_OR_RETURN(r.seed, ParseU64(f[9]));
    HYPERDP_ASSIGN_OR_RETURN(r.error, ParseDouble(f[10]));
    HYPERDP_ASSIGN_OR_RETURN(r.exact_success, ParseBool(f[11]));
    records.push_back(std::move(r));
  }
  return records;
}

absl::StatusOr<std::vector<SummaryRow>> ParseSummaryCsv(
    std::string_view text) {
  HYPERDP_ASSIGN_OR_RETURN(auto rows, ParseTable(text, kSummaryHeader));
  std::vector<SummaryRow> out;
  for (const auto& f : rows) {
    SummaryRow r;
    r.sweep_param = f[0];
    HYPERDP_ASSIGN_OR_RETURN(r.sweep_value, ParseDouble(f[1]));
    HYPERDP_ASSIGN_OR_RETURN(r.mean_error, ParseDouble(f[2]));
    HYPERDP_ASSIGN_OR_RETURN(r.success_rate, ParseDouble(f[3]));
    HYPERDP_ASSIGN_OR_RETURN(r.stderr_error, ParseDouble(f[4]));
    HYPERDP_ASSIGN_OR_RETURN(int64_t trials, ParseInt(f[5]));
    r.trials = static_cast<int>(trials);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json ExperimentManifest(const ExperimentConfig& config,
                                          const ExperimentResult& result) {
  nlohmann::ordered_json json;
  json["version"] = std::string(kVersion);
  json["config"] = ExperimentConfigToJson(config);
  json["mechanism_label"] = MechanismLabel(config);
  json["estimator_label"] = EstimatorLabel(config);
  json["certified"] = config.mechanism != ExperimentMechanism::kStability ||
                      StabilityIsExact(config);
  json["trial_seed"] = "DeriveSeed(master_seed, {point_index, trial_index})";
  json["records"] = result.records.size();
  json["wall_seconds"] = result.wall_seconds;
  return json;
}

}  // namespace hyperdp
