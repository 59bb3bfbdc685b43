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

#include "hyperdp/cli.h"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "hyperdp/dp_audit.h"
#include "hyperdp/estimators.h"
#include "hyperdp/experiments.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/hypergraph.h"
#include "hyperdp/io.h"
#include "hyperdp/label_space.h"
#include "hyperdp/mechanisms.h"
#include "hyperdp/parallel.h"
#include "hyperdp/status_macros.h"
#include "hyperdp/thresholds.h"
#include "json.hpp"

namespace hyperdp {
namespace {

using Json = nlohmann::ordered_json;

// Finite doubles stay numbers (shortest round-trip text); non-finite ones
// become strings, which JSON cannot otherwise represent.
Json Number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

std::string JsonText(const Json& json) { return json.dump(2) + "\n"; }

// Writes `contents` atomically to `path`, or to `out` when no path is given.
absl::Status Emit(const std::string& path, const std::string& contents,
                  std::ostream& out) {
  if (path.empty()) {
    out << contents;
    return absl::OkStatus();
  }
  return WriteFileAtomic(path, contents);
}

absl::Status Missing(std::string_view flag, std::string_view context) {
  return absl::InvalidArgumentError(absl::StrCat(
      std::string(flag), " is required for ", std::string(context)));
}

int ResolveThreads(const CLI::App& sub, int threads) {
  if (sub.count("--threads") > 0) return threads;
  return ThreadsFromEnvironment(1);
}

absl::Status CheckThreads(int threads) {
  if (threads < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("--threads must be >= 1, got ", threads));
  }
  return absl::OkStatus();
}

absl::StatusOr<Hypergraph> LoadHypergraph(const std::string& path) {
  HYPERDP_ASSIGN_OR_RETURN(nlohmann::json json, ReadJsonFile(path));
  absl::StatusOr<Hypergraph> graph = HypergraphFromJson(json);
  if (!graph.ok()) {
    return absl::Status(graph.status().code(),
                        absl::StrCat(path, ": ", graph.status().message()));
  }
  return graph;
}

// Model parameters from --a/--b, else from a --params JSON file holding
// either {"a", "b"} or {"p", "q"}; nullopt when neither is given.
absl::StatusOr<std::optional<ModelParams>> ResolveParams(
    const CLI::App& sub, double a, double b, const std::string& params_path,
    const Hypergraph& graph) {
  const bool has_a = sub.count("--a") > 0;
  const bool has_b = sub.count("--b") > 0;
  if (has_a != has_b) {
    return absl::InvalidArgumentError("--a and --b must be given together");
  }
  if (has_a) {
    HYPERDP_ASSIGN_OR_RETURN(ModelParams params,
                             ModelParams::Create(graph.n(), graph.h(), a, b));
    return std::optional<ModelParams>(params);
  }
  if (params_path.empty()) return std::optional<ModelParams>();
  HYPERDP_ASSIGN_OR_RETURN(nlohmann::json json, ReadJsonFile(params_path));
  auto number = [&](const char* key) -> absl::StatusOr<double> {
    if (!json.contains(key) || !json[key].is_number()) {
      return absl::InvalidArgumentError(absl::StrCat(
          params_path, ": field '", key, "' must be a number"));
    }
    return json[key].get<double>();
  };
  if (!json.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(params_path, ": parameters must be a JSON object"));
  }
  if (json.contains("p") || json.contains("q")) {
    HYPERDP_ASSIGN_OR_RETURN(double p, number("p"));
    HYPERDP_ASSIGN_OR_RETURN(double q, number("q"));
    HYPERDP_ASSIGN_OR_RETURN(
        ModelParams params,
        ModelParams::FromProbabilities(graph.n(), graph.h(), p, q));
    return std::optional<ModelParams>(params);
  }
  HYPERDP_ASSIGN_OR_RETURN(double pa, number("a"));
  HYPERDP_ASSIGN_OR_RETURN(double pb, number("b"));
  HYPERDP_ASSIGN_OR_RETURN(ModelParams params,
                           ModelParams::Create(graph.n(), graph.h(), pa, pb));
  return std::optional<ModelParams>(params);
}

Json ParamsJson(const ModelParams& params) {
  Json json;
  json["a"] = Number(params.a);
  json["b"] = Number(params.b);
  json["p"] = Number(params.p);
  json["q"] = Number(params.q);
  return json;
}

// ---------------------------------------------------------------------------
// gen

struct GenFlags {
  int n = 0;
  int h = 0;
  double a = 0.0;
  double b = 0.0;
  uint64_t seed = 0;
  bool balanced = false;
  std::string out;
  std::string truth_out;
};

std::string DefaultTruthPath(const std::string& out) {
  constexpr std::string_view kSuffix = ".json";
  if (out.size() > kSuffix.size() &&
      out.compare(out.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0) {
    return absl::StrCat(out.substr(0, out.size() - kSuffix.size()),
                        ".truth.json");
  }
  return absl::StrCat(out, ".truth.json");
}

absl::Status RunGen(const GenFlags& f, std::ostream& out) {
  HYPERDP_ASSIGN_OR_RETURN(ModelParams params,
                           ModelParams::Create(f.n, f.h, f.a, f.b));
  HYPERDP_ASSIGN_OR_RETURN(
      Labeling truth,
      SampleGroundTruth(f.n,
                        f.balanced ? GroundTruthMode::kBalanced
                                   : GroundTruthMode::kUniformIid,
                        Seed{f.seed, 0}));
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph,
                           SampleHypergraph(params, truth, Seed{f.seed, 1}));
  const std::string truth_path =
      f.truth_out.empty() ? DefaultTruthPath(f.out) : f.truth_out;
  HYPERDP_RETURN_IF_ERROR(WriteFileAtomic(f.out, SerializeHypergraph(graph)));
  HYPERDP_RETURN_IF_ERROR(
      WriteFileAtomic(truth_path, SerializeLabeling(truth)));
  Json summary;
  summary["hypergraph"] = f.out;
  summary["truth"] = truth_path;
  summary["n"] = f.n;
  summary["h"] = f.h;
  summary["edges"] = graph.num_edges();
  summary["params"] = ParamsJson(params);
  summary["seed"] = f.seed;
  out << JsonText(summary);
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// recover

struct RecoverFlags {
  std::string alg = "spectral";
  std::string in;
  std::string truth;
  std::string params;
  double a = 0.0;
  double b = 0.0;
  std::string label_space = "balanced";
  bool refine = false;
  std::string out;
};

absl::Status RunRecover(const RecoverFlags& f, const CLI::App& sub,
                        std::ostream& out) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph, LoadHypergraph(f.in));
  HYPERDP_ASSIGN_OR_RETURN(LabelSpace space, ParseLabelSpace(f.label_space));
  HYPERDP_ASSIGN_OR_RETURN(std::optional<ModelParams> params,
                           ResolveParams(sub, f.a, f.b, f.params, graph));
  absl::StatusOr<RecoveryResult> recovered;
  if (f.alg == "ml") {
    if (!params.has_value()) {
      return Missing("--params or --a/--b", "--alg ml");
    }
    recovered = MlExhaustive(graph, *params, {.space = space});
  } else if (f.alg == "spectral") {
    recovered = SpectralRecover(graph, {.refine = f.refine});
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown --alg '", f.alg, "' (expected ml or spectral)"));
  }
  HYPERDP_RETURN_IF_ERROR(recovered.status());
  const RecoveryResult& result = *recovered;
  Json json;
  json["method"] = result.method;
  json["labeling"] = LabelingToJson(result.labeling);
  json["score"] = Number(result.score);
  if (f.alg == "spectral") json["disconnected"] = result.disconnected;
  if (!f.truth.empty()) {
    HYPERDP_ASSIGN_OR_RETURN(nlohmann::json truth_json,
                             ReadJsonFile(f.truth));
    HYPERDP_ASSIGN_OR_RETURN(Labeling truth, LabelingFromJson(truth_json));
    HYPERDP_ASSIGN_OR_RETURN(double error,
                             MisclassificationError(result.labeling, truth));
    json["error"] = Number(error);
    json["exact_success"] = error == 0.0;
  }
  return Emit(f.out, JsonText(json), out);
}

// ---------------------------------------------------------------------------
// privatize

struct PrivatizeFlags {
  std::string mech;
  double eps = 0.0;
  double t = 0.0;
  double delta = 0.0;
  std::string in;
  uint64_t seed = 0;
  bool acknowledge = false;
  std::string params;
  double a = 0.0;
  double b = 0.0;
  std::string label_space = "balanced";
  std::string distance = "auto";
  std::string estimator = "none";
  int k_max = kDefaultStabilityCap;
  std::string out;
  std::string graph_out;
};

Json OutputJson(const MechanismOutput& output) {
  Json json;
  json["mechanism"] = output.mechanism;
  json["released_bottom"] = output.released_bottom;
  const MechanismDiagnostics& d = output.diagnostics;
  json["d"] = d.d.has_value() ? Json(*d.d) : Json(nullptr);
  if (d.d.has_value()) json["d_exceeds_cap"] = d.d_exceeds_cap;
  json["laplace_draw"] =
      d.laplace_draw.has_value() ? Number(*d.laplace_draw) : Json(nullptr);
  if (d.threshold.has_value()) json["threshold"] = Number(*d.threshold);
  if (d.sampled_log_weight.has_value()) {
    json["sampled_log_weight"] = Number(*d.sampled_log_weight);
  }
  json["certified"] = d.certified;
  json["labeling"] = output.labeling.has_value()
                         ? Json(LabelingToJson(*output.labeling))
                         : Json(nullptr);
  return json;
}

absl::Status RunPrivatize(const PrivatizeFlags& f, const CLI::App& sub,
                          std::ostream& out) {
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph, LoadHypergraph(f.in));
  HYPERDP_ASSIGN_OR_RETURN(LabelSpace space, ParseLabelSpace(f.label_space));
  HYPERDP_ASSIGN_OR_RETURN(std::optional<ModelParams> params,
                           ResolveParams(sub, f.a, f.b, f.params, graph));
  const bool has_eps = sub.count("--eps") > 0;
  const Seed seed{f.seed, 0};
  const ExhaustiveOptions exhaustive{.space = space};
  MechanismOutput output;
  Json extra;
  if (f.mech == "rr") {
    if (!has_eps) return Missing("--eps", "--mech rr");
    Estimator estimator;
    if (f.estimator == "spectral") {
      estimator = [](const Hypergraph& g) -> absl::StatusOr<Labeling> {
        HYPERDP_ASSIGN_OR_RETURN(RecoveryResult r, SpectralRecover(g));
        return r.labeling;
      };
    } else if (f.estimator == "ml") {
      if (!params.has_value()) {
        return Missing("--params or --a/--b", "--estimator ml");
      }
      // ML on the perturbed hypergraph uses the flipped edge probabilities.
      const double nu = RrFlipProbability(f.eps);
      HYPERDP_ASSIGN_OR_RETURN(
          ModelParams seen,
          ModelParams::FromProbabilities(
              graph.n(), graph.h(), params->p * (1 - nu) + (1 - params->p) * nu,
              params->q * (1 - nu) + (1 - params->q) * nu));
      estimator = [seen, exhaustive](
                      const Hypergraph& g) -> absl::StatusOr<Labeling> {
        HYPERDP_ASSIGN_OR_RETURN(RecoveryResult r,
                                 MlExhaustive(g, seen, exhaustive));
        return r.labeling;
      };
    } else if (f.estimator != "none") {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown --estimator '", f.estimator,
          "' (expected none, ml or spectral)"));
    }
    HYPERDP_ASSIGN_OR_RETURN(
        output, MechRandomizedResponse(graph, f.eps, seed, estimator));
    extra["eps"] = Number(f.eps);
    extra["flip_probability"] = Number(RrFlipProbability(f.eps));
  } else if (f.mech == "stability") {
    if (!has_eps) return Missing("--eps", "--mech stability");
    if (!params.has_value()) {
      return Missing("--params or --a/--b", "--mech stability");
    }
    const bool has_t = sub.count("--t") > 0;
    const bool has_delta = sub.count("--delta") > 0;
    if (has_t == has_delta) {
      return absl::InvalidArgumentError(
          "--mech stability needs exactly one of --t and --delta");
    }
    PrivacyBudget budget;
    if (has_t) {
      HYPERDP_ASSIGN_OR_RETURN(
          budget, PrivacyBudget::FromExponent(graph.n(), f.eps, f.t));
    } else {
      HYPERDP_ASSIGN_OR_RETURN(budget, PrivacyBudget::Create(f.eps, f.delta));
    }
    StabilityOptions options;
    options.space = space;
    options.k_max = f.k_max;
    options.acknowledge_non_certified = f.acknowledge;
    if (f.distance == "exact") {
      options.mode = DistanceMode::kExact;
    } else if (f.distance == "surrogate") {
      options.mode = DistanceMode::kSurrogate;
    } else if (f.distance == "auto") {
      const bool small = graph.universe_size() <= SmallUniverse::kMaxUniverse &&
                         graph.n() <= kDefaultExhaustiveCap;
      options.mode = small ? DistanceMode::kExact : DistanceMode::kSurrogate;
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown --distance '", f.distance,
          "' (expected auto, exact or surrogate)"));
    }
    HYPERDP_ASSIGN_OR_RETURN(
        output, MechStability(graph, *params, budget, options, seed));
    extra["eps"] = Number(budget.eps);
    extra["delta"] = Number(budget.delta);
  } else if (f.mech == "bayes") {
    if (!params.has_value()) {
      return Missing("--params or --a/--b", "--mech bayes");
    }
    HYPERDP_ASSIGN_OR_RETURN(
        output, MechBayesSampling(graph, *params, exhaustive, seed));
    extra["params"] = ParamsJson(*params);
  } else if (f.mech == "expo" || f.mech == "exponential") {
    if (!has_eps) return Missing("--eps", "--mech expo");
    HYPERDP_ASSIGN_OR_RETURN(
        output, MechExponentialSampling(graph, f.eps, exhaustive, seed));
    extra["eps"] = Number(f.eps);
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown --mech '", f.mech, "' (expected rr, stability, bayes or expo)"));
  }
  Json json = OutputJson(output);
  for (auto& [key, value] : extra.items()) json[key] = value;
  json["seed"] = f.seed;
  if (output.perturbed_graph.has_value()) {
    if (f.graph_out.empty()) {
      json["perturbed_graph"] = HypergraphToJson(*output.perturbed_graph);
    } else {
      json["perturbed_graph"] = f.graph_out;
    }
  }
  // Validate both destinations before writing either file.
  if (output.perturbed_graph.has_value() && !f.graph_out.empty()) {
    HYPERDP_RETURN_IF_ERROR(WriteFileAtomic(
        f.graph_out, SerializeHypergraph(*output.perturbed_graph)));
  }
  return Emit(f.out, JsonText(json), out);
}

// ---------------------------------------------------------------------------
// threshold

struct ThresholdFlags {
  std::string mech;
  double a = 0.0;
  double b = 0.0;
  int h = 0;
  int n = 0;
  double eps = 0.0;
  double t = 0.0;
  std::string out;
};

Json InversionJson(const Inversion& inversion) {
  Json json;
  json["kind"] = std::string(InversionKindName(inversion.kind));
  if (inversion.kind == Inversion::Kind::kValue) {
    json["value"] = Number(inversion.value);
  }
  return json;
}

absl::Status RunThreshold(const ThresholdFlags& f, const CLI::App& sub,
                          std::ostream& out) {
  const std::string context = absl::StrCat("--mech ", f.mech);
  auto need = [&](const char* flag) -> absl::Status {
    if (sub.count(flag) == 0) return Missing(flag, context);
    return absl::OkStatus();
  };
  HYPERDP_RETURN_IF_ERROR(need("--a"));
  HYPERDP_RETURN_IF_ERROR(need("--b"));
  HYPERDP_RETURN_IF_ERROR(need("--h"));
  Json inputs;
  inputs["a"] = Number(f.a);
  inputs["b"] = Number(f.b);
  inputs["h"] = f.h;
  Json aux = Json::object();
  double margin = 0.0;
  bool satisfied = false;
  std::string mechanism = f.mech;
  if (f.mech == "none") {
    HYPERDP_ASSIGN_OR_RETURN(ThresholdResult r,
                             NonprivateThreshold(f.a, f.b, f.h));
    margin = r.margin;
    satisfied = r.satisfied;
  } else if (f.mech == "stability" || f.mech == "stability_sufficient") {
    HYPERDP_RETURN_IF_ERROR(need("--eps"));
    HYPERDP_RETURN_IF_ERROR(need("--t"));
    inputs["eps"] = Number(f.eps);
    inputs["t"] = Number(f.t);
    HYPERDP_ASSIGN_OR_RETURN(
        StabilityThresholdResult r,
        StabilityRecoveryThreshold(f.a, f.b, f.h, f.eps, f.t));
    aux["budget_floor"] = Number(r.budget_floor);
    aux["budget_ok"] = r.budget_ok;
    aux["mu"] = Number(r.mu);
    aux["recovery_ok"] = r.recovery_ok;
    if (f.mech == "stability") {
      margin = r.margin;
      satisfied = r.satisfied;
      HYPERDP_ASSIGN_OR_RETURN(
          Region region, ClassifyRegion(f.a, f.eps, f.b, f.h, f.t));
      aux["region"] = std::string(RegionName(region));
    } else {
      HYPERDP_ASSIGN_OR_RETURN(
          ThresholdResult s,
          StabilitySufficientThreshold(f.a, f.b, f.h, f.eps, f.t));
      margin = s.margin;
      satisfied = s.satisfied && r.budget_ok;
      aux["recovery_margin"] = Number(r.margin);
    }
  } else if (f.mech == "rr") {
    HYPERDP_RETURN_IF_ERROR(need("--eps"));
    HYPERDP_RETURN_IF_ERROR(need("--n"));
    inputs["n"] = f.n;
    inputs["eps"] = Number(f.eps);
    HYPERDP_ASSIGN_OR_RETURN(RrThresholdResult r,
                             RrThreshold(f.a, f.b, f.h, f.eps, f.n));
    margin = r.margin;
    satisfied = r.satisfied;
    aux["lambda"] = Number(r.lambda);
    aux["flip_probability"] = Number(RrFlipProbability(f.eps));
    HYPERDP_ASSIGN_OR_RETURN(Inversion min_a, RrMinA(f.b, f.h, f.eps, f.n));
    HYPERDP_ASSIGN_OR_RETURN(Inversion min_eps, RrMinEps(f.a, f.b, f.h, f.n));
    aux["rr_min_a"] = InversionJson(min_a);
    aux["rr_min_eps"] = InversionJson(min_eps);
  } else if (f.mech == "bayes") {
    HYPERDP_ASSIGN_OR_RETURN(BayesThresholdResult r,
                             BayesThreshold(f.a, f.b, f.h));
    margin = r.margin;
    satisfied = r.satisfied;
    aux["eps0"] = Number(r.eps0);
  } else if (f.mech == "expo" || f.mech == "exponential") {
    HYPERDP_RETURN_IF_ERROR(need("--eps"));
    inputs["eps"] = Number(f.eps);
    mechanism = "expo";
    HYPERDP_ASSIGN_OR_RETURN(ThresholdResult r,
                             ExponentialThreshold(f.a, f.b, f.h, f.eps));
    margin = r.margin;
    satisfied = r.satisfied;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown --mech '", f.mech,
        "' (expected none, stability, stability_sufficient, rr, bayes or "
        "expo)"));
  }
  Json json;
  json["mechanism"] = mechanism;
  json["inputs"] = inputs;
  json["margin"] = Number(margin);
  json["satisfied"] = satisfied;
  json["auxiliaries"] = aux;
  return Emit(f.out, JsonText(json), out);
}

// ---------------------------------------------------------------------------
// regions

struct RegionsFlags {
  int h = 3;
  double t = 1.0;
  double b = 1.0;
  GridAxis a{1.0, 30.0, 30};
  GridAxis eps{0.5, 10.0, 20};
  std::string out;
};

absl::Status RunRegions(const RegionsFlags& f, std::ostream& out) {
  HYPERDP_ASSIGN_OR_RETURN(std::vector<RegionPoint> grid,
                           RegionGrid(f.a, f.eps, f.b, f.h, f.t));
  return Emit(f.out, RegionGridCsv(grid), out);
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentFlags {
  std::string config;
  int n = 0;
  int h = 0;
  double b = 0.0;
  std::vector<double> a_values;
  std::vector<double> eps_values;
  double a = 0.0;
  double eps = 0.0;
  std::string mechanism;
  std::string estimator;
  int trials = 0;
  uint64_t seed = 0;
  double t = 0.0;
  std::string label_space;
  bool acknowledge = false;
  std::string out_trials;
  std::string out_summary;
  std::string manifest;
  int threads = 1;
};

absl::Status RunExperimentCommand(const ExperimentFlags& f,
                                  const CLI::App& sub, std::ostream& out) {
  ExperimentConfig config;
  if (!f.config.empty()) {
    HYPERDP_ASSIGN_OR_RETURN(nlohmann::json json, ReadJsonFile(f.config));
    absl::StatusOr<ExperimentConfig> parsed = ExperimentConfigFromJson(json);
    if (!parsed.ok()) {
      return absl::Status(
          parsed.status().code(),
          absl::StrCat(f.config, ": ", parsed.status().message()));
    }
    config = *std::move(parsed);
  }
  auto set = [&](const char* flag) { return sub.count(flag) > 0; };
  if (set("--n")) config.n = f.n;
  if (set("--h")) config.h = f.h;
  if (set("--b")) config.b = f.b;
  if (set("--a")) config.a = f.a;
  if (set("--eps")) config.eps = f.eps;
  // A sweep given on the command line replaces the configured sweep axis.
  if (set("--a-values")) {
    config.a_values = f.a_values;
    config.eps_values.clear();
  }
  if (set("--eps-values")) {
    config.eps_values = f.eps_values;
    if (!set("--a-values")) config.a_values.clear();
  }
  if (set("--mechanism")) {
    HYPERDP_ASSIGN_OR_RETURN(config.mechanism,
                             ParseExperimentMechanism(f.mechanism));
  }
  if (set("--estimator")) {
    HYPERDP_ASSIGN_OR_RETURN(config.estimator,
                             ParseEstimatorKind(f.estimator));
  }
  if (set("--trials")) config.trials = f.trials;
  if (set("--seed")) config.master_seed = f.seed;
  if (set("--t")) config.t = f.t;
  if (set("--label-space")) {
    HYPERDP_ASSIGN_OR_RETURN(config.label_space,
                             ParseLabelSpace(f.label_space));
  }
  if (f.acknowledge) config.acknowledge_non_certified = true;
  const int threads = ResolveThreads(sub, f.threads);
  HYPERDP_RETURN_IF_ERROR(CheckThreads(threads));
  HYPERDP_ASSIGN_OR_RETURN(ExperimentResult result,
                           RunExperiment(config, threads));
  const std::string summary = SummaryCsv(result.summary);
  if (!f.out_trials.empty()) {
    HYPERDP_RETURN_IF_ERROR(
        WriteFileAtomic(f.out_trials, TrialCsv(result.records)));
  }
  if (!f.out_summary.empty()) {
    HYPERDP_RETURN_IF_ERROR(WriteFileAtomic(f.out_summary, summary));
  }
  if (!f.manifest.empty()) {
    HYPERDP_RETURN_IF_ERROR(WriteFileAtomic(
        f.manifest, JsonText(ExperimentManifest(config, result))));
  }
  if (f.out_summary.empty()) out << summary;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// audit

struct AuditFlags {
  std::string mech;
  int n = 6;
  int h = 3;
  double eps = 1.0;
  double delta = 0.0;
  double t = 0.0;
  double a = 5.0;
  double b = 1.0;
  int k_max = kDefaultStabilityCap;
  std::string label_space = "balanced";
  int graphs = 0;
  uint64_t seed = 0;
  bool surrogate = false;
  bool monte_carlo = false;
  int samples = 2000;
  std::string out;
  int threads = 1;
};

Json AuditJson(const AuditReport& report) {
  Json json;
  json["mechanism"] = report.mechanism;
  json["family"] = report.family;
  json["eps"] = Number(report.eps);
  json["delta"] = Number(report.delta);
  json["graphs"] = report.graphs;
  json["pairs_checked"] = report.pairs_checked;
  json["max_divergence"] = Number(report.max_divergence);
  json["max_slack"] = Number(report.max_slack);
  json["max_pointwise_slack"] = Number(report.max_pointwise_slack);
  json["max_log_ratio"] = Number(report.max_log_ratio);
  if (report.closed_form_slack.has_value()) {
    json["closed_form_slack"] = Number(*report.closed_form_slack);
  }
  if (report.reference_eps.has_value()) {
    json["reference_eps"] = Number(*report.reference_eps);
  }
  if (report.slack_upper_bound.has_value()) {
    json["slack_upper_bound"] = Number(*report.slack_upper_bound);
  }
  json["tolerance"] = kCertifyTolerance;
  json["exact"] = report.exact;
  json["certified"] = report.certified;
  json["note"] = report.note;
  return json;
}

absl::Status RunAuditCommand(const AuditFlags& f, const CLI::App& sub,
                             std::ostream& out) {
  AuditRequest request;
  HYPERDP_ASSIGN_OR_RETURN(request.mechanism, ParseAuditMechanism(f.mech));
  HYPERDP_ASSIGN_OR_RETURN(request.options.family.space,
                           ParseLabelSpace(f.label_space));
  request.options.family.n = f.n;
  request.options.family.h = f.h;
  request.options.family.seed = f.seed;
  if (sub.count("--graphs") > 0) request.options.family.num_graphs = f.graphs;
  request.eps = f.eps;
  request.delta = f.delta;
  if (sub.count("--t") > 0) {
    if (sub.count("--delta") > 0) {
      return absl::InvalidArgumentError("give at most one of --t and --delta");
    }
    request.t = f.t;
  }
  request.a = f.a;
  request.b = f.b;
  request.k_max = f.k_max;
  request.surrogate = f.surrogate;
  request.monte_carlo = f.monte_carlo;
  request.samples = f.samples;
  request.options.threads = ResolveThreads(sub, f.threads);
  HYPERDP_RETURN_IF_ERROR(CheckThreads(request.options.threads));
  HYPERDP_ASSIGN_OR_RETURN(AuditReport report, RunAudit(request));
  return Emit(f.out, JsonText(AuditJson(report)), out);
}

}  // namespace

int ExitCodeForStatus(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitSuccess;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kResourceExhausted:
      return kExitValidation;
    case absl::StatusCode::kFailedPrecondition:
      return kExitPrivacyRefusal;
    default:
      return kExitRuntime;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{
      "Differentially private community detection on h-uniform hypergraphs",
      "hyperdp"};
  // "--h" is the hyperedge size, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand(
      "gen", "Sample an h-HSBM hypergraph and its ground-truth labeling");
  gen->add_option("--n", gen_flags.n, "Number of vertices")->required();
  gen->add_option("--h", gen_flags.h, "Hyperedge size")->required();
  gen->add_option("--a", gen_flags.a, "In-cluster density coefficient")
      ->required();
  gen->add_option("--b", gen_flags.b, "Cross-cluster density coefficient")
      ->required();
  gen->add_option("--seed", gen_flags.seed, "Seed");
  gen->add_flag("--balanced", gen_flags.balanced,
                "Balanced ground truth (default: i.i.d. fair signs)");
  gen->add_option("--out", gen_flags.out, "Hypergraph JSON path")->required();
  gen->add_option("--truth-out", gen_flags.truth_out,
                  "Ground-truth JSON path (default: <out>.truth.json)");

  RecoverFlags recover_flags;
  CLI::App* recover =
      app.add_subcommand("recover", "Recover communities from a hypergraph");
  recover->add_option("--alg", recover_flags.alg, "ml or spectral");
  recover->add_option("--in", recover_flags.in, "Hypergraph JSON")->required();
  recover->add_option("--truth", recover_flags.truth,
                      "Ground-truth labeling JSON, to report the error");
  recover->add_option("--params", recover_flags.params,
                      "Model JSON with {a, b} or {p, q}");
  recover->add_option("--a", recover_flags.a, "In-cluster coefficient");
  recover->add_option("--b", recover_flags.b, "Cross-cluster coefficient");
  recover->add_option("--label-space", recover_flags.label_space,
                      "balanced, near_balanced or all (ml)");
  recover->add_flag("--refine", recover_flags.refine,
                    "Spectral: greedy balanced swap refinement");
  recover->add_option("--out", recover_flags.out, "Output JSON path");

  PrivatizeFlags privatize_flags;
  CLI::App* privatize =
      app.add_subcommand("privatize", "Run a private mechanism");
  privatize->add_option("--mech", privatize_flags.mech,
                        "rr, stability, bayes or expo")
      ->required();
  privatize->add_option("--eps", privatize_flags.eps, "Privacy parameter");
  privatize->add_option("--t", privatize_flags.t, "delta = n^(-t)");
  privatize->add_option("--delta", privatize_flags.delta, "delta");
  privatize->add_option("--in", privatize_flags.in, "Hypergraph JSON")
      ->required();
  privatize->add_option("--seed", privatize_flags.seed, "Seed");
  privatize->add_flag("--acknowledge-noncertified",
                      privatize_flags.acknowledge,
                      "Allow the non-certified surrogate distance");
  privatize->add_option("--params", privatize_flags.params,
                        "Model JSON with {a, b} or {p, q}");
  privatize->add_option("--a", privatize_flags.a, "In-cluster coefficient");
  privatize->add_option("--b", privatize_flags.b, "Cross-cluster coefficient");
  privatize->add_option("--label-space", privatize_flags.label_space,
                        "balanced, near_balanced or all");
  privatize->add_option("--distance", privatize_flags.distance,
                        "Stability distance: auto, exact or surrogate");
  privatize->add_option("--estimator", privatize_flags.estimator,
                        "RR post-processing: none, ml or spectral");
  privatize->add_option("--k-max", privatize_flags.k_max,
                        "Stability: largest edit size searched");
  privatize->add_option("--out", privatize_flags.out, "Output JSON path");
  privatize->add_option("--graph-out", privatize_flags.graph_out,
                        "RR: perturbed hypergraph JSON path");

  ThresholdFlags threshold_flags;
  int threshold_threads = 1;
  CLI::App* threshold = app.add_subcommand(
      "threshold", "Evaluate an exact-recovery threshold condition");
  threshold->add_option(
      "--mech", threshold_flags.mech,
      "none, stability, stability_sufficient, rr, bayes or expo")
      ->required();
  threshold->add_option("--a", threshold_flags.a, "In-cluster coefficient");
  threshold->add_option("--b", threshold_flags.b, "Cross-cluster coefficient");
  threshold->add_option("--h", threshold_flags.h, "Hyperedge size");
  threshold->add_option("--n", threshold_flags.n, "Number of vertices (rr)");
  threshold->add_option("--eps", threshold_flags.eps, "Privacy parameter");
  threshold->add_option("--t", threshold_flags.t, "delta = n^(-t)");
  threshold->add_option("--out", threshold_flags.out, "Output JSON path");
  threshold->add_option("--threads", threshold_threads, "Worker threads");

  RegionsFlags regions_flags;
  int regions_threads = 1;
  CLI::App* regions = app.add_subcommand(
      "regions", "Classify an (a, eps) grid for the stability mechanism");
  regions->add_option("--h", regions_flags.h, "Hyperedge size");
  regions->add_option("--t", regions_flags.t, "delta = n^(-t)");
  regions->add_option("--b", regions_flags.b, "Cross-cluster coefficient");
  regions->add_option("--a-min", regions_flags.a.min, "Smallest a");
  regions->add_option("--a-max", regions_flags.a.max, "Largest a");
  regions->add_option("--a-steps", regions_flags.a.steps, "Points along a");
  regions->add_option("--eps-min", regions_flags.eps.min, "Smallest eps");
  regions->add_option("--eps-max", regions_flags.eps.max, "Largest eps");
  regions->add_option("--eps-steps", regions_flags.eps.steps,
                      "Points along eps");
  regions->add_option("--out", regions_flags.out, "Output CSV path");
  regions->add_option("--threads", regions_threads, "Worker threads");

  ExperimentFlags experiment_flags;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a seeded Monte Carlo sweep");
  experiment->add_option("--config", experiment_flags.config,
                         "Experiment config JSON");
  experiment->add_option("--n", experiment_flags.n, "Number of vertices");
  experiment->add_option("--h", experiment_flags.h, "Hyperedge size");
  experiment->add_option("--b", experiment_flags.b, "Cross-cluster coefficient");
  experiment->add_option("--a-values", experiment_flags.a_values,
                         "Sweep over a (comma separated)")
      ->delimiter(',');
  experiment->add_option("--eps-values", experiment_flags.eps_values,
                         "Sweep over eps (comma separated)")
      ->delimiter(',');
  experiment->add_option("--a", experiment_flags.a, "Fixed a (eps sweep)");
  experiment->add_option("--eps", experiment_flags.eps, "Fixed eps (a sweep)");
  experiment->add_option("--mechanism", experiment_flags.mechanism,
                         "none, rr, stability, bayes or expo");
  experiment->add_option("--estimator", experiment_flags.estimator,
                         "ml or spectral");
  experiment->add_option("--trials", experiment_flags.trials,
                         "Trials per sweep point");
  experiment->add_option("--seed", experiment_flags.seed, "Master seed");
  experiment->add_option("--t", experiment_flags.t, "Stability: delta = n^-t");
  experiment->add_option("--label-space", experiment_flags.label_space,
                         "balanced, near_balanced or all");
  experiment->add_flag("--acknowledge-noncertified",
                       experiment_flags.acknowledge,
                       "Allow the non-certified surrogate distance");
  experiment->add_option("--out-trials", experiment_flags.out_trials,
                         "Per-trial CSV path");
  experiment->add_option("--out-summary", experiment_flags.out_summary,
                         "Summary CSV path (default: stdout)");
  experiment->add_option("--manifest", experiment_flags.manifest,
                         "Run manifest JSON path");
  experiment->add_option("--threads", experiment_flags.threads,
                         "Worker threads (default: HYPERDP_THREADS or 1)");

  AuditFlags audit_flags;
  CLI::App* audit = app.add_subcommand(
      "audit", "Audit a mechanism's privacy over small hypergraph families");
  audit->add_option("--mech", audit_flags.mech,
                    "rr, stability, bayes or expo")
      ->required();
  audit->add_option("--n", audit_flags.n, "Number of vertices");
  audit->add_option("--h", audit_flags.h, "Hyperedge size");
  audit->add_option("--eps", audit_flags.eps, "Privacy parameter");
  audit->add_option("--delta", audit_flags.delta, "delta");
  audit->add_option("--t", audit_flags.t, "delta = n^(-t)");
  audit->add_option("--a", audit_flags.a, "In-cluster coefficient");
  audit->add_option("--b", audit_flags.b, "Cross-cluster coefficient");
  audit->add_option("--k-max", audit_flags.k_max,
                    "Stability: largest edit size searched");
  audit->add_option("--label-space", audit_flags.label_space,
                    "balanced, near_balanced or all");
  audit->add_option("--graphs", audit_flags.graphs,
                    "Sampled hypergraphs (0: the exhaustive family)");
  audit->add_option("--seed", audit_flags.seed, "Family sampling seed");
  audit->add_flag("--surrogate", audit_flags.surrogate,
                  "Stability with the surrogate distance");
  audit->add_flag("--monte-carlo", audit_flags.monte_carlo,
                  "Non-certified Monte Carlo estimate (surrogate only)");
  audit->add_option("--samples", audit_flags.samples,
                    "Monte Carlo samples per hypergraph");
  audit->add_option("--out", audit_flags.out, "Output JSON path");
  audit->add_option("--threads", audit_flags.threads,
                    "Worker threads (default: HYPERDP_THREADS or 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  absl::Status status;
  if (*gen) {
    status = RunGen(gen_flags, out);
  } else if (*recover) {
    status = RunRecover(recover_flags, *recover, out);
  } else if (*privatize) {
    status = RunPrivatize(privatize_flags, *privatize, out);
  } else if (*threshold) {
    // Closed forms; the thread count cannot change the output.
    status = CheckThreads(ResolveThreads(*threshold, threshold_threads));
    if (status.ok()) status = RunThreshold(threshold_flags, *threshold, out);
  } else if (*regions) {
    status = CheckThreads(ResolveThreads(*regions, regions_threads));
    if (status.ok()) status = RunRegions(regions_flags, out);
  } else if (*experiment) {
    status = RunExperimentCommand(experiment_flags, *experiment, out);
  } else if (*audit) {
    status = RunAuditCommand(audit_flags, *audit, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeForStatus(status);
  }
  return kExitSuccess;
}

}  // namespace hyperdp
