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

#ifndef HYPERDP_DP_AUDIT_H_
#define HYPERDP_DP_AUDIT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "hyperdp/hsbm.h"
#include "hyperdp/label_space.h"
#include "hyperdp/mechanisms.h"

namespace hyperdp {

// Exact privacy audits. For every neighbor pair (H, H') in an instance
// family and both orders, the audit computes the output distributions in
// closed form (integrating the mechanism's randomness analytically) and
// measures the violation of
//   Pr[M(H) in S] <= e^eps Pr[M(H') in S] + delta   for all output sets S.
// The worst set gives the hockey-stick divergence
//   slack = max(0, sum_sigma max(0, P_H(sigma) - e^eps P_H'(sigma)) - delta),
// which dominates the single-output slack max(0, P_H - e^eps P_H' - delta).

enum class AuditMechanism {
  kRandomizedResponse,
  kStability,
  kBayes,
  kExponential,
};

// "rr", "stability", "bayes", "expo" (or "exponential").
absl::StatusOr<AuditMechanism> ParseAuditMechanism(std::string_view name);
std::string_view AuditMechanismName(AuditMechanism mechanism);

// Certified audits must report slack at or below this value.
inline constexpr double kCertifyTolerance = 1e-12;

struct AuditFamily {
  int n = 6;
  int h = 3;
  LabelSpace space = LabelSpace::kBalanced;
  // Hypergraphs audited. Zero or negative: all 2^C(n, h) hypergraphs
  // (C(n, h) <= 24), each neighbor pair once. Positive: this many drawn
  // uniformly from `seed`, each with all of its C(n, h) neighbors. Unset:
  // the audit's default (exhaustive for Bayes and stability, 50 sampled
  // hypergraphs for the exponential mechanism, 20 for Monte Carlo).
  std::optional<int> num_graphs;
  uint64_t seed = 0;
};

struct AuditOptions {
  AuditFamily family;
  int threads = 1;
};

struct AuditReport {
  std::string mechanism;
  std::string family;
  double eps = 0.0;
  double delta = 0.0;
  uint64_t graphs = 0;
  // Unordered neighbor pairs; each is checked in both directions.
  uint64_t pairs_checked = 0;
  // Largest hockey-stick divergence sum_sigma max(0, P_H - e^eps P_H'),
  // before subtracting delta.
  double max_divergence = 0.0;
  double max_slack = 0.0;
  double max_pointwise_slack = 0.0;
  // max |ln P_H(sigma) - ln P_H'(sigma)|, infinite on a support mismatch.
  // For delta = 0 this is the smallest eps the family passes.
  double max_log_ratio = 0.0;
  // Randomized response: slack from the per-edge identity (1-nu)/nu = e^eps.
  std::optional<double> closed_form_slack;
  // Bayes sampling: ln(p(1-q) / (q(1-p))), the budget being audited.
  std::optional<double> reference_eps;
  // Monte Carlo audits only: approximate upper confidence bound on slack.
  std::optional<double> slack_upper_bound;
  bool exact = true;
  bool certified = false;
  std::string note;
};

// Exponential mechanism at `eps` (delta = 0). Default family: 50 sampled
// hypergraphs.
absl::StatusOr<AuditReport> AuditExponential(double eps,
                                             const AuditOptions& options);

// Posterior sampling under `params`, audited at eps = ln R with
// R = p(1-q)/(q(1-p)) (delta = 0). Default family: exhaustive.
absl::StatusOr<AuditReport> AuditBayes(const ModelParams& params,
                                       const AuditOptions& options);

// Stability mechanism with exact distance to instability. Default family:
// exhaustive. `params` must match the family's (n, h).
absl::StatusOr<AuditReport> AuditStability(const ModelParams& params,
                                           const PrivacyBudget& budget,
                                           int k_max,
                                           const AuditOptions& options);

// Randomized response on n vertices, delta = 0. Neighbors differ in one
// coordinate of a product distribution, so every pair's divergence equals
// that coordinate's; for C(n, h) <= 10 the output space is also enumerated.
absl::StatusOr<AuditReport> AuditRandomizedResponse(int n, int h, double eps);

// The surrogate-distance stability mechanism has no closed-form output law
// with a known sensitivity; this estimates slack from `samples` runs per
// hypergraph on one random neighbor pair per sampled hypergraph. Never
// certified.
struct MonteCarloOptions {
  AuditOptions audit;
  int samples = 2000;
  // Normal quantile for the per-output confidence bounds.
  double z = 1.96;
};
absl::StatusOr<AuditReport> MonteCarloAuditStabilitySurrogate(
    const ModelParams& params, const PrivacyBudget& budget,
    const MonteCarloOptions& options);

struct AuditRequest {
  AuditMechanism mechanism = AuditMechanism::kExponential;
  double eps = 1.0;
  double delta = 0.0;
  // Stability: delta = n^(-t) when set.
  std::optional<double> t;
  // Bayes and stability model parameters.
  double a = 5.0;
  double b = 1.0;
  int k_max = kDefaultStabilityCap;
  // Stability with the surrogate distance: refused (FailedPrecondition)
  // unless `monte_carlo` asks for the non-certified estimate.
  bool surrogate = false;
  bool monte_carlo = false;
  int samples = 2000;
  AuditOptions options;
};
absl::StatusOr<AuditReport> RunAudit(const AuditRequest& request);

}  // namespace hyperdp

#endif  // HYPERDP_DP_AUDIT_H_
