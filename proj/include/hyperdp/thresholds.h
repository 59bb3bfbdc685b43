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

#ifndef HYPERDP_THRESHOLDS_H_
#define HYPERDP_THRESHOLDS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace hyperdp {

// Closed-form exact-recovery thresholds for the h-HSBM with
// p = a ln(n) / C(n-1, h-1), q = b ln(n) / C(n-1, h-1).
//
// Boundary convention: recovery margins must be strictly positive to count
// as recoverable; the stability budget floor eps >= (t+1)/2 ln(a/b) is
// non-strict.

struct ThresholdResult {
  double margin = 0.0;
  bool satisfied = false;
};

// (sqrt(a) - sqrt(b))^2 - 2^(h-1). Requires a >= b >= 0, h >= 2.
absl::StatusOr<ThresholdResult> NonprivateThreshold(double a, double b, int h);

// Stability mechanism with delta = n^(-t).
struct StabilityThresholdResult {
  // (t+1)/2 ln(a/b); the budget condition is eps >= budget_floor.
  double budget_floor = 0.0;
  bool budget_ok = false;
  // a + b - 2 sqrt((t+1)^2/(16 eps^2) (h/(h-1))^(2h-2) + ab) - 2^(h-1).
  double margin = 0.0;
  // a + b - sqrt((t+1)^2/(4 eps^2) (h/(h-1))^(2h-2) + 4ab), the single-root
  // form; equals margin + 2^(h-1).
  double mu = 0.0;
  bool recovery_ok = false;
  bool satisfied = false;
};
// Requires a >= b > 0, h >= 2, eps > 0, t > 0.
absl::StatusOr<StabilityThresholdResult> StabilityRecoveryThreshold(
    double a, double b, int h, double eps, double t);

// The two algebraically equal forms of the stability recovery quantity.
double StabilityMuSplitForm(double a, double b, int h, double eps, double t);
double StabilityMuJointForm(double a, double b, int h, double eps, double t);

// Sufficient condition
//   (sqrt(a) - sqrt(b))^2 > 2^(h-1) [1 + (t+1)/(2 eps) (h/(2h-2))^(h-1)],
// obtained with sqrt(x + y) <= sqrt(x) + sqrt(y); it implies the recovery
// condition of StabilityRecoveryThreshold.
absl::StatusOr<ThresholdResult> StabilitySufficientThreshold(double a,
                                                             double b, int h,
                                                             double eps,
                                                             double t);

// lambda = e^(-eps) C(n-1, h-1) / ln(n). Requires eps > 0, n > h >= 2.
absl::StatusOr<double> RrLambda(double eps, int n, int h);

struct RrThresholdResult {
  double lambda = 0.0;
  // (sqrt(a + lambda) - sqrt(b + lambda))^2 - 2^(h-1).
  double margin = 0.0;
  bool satisfied = false;
};
absl::StatusOr<RrThresholdResult> RrThreshold(double a, double b, int h,
                                              double eps, int n);

// Solution of a threshold equality for one parameter. Above `value` the
// margin is positive; kAlways / kNever mark inversions without a feasible
// root (recoverable for every, or no, admissible value).
struct Inversion {
  enum class Kind { kValue, kAlways, kNever };
  Kind kind = Kind::kValue;
  double value = 0.0;
};
std::string_view InversionKindName(Inversion::Kind kind);

// Smallest a with (sqrt(a + lambda) - sqrt(b + lambda))^2 = 2^(h-1):
// a = (sqrt(b + lambda) + 2^((h-1)/2))^2 - lambda.
absl::StatusOr<Inversion> RrMinA(double b, int h, double eps, int n);

// Smallest eps with a zero RR margin. The margin decreases in lambda, so the
// equality has lambda* = v^2 - b with v = ((a - b)/sqrt(c) - sqrt(c)) / 2,
// c = 2^(h-1), and eps = -ln(lambda* ln(n) / C(n-1, h-1)). kNever when
// (sqrt(a) - sqrt(b))^2 <= c, kAlways when the root is not positive.
absl::StatusOr<Inversion> RrMinEps(double a, double b, int h, int n);

struct BayesThresholdResult {
  // ln(a/b).
  double eps0 = 0.0;
  // (1 - e^(-eps0))(a - b) - 2^(h-1) = (a - b)^2 / a - 2^(h-1).
  double margin = 0.0;
  bool satisfied = false;
};
absl::StatusOr<BayesThresholdResult> BayesThreshold(double a, double b, int h);

// eps (a - b) - 2^(h-1).
absl::StatusOr<ThresholdResult> ExponentialThreshold(double a, double b, int h,
                                                     double eps);

// Region map of the stability mechanism (b fixed):
//   gray  : mu <= 2^(h-1)                      (not recoverable)
//   white : mu > 2^(h-1), eps < (t+1)/2 ln(a/b) (only non-private)
//   green : mu > 2^(h-1), eps >= (t+1)/2 ln(a/b)
enum class Region { kGray, kWhite, kGreen };
std::string_view RegionName(Region region);
absl::StatusOr<Region> ClassifyRegion(double a, double eps, double b, int h,
                                      double t);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  // Evenly spaced points including both ends; 1 means {min}.
  int steps = 1;
};
struct RegionPoint {
  double a = 0.0;
  double eps = 0.0;
  Region region = Region::kGray;
};
// Rows ordered by a, then eps.
absl::StatusOr<std::vector<RegionPoint>> RegionGrid(const GridAxis& a,
                                                    const GridAxis& eps,
                                                    double b, int h, double t);
// Header `a,eps,region`; numbers with 10 significant digits.
std::string RegionGridCsv(const std::vector<RegionPoint>& points);

// m(s) = 2 sum_{i=1}^{min(h-1, s)} C(s, i) C(n-s, h-i): the number of
// potential hyperedges whose in/cross status changes when s vertices of
// each community are exchanged. Requires 1 <= s <= n/2, h >= 2; fails on
// overflow.
absl::StatusOr<uint64_t> MOfS(int n, int h, int s);
// 2 s (1 - s/n)^(h-1) C(n-1, h-1).
absl::StatusOr<double> MLowerBound(int n, int h, int s);

// Chernoff exponent theta(lambda) = c (a + b - a e^(-lambda) - b e^(lambda))
// - lambda beta with c = m / C(n-1, h-1).
absl::StatusOr<double> ChernoffTheta(double m, int n, int h, double a,
                                     double b, double beta, double lambda);

struct ChernoffOptimum {
  // Closed form: with gamma = sqrt(beta^2 + 4 c^2 ab),
  //   lambda* = ln((gamma - beta) / (2 c b)),
  //   theta*  = c (a + b) - gamma - beta lambda*.
  double lambda_closed = 0.0;
  double theta_closed = 0.0;
  // Golden-section maximization of theta (concave in lambda).
  double lambda_numeric = 0.0;
  double theta_numeric = 0.0;
};
// Requires m > 0, a, b > 0, beta >= 0.
absl::StatusOr<ChernoffOptimum> ChernoffExponent(double m, int n, int h,
                                                 double a, double b,
                                                 double beta);

// Pr(Binom(m, p) - Binom(m, q) < threshold), by exact convolution of the
// two probability mass functions.
absl::StatusOr<double> BinomialDifferenceLowerTail(int m, double p, double q,
                                                   double threshold);

// Closed-form bound of the recovery analysis on
//   Pr(Binom(m(s), p) - Binom(m(s), q) < (t+1)/eps ln n):
//   n^-( 4 s (1 - s/n) / 2^(h-1) * mu - (t+1)/(2 eps) ln(a/b) ),
// mu = a + b - 2 sqrt((t+1)^2/(16 eps^2) (h/(h-1))^(2h-2) + ab).
absl::StatusOr<double> RecoveryTailBound(int n, int h, int s, double a,
                                         double b, double eps, double t);

}  // namespace hyperdp

#endif  // HYPERDP_THRESHOLDS_H_
