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

#include "hyperdp/thresholds.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hyperdp/combinatorics.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {
namespace {

double Capacity(int h) { return std::ldexp(1.0, h - 1); }

absl::Status CheckAb(double a, double b, bool b_positive) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a >= b) ||
      (b_positive ? !(b > 0.0) : !(b >= 0.0))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need a >= b ", b_positive ? "> 0" : ">= 0", ", got a = ", a,
        ", b = ", b));
  }
  return absl::OkStatus();
}

absl::Status CheckH(int h) {
  if (h < 2) return absl::InvalidArgumentError("h must be at least 2");
  return absl::OkStatus();
}

absl::Status CheckPositive(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(name), " must be positive and finite"));
  }
  return absl::OkStatus();
}

// (h/(h-1))^(2h-2).
double ShapeFactor(int h) {
  return std::pow(static_cast<double>(h) / (h - 1), 2.0 * h - 2.0);
}

// C(n-1, h-1) / ln(n), the p = a / scale conversion.
absl::StatusOr<double> Scale(int n, int h) {
  if (n <= h) {
    return absl::InvalidArgumentError(
        absl::StrCat("need n > h, got n = ", n, ", h = ", h));
  }
  HYPERDP_ASSIGN_OR_RETURN(WideCount c, Binom(n - 1, h - 1));
  return static_cast<double>(c) / std::log(static_cast<double>(n));
}

// log PMF of Binom(m, p) at k, with the degenerate p in {0, 1} handled.
std::vector<double> BinomialPmf(int m, double p) {
  std::vector<double> pmf(m + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[m] = 1.0;
    return pmf;
  }
  const double lp = std::log(p), l1p = std::log1p(-p);
  for (int k = 0; k <= m; ++k) {
    pmf[k] = std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(m - k + 1.0) + k * lp + (m - k) * l1p);
  }
  return pmf;
}

}  // namespace

absl::StatusOr<ThresholdResult> NonprivateThreshold(double a, double b,
                                                    int h) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/false));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  const double gap = std::sqrt(a) - std::sqrt(b);
  ThresholdResult result;
  result.margin = gap * gap - Capacity(h);
  result.satisfied = result.margin > 0.0;
  return result;
}

double StabilityMuSplitForm(double a, double b, int h, double eps, double t) {
  return a + b -
         2.0 * std::sqrt((t + 1) * (t + 1) / (16.0 * eps * eps) *
                             ShapeFactor(h) +
                         a * b);
}

double StabilityMuJointForm(double a, double b, int h, double eps, double t) {
  return a + b - std::sqrt((t + 1) * (t + 1) / (4.0 * eps * eps) *
                               ShapeFactor(h) +
                           4.0 * a * b);
}

absl::StatusOr<StabilityThresholdResult> StabilityRecoveryThreshold(
    double a, double b, int h, double eps, double t) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/true));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(t, "t"));
  StabilityThresholdResult result;
  result.budget_floor = (t + 1) / 2.0 * std::log(a / b);
  result.budget_ok = eps >= result.budget_floor;
  result.margin = StabilityMuSplitForm(a, b, h, eps, t) - Capacity(h);
  result.mu = StabilityMuJointForm(a, b, h, eps, t);
  result.recovery_ok = result.margin > 0.0;
  result.satisfied = result.budget_ok && result.recovery_ok;
  return result;
}

absl::StatusOr<ThresholdResult> StabilitySufficientThreshold(double a,
                                                             double b, int h,
                                                             double eps,
                                                             double t) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/true));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(t, "t"));
  const double gap = std::sqrt(a) - std::sqrt(b);
  const double inflation =
      1.0 + (t + 1) / (2.0 * eps) *
                std::pow(static_cast<double>(h) / (2.0 * h - 2.0), h - 1.0);
  ThresholdResult result;
  result.margin = gap * gap - Capacity(h) * inflation;
  result.satisfied = result.margin > 0.0;
  return result;
}

absl::StatusOr<double> RrLambda(double eps, int n, int h) {
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  HYPERDP_ASSIGN_OR_RETURN(double scale, Scale(n, h));
  return std::exp(-eps) * scale;
}

absl::StatusOr<RrThresholdResult> RrThreshold(double a, double b, int h,
                                              double eps, int n) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/false));
  HYPERDP_ASSIGN_OR_RETURN(double lambda, RrLambda(eps, n, h));
  const double gap = std::sqrt(a + lambda) - std::sqrt(b + lambda);
  RrThresholdResult result;
  result.lambda = lambda;
  result.margin = gap * gap - Capacity(h);
  result.satisfied = result.margin > 0.0;
  return result;
}

std::string_view InversionKindName(Inversion::Kind kind) {
  switch (kind) {
    case Inversion::Kind::kValue:
      return "value";
    case Inversion::Kind::kAlways:
      return "always";
    case Inversion::Kind::kNever:
      return "never";
  }
  return "unknown";
}

absl::StatusOr<Inversion> RrMinA(double b, int h, double eps, int n) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError("b must be nonnegative");
  }
  HYPERDP_ASSIGN_OR_RETURN(double lambda, RrLambda(eps, n, h));
  const double root = std::sqrt(b + lambda) + std::sqrt(Capacity(h));
  return Inversion{.kind = Inversion::Kind::kValue,
                   .value = root * root - lambda};
}

absl::StatusOr<Inversion> RrMinEps(double a, double b, int h, int n) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/false));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_ASSIGN_OR_RETURN(double scale, Scale(n, h));
  const double c = Capacity(h);
  const double gap = std::sqrt(a) - std::sqrt(b);
  if (!(gap * gap > c)) return Inversion{.kind = Inversion::Kind::kNever};
  const double v = ((a - b) / std::sqrt(c) - std::sqrt(c)) / 2.0;
  const double lambda_star = v * v - b;
  if (!(lambda_star > 0.0)) return Inversion{.kind = Inversion::Kind::kNever};
  const double eps = std::log(scale / lambda_star);
  if (!(eps > 0.0)) return Inversion{.kind = Inversion::Kind::kAlways};
  return Inversion{.kind = Inversion::Kind::kValue, .value = eps};
}

absl::StatusOr<BayesThresholdResult> BayesThreshold(double a, double b,
                                                    int h) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/true));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  BayesThresholdResult result;
  result.eps0 = std::log(a / b);
  result.margin = (1.0 - std::exp(-result.eps0)) * (a - b) - Capacity(h);
  result.satisfied = result.margin > 0.0;
  return result;
}

absl::StatusOr<ThresholdResult> ExponentialThreshold(double a, double b, int h,
                                                     double eps) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/false));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  ThresholdResult result;
  result.margin = eps * (a - b) - Capacity(h);
  result.satisfied = result.margin > 0.0;
  return result;
}

std::string_view RegionName(Region region) {
  switch (region) {
    case Region::kGray:
      return "gray";
    case Region::kWhite:
      return "white";
    case Region::kGreen:
      return "green";
  }
  return "unknown";
}

absl::StatusOr<Region> ClassifyRegion(double a, double eps, double b, int h,
                                      double t) {
  HYPERDP_ASSIGN_OR_RETURN(StabilityThresholdResult result,
                           StabilityRecoveryThreshold(a, b, h, eps, t));
  if (!(result.mu > Capacity(h))) return Region::kGray;
  return result.budget_ok ? Region::kGreen : Region::kWhite;
}

absl::StatusOr<std::vector<RegionPoint>> RegionGrid(const GridAxis& a,
                                                    const GridAxis& eps,
                                                    double b, int h,
                                                    double t) {
  for (const GridAxis* axis : {&a, &eps}) {
    if (axis->steps < 1 || !(axis->min <= axis->max)) {
      return absl::InvalidArgumentError(
          "grid axes need steps >= 1 and min <= max");
    }
  }
  auto point = [](const GridAxis& axis, int i) {
    if (axis.steps == 1) return axis.min;
    if (i == axis.steps - 1) return axis.max;
    return axis.min + (axis.max - axis.min) * i / (axis.steps - 1);
  };
  std::vector<RegionPoint> points;
  points.reserve(static_cast<size_t>(a.steps) * eps.steps);
  for (int i = 0; i < a.steps; ++i) {
    for (int j = 0; j < eps.steps; ++j) {
      RegionPoint p{.a = point(a, i), .eps = point(eps, j)};
      HYPERDP_ASSIGN_OR_RETURN(p.region, ClassifyRegion(p.a, p.eps, b, h, t));
      points.push_back(p);
    }
  }
  return points;
}

std::string RegionGridCsv(const std::vector<RegionPoint>& points) {
  std::string out = "a,eps,region\n";
  for (const RegionPoint& p : points) {
    absl::StrAppend(&out, absl::StrFormat("%.10g,%.10g,", p.a, p.eps),
                    std::string(RegionName(p.region)), "\n");
  }
  return out;
}

absl::StatusOr<uint64_t> MOfS(int n, int h, int s) {
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  if (s < 1 || 2 * s > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= n/2, got s = ", s, ", n = ", n));
  }
  WideCount total = 0;
  for (int i = 1; i <= std::min(h - 1, s); ++i) {
    if (h - i > n - s) continue;
    HYPERDP_ASSIGN_OR_RETURN(WideCount left, Binom(s, i));
    HYPERDP_ASSIGN_OR_RETURN(WideCount right, Binom(n - s, h - i));
    total += left * right;
  }
  total *= 2;
  if (total > static_cast<WideCount>(UINT64_MAX)) {
    return absl::OutOfRangeError("m(s) does not fit in 64 bits");
  }
  return static_cast<uint64_t>(total);
}

absl::StatusOr<double> MLowerBound(int n, int h, int s) {
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  if (s < 1 || 2 * s > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= n/2, got s = ", s, ", n = ", n));
  }
  HYPERDP_ASSIGN_OR_RETURN(WideCount c, Binom(n - 1, h - 1));
  return 2.0 * s * std::pow(1.0 - static_cast<double>(s) / n, h - 1) *
         static_cast<double>(c);
}

absl::StatusOr<double> ChernoffTheta(double m, int n, int h, double a,
                                     double b, double beta, double lambda) {
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_ASSIGN_OR_RETURN(WideCount binom, Binom(n - 1, h - 1));
  const double c = m / static_cast<double>(binom);
  return c * (a + b - a * std::exp(-lambda) - b * std::exp(lambda)) -
         lambda * beta;
}

absl::StatusOr<ChernoffOptimum> ChernoffExponent(double m, int n, int h,
                                                 double a, double b,
                                                 double beta) {
  HYPERDP_RETURN_IF_ERROR(CheckPositive(m, "m"));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(a, "a"));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(b, "b"));
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    return absl::InvalidArgumentError("beta must be nonnegative");
  }
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_ASSIGN_OR_RETURN(WideCount binom, Binom(n - 1, h - 1));
  const double c = m / static_cast<double>(binom);
  ChernoffOptimum out;
  // gamma - beta = 4 c^2 ab / (gamma + beta) avoids cancellation.
  const double gamma = std::sqrt(beta * beta + 4.0 * c * c * a * b);
  out.lambda_closed = std::log(2.0 * c * a / (gamma + beta));
  out.theta_closed = c * (a + b) - gamma - beta * out.lambda_closed;

  auto theta = [&](double lambda) {
    return c * (a + b - a * std::exp(-lambda) - b * std::exp(lambda)) -
           lambda * beta;
  };
  // Bracket the maximum by function values only: grow a three-point
  // bracket lo < mid < hi until theta(mid) dominates both ends (theta is
  // concave, so the maximizer then lies in [lo, hi]); then golden-section.
  double lo = -1.0, mid = 0.0, hi = 1.0;
  double f_lo = theta(lo), f_mid = theta(mid), f_hi = theta(hi);
  for (int iter = 0; iter < 200 && f_lo > f_mid; ++iter) {
    hi = mid;
    f_hi = f_mid;
    mid = lo;
    f_mid = f_lo;
    lo = mid - 2.0 * (hi - mid);
    f_lo = theta(lo);
  }
  for (int iter = 0; iter < 200 && f_hi > f_mid; ++iter) {
    lo = mid;
    f_lo = f_mid;
    mid = hi;
    f_mid = f_hi;
    hi = mid + 2.0 * (mid - lo);
    f_hi = theta(hi);
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = theta(x1), f2 = theta(x2);
  for (int iter = 0; iter < 400 && hi - lo > 1e-13 * (1.0 + std::abs(lo));
       ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = theta(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = theta(x1);
    }
  }
  out.lambda_numeric = (lo + hi) / 2.0;
  out.theta_numeric = theta(out.lambda_numeric);
  return out;
}

absl::StatusOr<double> BinomialDifferenceLowerTail(int m, double p, double q,
                                                   double threshold) {
  if (m < 0) return absl::InvalidArgumentError("m must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError("p and q must lie in [0, 1]");
  }
  const std::vector<double> first = BinomialPmf(m, p);
  const std::vector<double> second = BinomialPmf(m, q);
  // survival[j] = Pr(X2 >= j).
  std::vector<double> survival(m + 2, 0.0);
  for (int j = m; j >= 0; --j) survival[j] = survival[j + 1] + second[j];
  double tail = 0.0;
  for (int i = 0; i <= m; ++i) {
    // i - j < threshold  <=>  j > i - threshold  <=>  j >= floor(i - thr) + 1.
    const double bound = std::floor(i - threshold) + 1.0;
    const int j = static_cast<int>(std::clamp(bound, 0.0, m + 1.0));
    tail += first[i] * survival[j];
  }
  return std::min(tail, 1.0);
}

absl::StatusOr<double> RecoveryTailBound(int n, int h, int s, double a,
                                         double b, double eps, double t) {
  HYPERDP_RETURN_IF_ERROR(CheckAb(a, b, /*b_positive=*/true));
  HYPERDP_RETURN_IF_ERROR(CheckH(h));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  HYPERDP_RETURN_IF_ERROR(CheckPositive(t, "t"));
  if (s < 1 || 2 * s > n) {
    return absl::InvalidArgumentError("need 1 <= s <= n/2");
  }
  const double mu = StabilityMuSplitForm(a, b, h, eps, t);
  const double exponent =
      4.0 * s * (1.0 - static_cast<double>(s) / n) / Capacity(h) * mu -
      (t + 1) / (2.0 * eps) * std::log(a / b);
  return std::pow(static_cast<double>(n), -exponent);
}

}  // namespace hyperdp
