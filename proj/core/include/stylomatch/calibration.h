// Copyright 2026 The stylomatch Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLOMATCH_CALIBRATION_H_
#define STYLOMATCH_CALIBRATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylomatch {

// Values are clamped into [kClampEpsilon, 1 - kClampEpsilon] before fitting.
inline constexpr double kClampEpsilon = 1e-6;
// Composite Simpson intervals for the expected-minimum integral (20001
// points); the check run uses half as many.
inline constexpr std::size_t kIntegrationIntervals = 20000;
inline constexpr double kRefinementTolerance = 1e-5;

// Which quantity a Beta fit describes. Scores are cosine similarities s;
// the distance domain works with d = 1 - s.
enum class ScoreDomain { kSimilarity, kDistance };

std::string_view ToString(ScoreDomain domain);
ScoreDomain ParseScoreDomain(std::string_view name);

// Beta(alpha, beta) special functions.
double LogBetaFunction(double a, double b);
double BetaPdf(double a, double b, double x);
// Regularized incomplete beta I_x(a, b), by continued fraction.
double BetaCdf(double a, double b, double x);
// 1 - I_x(a, b), evaluated without cancellation.
double BetaSf(double a, double b, double x);

struct BetaFit {
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t fitted_on = 0;
  ScoreDomain domain = ScoreDomain::kSimilarity;

  double mean() const { return alpha / (alpha + beta); }
  double pdf(double x) const { return BetaPdf(alpha, beta, x); }
  double cdf(double x) const { return BetaCdf(alpha, beta, x); }
};

// Method-of-moments fit on values already in `domain`. With mean m and
// population variance v: c = m (1 - m) / v - 1, alpha = m c, beta = (1 - m) c.
BetaFit FitBeta(std::span<const double> values,
                ScoreDomain domain = ScoreDomain::kSimilarity);

// Density of the minimum of n independent draws: n f(x) (1 - F(x))^(n - 1).
double MinDensity(const BetaFit& fit, std::size_t n, double x);

// E[min of n draws] = integral of x f_min(x) over [0, 1], evaluated as the
// equal, bounded tail integral of (1 - F(x))^n with composite Simpson. The
// result at kIntegrationIntervals must agree with the half-resolution run to
// kRefinementTolerance or NumericalError is thrown.
double ExpectedMinimum(const BetaFit& fit, std::size_t n);

// The same expectation integrated literally as x f_min(x) with composite
// Simpson. Where f diverges at an endpoint the integrand is taken as its
// limit 0. Less accurate for fits with alpha or beta below 1.
double ExpectedMinimumByDensity(const BetaFit& fit, std::size_t n,
                                std::size_t intervals = kIntegrationIntervals);

enum class ThresholdSource { kExpectedMinimum, kManual };

std::string_view ToString(ThresholdSource source);

struct Threshold {
  double value = 0.0;
  std::size_t n = 1;
  ThresholdSource source = ThresholdSource::kManual;
  ScoreDomain domain = ScoreDomain::kSimilarity;
};

// Maps cosine similarities into `domain` (identity or 1 - s) and clamps.
std::vector<double> ToDomain(std::span<const double> similarities,
                             ScoreDomain domain);

struct Calibration {
  BetaFit fit;
  Threshold threshold;
};

// theta = ExpectedMinimum(FitBeta(ToDomain(scores)), n). In the similarity
// domain values below theta are suspicious; in the distance domain values
// above it are.
Calibration DeriveThreshold(std::span<const double> same_author_scores,
                            std::size_t n, ScoreDomain domain);

// {"alpha","beta","domain","n","theta","fitted_on"}
std::string CalibrationToJson(const Calibration& calibration);
Calibration CalibrationFromJson(std::string_view text);

}  // namespace stylomatch

#endif  // STYLOMATCH_CALIBRATION_H_
