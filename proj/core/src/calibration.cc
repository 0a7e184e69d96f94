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

#include "stylomatch/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "stylomatch/error.h"

namespace stylomatch {
namespace {

constexpr int kMaxContinuedFractionTerms = 10000;
constexpr double kContinuedFractionEps = 1e-15;
constexpr double kTiny = 1e-300;

void CheckShape(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("Beta shape parameters must be positive and finite");
  }
}

// Continued fraction for the incomplete beta function (modified Lentz).
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxContinuedFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kContinuedFractionEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

// I_x(a, b) for x in (0, 1), choosing the convergent side.
double RegularizedIncompleteBeta(double a, double b, double x) {
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           LogBetaFunction(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

// Composite Simpson over [0, 1] with an even number of intervals.
template <typename F>
double Simpson(F&& f, std::size_t intervals) {
  const double h = 1.0 / static_cast<double>(intervals);
  double sum = f(0.0) + f(1.0);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = static_cast<double>(i) * h;
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
  }
  return sum * h / 3.0;
}

double Clamp01(double v) {
  return std::clamp(v, kClampEpsilon, 1.0 - kClampEpsilon);
}

}  // namespace

std::string_view ToString(ScoreDomain domain) {
  return domain == ScoreDomain::kSimilarity ? "similarity" : "distance";
}

ScoreDomain ParseScoreDomain(std::string_view name) {
  if (name == "similarity") return ScoreDomain::kSimilarity;
  if (name == "distance") return ScoreDomain::kDistance;
  throw InvalidArgument("unknown score domain '" + std::string(name) +
                        "' (expected similarity or distance)");
}

std::string_view ToString(ThresholdSource source) {
  return source == ThresholdSource::kExpectedMinimum ? "expected_minimum"
                                                     : "manual";
}

double LogBetaFunction(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double BetaPdf(double a, double b, double x) {
  CheckShape(a, b);
  if (!(x >= 0.0 && x <= 1.0)) return 0.0;
  if (x == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    if (a > 1.0) return 0.0;
    return std::exp(-LogBetaFunction(a, b));
  }
  if (x == 1.0) {
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    if (b > 1.0) return 0.0;
    return std::exp(-LogBetaFunction(a, b));
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                  LogBetaFunction(a, b));
}

double BetaCdf(double a, double b, double x) {
  CheckShape(a, b);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return RegularizedIncompleteBeta(a, b, x);
}

double BetaSf(double a, double b, double x) {
  CheckShape(a, b);
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  // 1 - I_x(a, b) = I_{1-x}(b, a).
  return RegularizedIncompleteBeta(b, a, 1.0 - x);
}

BetaFit FitBeta(std::span<const double> values, ScoreDomain domain) {
  if (values.size() < 2) {
    throw InvalidArgument("Beta fit needs at least 2 values");
  }
  double mean = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("Beta fit on non-finite value");
    mean += Clamp01(v);
  }
  const double n = static_cast<double>(values.size());
  mean /= n;
  double var = 0.0;
  for (double v : values) {
    const double d = Clamp01(v) - mean;
    var += d * d;
  }
  var /= n;
  if (!(var > 0.0)) throw NumericalError("degenerate sample: zero variance");
  const double c = mean * (1.0 - mean) / var - 1.0;
  if (!(c > 0.0)) {
    throw NumericalError("sample variance too large for a Beta distribution");
  }
  return {mean * c, (1.0 - mean) * c, values.size(), domain};
}

double MinDensity(const BetaFit& fit, std::size_t n, double x) {
  if (n == 0) throw InvalidArgument("comparison count n must be at least 1");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("min density is defined on [0, 1]");
  }
  const double f = fit.pdf(x);
  if (n == 1) return f;
  const double sf = BetaSf(fit.alpha, fit.beta, x);
  const double tail = std::pow(sf, static_cast<double>(n - 1));
  if (tail == 0.0) return 0.0;
  return static_cast<double>(n) * f * tail;
}

double ExpectedMinimum(const BetaFit& fit, std::size_t n) {
  if (n == 0) throw InvalidArgument("comparison count n must be at least 1");
  CheckShape(fit.alpha, fit.beta);
  const double exponent = static_cast<double>(n);
  auto survival = [&](double x) {
    return std::pow(BetaSf(fit.alpha, fit.beta, x), exponent);
  };
  const double fine = Simpson(survival, kIntegrationIntervals);
  const double coarse = Simpson(survival, kIntegrationIntervals / 2);
  if (!(std::fabs(fine - coarse) <= kRefinementTolerance)) {
    throw NumericalError("expected-minimum integral did not converge");
  }
  return std::clamp(fine, 0.0, 1.0);
}

double ExpectedMinimumByDensity(const BetaFit& fit, std::size_t n,
                                std::size_t intervals) {
  if (n == 0) throw InvalidArgument("comparison count n must be at least 1");
  if (intervals < 2 || intervals % 2 != 0) {
    throw InvalidArgument("Simpson needs an even number of intervals");
  }
  auto integrand = [&](double x) {
    const double v = x * MinDensity(fit, n, x);
    return std::isfinite(v) ? v : 0.0;
  };
  return Simpson(integrand, intervals);
}

std::vector<double> ToDomain(std::span<const double> similarities,
                             ScoreDomain domain) {
  std::vector<double> out;
  out.reserve(similarities.size());
  for (double s : similarities) {
    out.push_back(Clamp01(domain == ScoreDomain::kSimilarity ? s : 1.0 - s));
  }
  return out;
}

Calibration DeriveThreshold(std::span<const double> same_author_scores,
                            std::size_t n, ScoreDomain domain) {
  if (n == 0) throw InvalidArgument("comparison count n must be at least 1");
  const std::vector<double> values = ToDomain(same_author_scores, domain);
  Calibration out;
  out.fit = FitBeta(values, domain);
  out.threshold = {ExpectedMinimum(out.fit, n), n,
                   ThresholdSource::kExpectedMinimum, domain};
  return out;
}

std::string CalibrationToJson(const Calibration& c) {
  nlohmann::ordered_json j;
  j["alpha"] = c.fit.alpha;
  j["beta"] = c.fit.beta;
  j["domain"] = ToString(c.fit.domain);
  j["n"] = c.threshold.n;
  j["theta"] = c.threshold.value;
  j["fitted_on"] = c.fit.fitted_on;
  return j.dump(2) + "\n";
}

Calibration CalibrationFromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Calibration c;
    c.fit.alpha = j.at("alpha").get<double>();
    c.fit.beta = j.at("beta").get<double>();
    c.fit.domain = ParseScoreDomain(j.at("domain").get<std::string>());
    c.fit.fitted_on = j.at("fitted_on").get<std::size_t>();
    c.threshold.n = j.at("n").get<std::size_t>();
    c.threshold.value = j.at("theta").get<double>();
    c.threshold.domain = c.fit.domain;
    c.threshold.source = ThresholdSource::kExpectedMinimum;
    CheckShape(c.fit.alpha, c.fit.beta);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed calibration file: ") + e.what());
  }
}

}  // namespace stylomatch
