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

#ifndef STYLOMATCH_EVALKIT_H_
#define STYLOMATCH_EVALKIT_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/corpus.h"
#include "stylomatch/encoder.h"
#include "stylomatch/featurizer.h"

namespace stylomatch {

struct ScoredPair {
  SamplePair pair;
  double score = 0.0;  // cosine similarity
};

// Mann-Whitney AUROC: the fraction of (positive, negative) pairs in which
// the positive scores higher, ties counting one half. Needs both classes.
double Auroc(std::span<const ScoredPair> scored);

struct ThresholdMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  // Set when a metric's denominator was zero and it was reported as 0.
  std::vector<std::string> warnings;
};

// Predicts "same" iff score > theta.
ThresholdMetrics ComputeThresholdMetrics(std::span<const ScoredPair> scored,
                                         double theta);

// Embeds every function referenced by `pairs` once and scores each pair.
std::vector<ScoredPair> ScorePairs(const EncoderModel& model,
                                   const FittedFeaturizer& featurizer,
                                   std::span<const LabeledSample> samples,
                                   std::span<const SamplePair> pairs,
                                   std::string_view repr,
                                   std::size_t token_limit = kDefaultTokenLimit);

struct MetricsReport {
  double auroc = 0.0;
  double theta = 0.0;
  ThresholdMetrics metrics;
  std::size_t positive_pairs = 0;
  std::size_t negative_pairs = 0;
};

MetricsReport Evaluate(std::span<const ScoredPair> scored, double theta);

// {"auroc","theta","accuracy","precision","recall","f1",
//  "pairs":{"positive","negative"}}
std::string MetricsReportToJson(const MetricsReport& report);

struct EmbeddingRecord {
  std::string function_id;
  std::string owner;
  Embedding embedding;
};

std::vector<EmbeddingRecord> EmbedSamples(
    const EncoderModel& model, const FittedFeaturizer& featurizer,
    std::span<const LabeledSample> samples, std::string_view repr,
    std::size_t token_limit = kDefaultTokenLimit);

// JSON lines {"function_id","owner","embedding":[...]}.
std::string FormatEmbeddings(std::span<const EmbeddingRecord> records);
std::vector<EmbeddingRecord> ParseEmbeddings(std::string_view text);

void DumpEmbeddings(const EncoderModel& model,
                    const FittedFeaturizer& featurizer,
                    std::span<const LabeledSample> samples,
                    std::string_view repr, const std::filesystem::path& path,
                    std::size_t token_limit = kDefaultTokenLimit);

}  // namespace stylomatch

#endif  // STYLOMATCH_EVALKIT_H_
