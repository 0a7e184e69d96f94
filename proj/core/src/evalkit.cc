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

#include "stylomatch/evalkit.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "stylomatch/atomic_file.h"
#include "stylomatch/contrastive.h"
#include "stylomatch/error.h"

namespace stylomatch {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

Embedding EmbedSample(const EncoderModel& model,
                      const FittedFeaturizer& featurizer,
                      const FunctionSample& sample, std::string_view repr,
                      std::size_t token_limit) {
  const std::string* text = sample.repr(repr);
  if (text == nullptr) {
    throw DataError("function '" + sample.function_id +
                    "' lacks representation '" + std::string(repr) + "'");
  }
  return EmbedText(model, featurizer, *text, token_limit);
}

}  // namespace

double Auroc(std::span<const ScoredPair> scored) {
  // Average ranks over ties, then U = R_pos - n_pos (n_pos + 1) / 2.
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored[a].score < scored[b].score;
  });
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() &&
           scored[order[j]].score == scored[order[i]].score) {
      ++j;
    }
    // Ranks i+1..j share their mean, (i + 1 + j) / 2.
    const double rank = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (scored[order[k]].pair.label == PairLabel::kSame) {
        rank_sum += rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scored.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw InvalidArgument("AUROC needs at least one positive and one negative pair");
  }
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

ThresholdMetrics ComputeThresholdMetrics(std::span<const ScoredPair> scored,
                                         double theta) {
  if (scored.empty()) throw InvalidArgument("no scored pairs");
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw InvalidArgument("threshold must lie in [-1, 1]");
  }
  ThresholdMetrics m;
  for (const ScoredPair& p : scored) {
    const bool predicted = p.score > theta;
    const bool actual = p.pair.label == PairLabel::kSame;
    if (predicted && actual) ++m.tp;
    if (predicted && !actual) ++m.fp;
    if (!predicted && !actual) ++m.tn;
    if (!predicted && actual) ++m.fn;
  }
  m.accuracy = Ratio(m.tp + m.tn, scored.size());
  if (m.tp + m.fp == 0) m.warnings.push_back("precision undefined (no predicted positives); reported as 0");
  if (m.tp + m.fn == 0) m.warnings.push_back("recall undefined (no actual positives); reported as 0");
  m.precision = Ratio(m.tp, m.tp + m.fp);
  m.recall = Ratio(m.tp, m.tp + m.fn);
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

std::vector<ScoredPair> ScorePairs(const EncoderModel& model,
                                   const FittedFeaturizer& featurizer,
                                   std::span<const LabeledSample> samples,
                                   std::span<const SamplePair> pairs,
                                   std::string_view repr,
                                   std::size_t token_limit) {
  std::unordered_map<std::string, const FunctionSample*> by_id;
  for (const LabeledSample& s : samples) {
    by_id.emplace(s.sample.function_id, &s.sample);
  }
  std::unordered_map<std::string, Embedding> cache;
  auto embedding_of = [&](const std::string& id) -> const Embedding& {
    auto hit = cache.find(id);
    if (hit != cache.end()) return hit->second;
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("pair references unknown function '" + id + "'");
    return cache.emplace(id, EmbedSample(model, featurizer, *it->second, repr,
                                         token_limit))
        .first->second;
  };
  std::vector<ScoredPair> out;
  out.reserve(pairs.size());
  for (const SamplePair& p : pairs) {
    const Embedding& a = embedding_of(p.left);
    const Embedding& b = embedding_of(p.right);
    out.push_back({p, CosineSimilarity(a, b)});
  }
  return out;
}

MetricsReport Evaluate(std::span<const ScoredPair> scored, double theta) {
  MetricsReport r;
  r.auroc = Auroc(scored);
  r.theta = theta;
  r.metrics = ComputeThresholdMetrics(scored, theta);
  r.positive_pairs = r.metrics.tp + r.metrics.fn;
  r.negative_pairs = r.metrics.fp + r.metrics.tn;
  return r;
}

std::string MetricsReportToJson(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["auroc"] = r.auroc;
  j["theta"] = r.theta;
  j["accuracy"] = r.metrics.accuracy;
  j["precision"] = r.metrics.precision;
  j["recall"] = r.metrics.recall;
  j["f1"] = r.metrics.f1;
  j["pairs"]["positive"] = r.positive_pairs;
  j["pairs"]["negative"] = r.negative_pairs;
  return j.dump(2) + "\n";
}

std::vector<EmbeddingRecord> EmbedSamples(
    const EncoderModel& model, const FittedFeaturizer& featurizer,
    std::span<const LabeledSample> samples, std::string_view repr,
    std::size_t token_limit) {
  std::vector<EmbeddingRecord> out;
  out.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    out.push_back({s.sample.function_id, s.owner,
                   EmbedSample(model, featurizer, s.sample, repr, token_limit)});
  }
  return out;
}

std::string FormatEmbeddings(std::span<const EmbeddingRecord> records) {
  std::ostringstream out;
  for (const EmbeddingRecord& r : records) {
    nlohmann::ordered_json j;
    j["function_id"] = r.function_id;
    j["owner"] = r.owner;
    j["embedding"] = r.embedding;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<EmbeddingRecord> ParseEmbeddings(std::string_view text) {
  std::vector<EmbeddingRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      out.push_back({j.at("function_id").get<std::string>(),
                     j.at("owner").get<std::string>(),
                     j.at("embedding").get<std::vector<double>>()});
    } catch (const nlohmann::json::exception& e) {
      throw DataError("embedding line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return out;
}

void DumpEmbeddings(const EncoderModel& model,
                    const FittedFeaturizer& featurizer,
                    std::span<const LabeledSample> samples,
                    std::string_view repr, const std::filesystem::path& path,
                    std::size_t token_limit) {
  const std::vector<EmbeddingRecord> records =
      EmbedSamples(model, featurizer, samples, repr, token_limit);
  WriteFileAtomic(path, FormatEmbeddings(records));
}

}  // namespace stylomatch
