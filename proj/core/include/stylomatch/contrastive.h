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

#ifndef STYLOMATCH_CONTRASTIVE_H_
#define STYLOMATCH_CONTRASTIVE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/corpus.h"
#include "stylomatch/encoder.h"
#include "stylomatch/featurizer.h"

namespace stylomatch {

inline constexpr double kDefaultTemperature = 0.1;

// Embeddings with one owner label per row.
struct EmbeddingMatrix {
  std::vector<Embedding> rows;
  std::vector<std::string> labels;
};

// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Throws InvalidArgument on a
// length mismatch or a zero-norm input.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

// Supervised contrastive loss, summed over anchors:
//
//   L = sum_i -log( sum_{j != i, a_j = a_i} exp(s_ij / tau)
//                 / sum_{k != i}            exp(s_ik / tau) )
//
// with s the cosine similarity. Anchors without an in-batch positive
// contribute 0. When `grad_rows` is non-null it receives dL/d(rows).
double SupConLoss(const EmbeddingMatrix& batch, double tau,
                  std::vector<Embedding>* grad_rows = nullptr);

struct TrainingExample {
  FeatureVector features;
  std::string owner;
};

struct LossAndGradients {
  double loss = 0.0;
  std::vector<LayerGradients> grads;
};

// Exact gradient of SupConLoss(ForwardBatch(batch)) with respect to every
// encoder parameter.
LossAndGradients SupConBackward(const EncoderModel& model,
                                std::span<const TrainingExample> batch,
                                double tau);

// Truncates `text` to `token_limit` tokens, featurizes and embeds it.
Embedding EmbedText(const EncoderModel& model,
                    const FittedFeaturizer& featurizer, std::string_view text,
                    std::size_t token_limit = kDefaultTokenLimit);

struct Verdict {
  PairLabel label = PairLabel::kDifferent;
  double score = 0.0;
};

// Same author iff the embeddings' cosine similarity is strictly above theta.
Verdict Decide(const EncoderModel& model, const FittedFeaturizer& featurizer,
               std::string_view text1, std::string_view text2, double theta,
               std::size_t token_limit = kDefaultTokenLimit);

Verdict DecideScore(double score, double theta);

}  // namespace stylomatch

#endif  // STYLOMATCH_CONTRASTIVE_H_
