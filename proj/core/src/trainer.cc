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

#include "stylomatch/trainer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {

void ValidateTrainConfig(const TrainConfig& cfg) {
  if (!(cfg.temperature > 0.0)) {
    throw InvalidArgument("temperature must be positive");
  }
  if (cfg.batch_authors < 2) {
    throw InvalidArgument("batch_authors must be at least 2");
  }
  if (cfg.samples_per_author < 2) {
    throw InvalidArgument("samples_per_author must be at least 2");
  }
  if (!(cfg.learning_rate > 0.0)) {
    throw InvalidArgument("learning_rate must be positive");
  }
  if (cfg.token_limit == 0) throw InvalidArgument("token_limit must be >= 1");
}

AdamOptimizer::AdamOptimizer(const EncoderModel& model, double learning_rate,
                             AdamConfig cfg)
    : learning_rate_(learning_rate),
      cfg_(cfg),
      m_(model.ZeroGradients()),
      v_(model.ZeroGradients()) {}

void AdamOptimizer::Step(EncoderModel& model,
                         const std::vector<LayerGradients>& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g[i];
      v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      param[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    }
  };
  std::vector<Layer>& layers = model.mutable_layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    update(layers[k].weights.data, grads[k].weights.data, m_[k].weights.data,
           v_[k].weights.data);
    update(layers[k].bias, grads[k].bias, m_[k].bias, v_[k].bias);
  }
}

TrainResult Train(EncoderModel model, std::span<const LabeledSample> samples,
                  const FittedFeaturizer& featurizer, std::string_view repr,
                  const TrainConfig& cfg) {
  ValidateTrainConfig(cfg);
  if (featurizer.dimension() != model.config().input_dim) {
    throw InvalidArgument("featurizer dimension " +
                          std::to_string(featurizer.dimension()) +
                          " does not match encoder input_dim " +
                          std::to_string(model.config().input_dim));
  }

  TrainResult result;
  std::vector<TrainingExample> examples;
  examples.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    const std::string* text = s.sample.repr(repr);
    if (text == nullptr) {
      throw DataError("function '" + s.sample.function_id +
                      "' lacks representation '" + std::string(repr) + "'");
    }
    FeatureVector x = featurizer.Featurize(TruncateTokens(*text, cfg.token_limit));
    if (x.is_zero()) {
      ++result.skipped_samples;
      continue;
    }
    examples.push_back({std::move(x), s.owner});
  }

  // Owners in lexicographic order so batching is independent of input order
  // across authors.
  std::map<std::string, std::vector<std::size_t>> by_owner;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_owner[examples[i].owner].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> eligible;
  for (const auto& [owner, idx] : by_owner) {
    if (idx.size() >= cfg.samples_per_author) eligible.push_back(&idx);
  }
  if (eligible.size() < cfg.batch_authors) {
    throw DataError("training needs " + std::to_string(cfg.batch_authors) +
                    " authors with at least " +
                    std::to_string(cfg.samples_per_author) +
                    " samples each; " + std::to_string(eligible.size()) +
                    " available");
  }

  const std::size_t batch_size = cfg.batch_authors * cfg.samples_per_author;
  const std::size_t batches_per_epoch =
      std::max<std::size_t>(1, examples.size() / batch_size);

  AdamOptimizer adam(model, cfg.learning_rate, cfg.adam);
  Rng rng(cfg.seed);
  std::vector<std::size_t> author_order(eligible.size());
  std::vector<std::size_t> pool;
  std::vector<TrainingExample> batch;
  batch.reserve(batch_size);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < batches_per_epoch; ++b) {
      for (std::size_t i = 0; i < author_order.size(); ++i) author_order[i] = i;
      rng.shuffle(std::span<std::size_t>(author_order));
      batch.clear();
      for (std::size_t p = 0; p < cfg.batch_authors; ++p) {
        pool = *eligible[author_order[p]];
        // Partial Fisher-Yates: the first K entries form the draw.
        for (std::size_t k = 0; k < cfg.samples_per_author; ++k) {
          const std::size_t j = k + rng.below(pool.size() - k);
          std::swap(pool[k], pool[j]);
          batch.push_back(examples[pool[k]]);
        }
      }
      LossAndGradients lg = SupConBackward(model, batch, cfg.temperature);
      adam.Step(model, lg.grads);
      loss_sum += lg.loss;
    }
    result.log.push_back(
        {epoch, loss_sum / static_cast<double>(batches_per_epoch),
         batches_per_epoch});
  }
  result.model = std::move(model);
  return result;
}

std::string FormatTrainingLog(std::span<const EpochRecord> log) {
  std::ostringstream out;
  for (const EpochRecord& r : log) {
    nlohmann::ordered_json j;
    j["epoch"] = r.epoch;
    j["mean_loss"] = r.mean_loss;
    j["batches"] = r.batches;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace stylomatch
