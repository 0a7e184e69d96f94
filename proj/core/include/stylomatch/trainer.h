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

#ifndef STYLOMATCH_TRAINER_H_
#define STYLOMATCH_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/contrastive.h"
#include "stylomatch/corpus.h"
#include "stylomatch/encoder.h"
#include "stylomatch/featurizer.h"

namespace stylomatch {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  double temperature = kDefaultTemperature;
  std::size_t batch_authors = 8;       // P
  std::size_t samples_per_author = 4;  // K
  std::size_t epochs = 10;
  double learning_rate = 1e-3;
  AdamConfig adam;
  std::uint64_t seed = 0;
  std::size_t token_limit = kDefaultTokenLimit;
};

void ValidateTrainConfig(const TrainConfig& cfg);

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  std::size_t batches = 0;
};

struct TrainResult {
  EncoderModel model;
  std::vector<EpochRecord> log;
  // Samples left out because their features were all zero.
  std::size_t skipped_samples = 0;
};

// Adam over the encoder parameters. One instance per training run.
class AdamOptimizer {
 public:
  AdamOptimizer(const EncoderModel& model, double learning_rate,
                AdamConfig cfg);

  void Step(EncoderModel& model, const std::vector<LayerGradients>& grads);

 private:
  double learning_rate_;
  AdamConfig cfg_;
  std::size_t t_ = 0;
  std::vector<LayerGradients> m_;
  std::vector<LayerGradients> v_;
};

// Trains with P-authors x K-samples batches drawn from `samples`, one Adam
// step per batch. An epoch holds max(1, N / (P * K)) batches. Deterministic
// in cfg.seed.
TrainResult Train(EncoderModel model, std::span<const LabeledSample> samples,
                  const FittedFeaturizer& featurizer, std::string_view repr,
                  const TrainConfig& cfg);

// JSON-lines training log, one {"epoch","mean_loss","batches"} per line.
std::string FormatTrainingLog(std::span<const EpochRecord> log);

}  // namespace stylomatch

#endif  // STYLOMATCH_TRAINER_H_
