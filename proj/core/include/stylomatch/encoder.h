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

#ifndef STYLOMATCH_ENCODER_H_
#define STYLOMATCH_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stylomatch/featurizer.h"

namespace stylomatch {

using Embedding = std::vector<double>;

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Activation { kRelu };

struct EncoderConfig {
  std::size_t input_dim = kDefaultMaxFeatures;
  std::size_t hidden_dim = 64;
  std::size_t output_dim = 768;
  std::size_t num_hidden_layers = 1;
  Activation activation = Activation::kRelu;
  std::uint64_t init_seed = 0;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

// Affine layer: y = weights * x + bias, weights is (fan_out x fan_in).
struct Layer {
  Matrix weights;
  std::vector<double> bias;

  friend bool operator==(const Layer&, const Layer&) = default;
};

// Parameter-shaped accumulator for gradients and optimizer moments.
struct LayerGradients {
  Matrix weights;
  std::vector<double> bias;
};

// Activations recorded by a forward pass, consumed by Backward.
struct ForwardCache {
  // inputs[k] is the input of layer k; inputs[0] is the feature vector.
  std::vector<std::vector<double>> inputs;
};

// Feedforward embedding network: relu hidden layers, linear output layer.
class EncoderModel {
 public:
  EncoderModel() = default;
  // Validates that the layer shapes chain according to `config`.
  EncoderModel(EncoderConfig config, std::vector<Layer> layers);

  const EncoderConfig& config() const { return config_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }

  Embedding Forward(std::span<const double> x) const;
  Embedding Forward(const FeatureVector& x) const { return Forward(x.span()); }
  Embedding Forward(std::span<const double> x, ForwardCache& cache) const;

  // Row i of the result is Forward(xs[i]).
  std::vector<Embedding> ForwardBatch(std::span<const FeatureVector> xs) const;

  // Accumulates d(loss)/d(parameters) into `grads` given d(loss)/d(output)
  // for the pass recorded in `cache`.
  void Backward(const ForwardCache& cache, std::span<const double> grad_output,
                std::vector<LayerGradients>& grads) const;

  std::vector<LayerGradients> ZeroGradients() const;
  std::size_t parameter_count() const;

  friend bool operator==(const EncoderModel&, const EncoderModel&) = default;

 private:
  void CheckInput(std::span<const double> x) const;

  EncoderConfig config_;
  std::vector<Layer> layers_;
};

void ValidateConfig(const EncoderConfig& config);

// Glorot-uniform weights in [-s, s], s = sqrt(6 / (fan_in + fan_out)), zero
// biases. Deterministic in config.init_seed.
EncoderModel InitEncoder(const EncoderConfig& config);

}  // namespace stylomatch

#endif  // STYLOMATCH_ENCODER_H_
