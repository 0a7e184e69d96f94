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

#include "stylomatch/encoder.h"

#include <cmath>
#include <string>
#include <utility>

#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

// Layer k maps dims[k] -> dims[k + 1].
std::vector<std::size_t> LayerDims(const EncoderConfig& c) {
  std::vector<std::size_t> dims{c.input_dim};
  for (std::size_t i = 0; i < c.num_hidden_layers; ++i) {
    dims.push_back(c.hidden_dim);
  }
  dims.push_back(c.output_dim);
  return dims;
}

void Affine(const Layer& layer, std::span<const double> x,
            std::vector<double>& y) {
  const Matrix& w = layer.weights;
  y.assign(layer.bias.begin(), layer.bias.end());
  for (std::size_t r = 0; r < w.rows; ++r) {
    const double* row = &w.data[r * w.cols];
    double acc = 0.0;
    for (std::size_t c = 0; c < w.cols; ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
}

}  // namespace

void ValidateConfig(const EncoderConfig& config) {
  if (config.input_dim == 0 || config.output_dim == 0 ||
      config.hidden_dim == 0) {
    throw InvalidArgument("encoder dimensions must be at least 1");
  }
}

EncoderModel::EncoderModel(EncoderConfig config, std::vector<Layer> layers)
    : config_(config), layers_(std::move(layers)) {
  ValidateConfig(config_);
  const std::vector<std::size_t> dims = LayerDims(config_);
  if (layers_.size() + 1 != dims.size()) {
    throw InvalidArgument("encoder has " + std::to_string(layers_.size()) +
                          " layers, config implies " +
                          std::to_string(dims.size() - 1));
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    if (l.weights.cols != dims[k] || l.weights.rows != dims[k + 1] ||
        l.bias.size() != dims[k + 1] ||
        l.weights.data.size() != l.weights.rows * l.weights.cols) {
      throw InvalidArgument("layer " + std::to_string(k) +
                            " shape does not match the encoder config");
    }
    for (double v : l.weights.data) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite weight");
    }
    for (double v : l.bias) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite bias");
    }
  }
}

void EncoderModel::CheckInput(std::span<const double> x) const {
  if (x.size() != config_.input_dim) {
    throw InvalidArgument("encoder input has dimension " +
                          std::to_string(x.size()) + ", expected " +
                          std::to_string(config_.input_dim));
  }
}

Embedding EncoderModel::Forward(std::span<const double> x) const {
  ForwardCache cache;
  return Forward(x, cache);
}

Embedding EncoderModel::Forward(std::span<const double> x,
                                ForwardCache& cache) const {
  CheckInput(x);
  cache.inputs.assign(1, std::vector<double>(x.begin(), x.end()));
  std::vector<double> y;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    Affine(layers_[k], cache.inputs.back(), y);
    if (k + 1 < layers_.size()) {
      for (double& v : y) v = v > 0.0 ? v : 0.0;
      cache.inputs.push_back(y);
    }
  }
  return y;
}

std::vector<Embedding> EncoderModel::ForwardBatch(
    std::span<const FeatureVector> xs) const {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != config_.input_dim) {
      throw InvalidArgument("batch row " + std::to_string(i) +
                            " has dimension " + std::to_string(xs[i].size()) +
                            ", expected " + std::to_string(config_.input_dim));
    }
  }
  std::vector<Embedding> out;
  out.reserve(xs.size());
  for (const FeatureVector& x : xs) out.push_back(Forward(x.span()));
  return out;
}

void EncoderModel::Backward(const ForwardCache& cache,
                            std::span<const double> grad_output,
                            std::vector<LayerGradients>& grads) const {
  if (cache.inputs.size() != layers_.size() ||
      grad_output.size() != config_.output_dim ||
      grads.size() != layers_.size()) {
    throw InvalidArgument("backward pass does not match the encoder shape");
  }
  std::vector<double> g(grad_output.begin(), grad_output.end());
  std::vector<double> g_prev;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Matrix& w = layers_[k].weights;
    const std::vector<double>& in = cache.inputs[k];
    LayerGradients& lg = grads[k];
    for (std::size_t r = 0; r < w.rows; ++r) {
      lg.bias[r] += g[r];
      if (g[r] == 0.0) continue;
      double* grow = &lg.weights.data[r * w.cols];
      for (std::size_t c = 0; c < w.cols; ++c) grow[c] += g[r] * in[c];
    }
    if (k == 0) break;
    g_prev.assign(w.cols, 0.0);
    for (std::size_t r = 0; r < w.rows; ++r) {
      if (g[r] == 0.0) continue;
      const double* row = &w.data[r * w.cols];
      for (std::size_t c = 0; c < w.cols; ++c) g_prev[c] += row[c] * g[r];
    }
    // relu mask: the input of layer k is relu of layer k-1's output.
    for (std::size_t c = 0; c < w.cols; ++c) {
      if (!(in[c] > 0.0)) g_prev[c] = 0.0;
    }
    g.swap(g_prev);
  }
}

std::vector<LayerGradients> EncoderModel::ZeroGradients() const {
  std::vector<LayerGradients> grads;
  grads.reserve(layers_.size());
  for (const Layer& l : layers_) {
    grads.push_back({Matrix(l.weights.rows, l.weights.cols),
                     std::vector<double>(l.bias.size(), 0.0)});
  }
  return grads;
}

std::size_t EncoderModel::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers_) n += l.weights.data.size() + l.bias.size();
  return n;
}

EncoderModel InitEncoder(const EncoderConfig& config) {
  ValidateConfig(config);
  const std::vector<std::size_t> dims = LayerDims(config);
  Rng rng(config.init_seed);
  std::vector<Layer> layers;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const std::size_t fan_in = dims[k];
    const std::size_t fan_out = dims[k + 1];
    const double s = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Layer layer{Matrix(fan_out, fan_in), std::vector<double>(fan_out, 0.0)};
    for (double& v : layer.weights.data) v = rng.uniform(-s, s);
    layers.push_back(std::move(layer));
  }
  return EncoderModel(config, std::move(layers));
}

}  // namespace stylomatch
