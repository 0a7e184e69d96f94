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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.h"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

EncoderConfig SmallConfig(std::uint64_t seed = 7) {
  EncoderConfig c;
  c.input_dim = 5;
  c.hidden_dim = 4;
  c.output_dim = 6;
  c.num_hidden_layers = 2;
  c.init_seed = seed;
  return c;
}

FeatureVector RandomInput(Rng& rng, std::size_t dim) {
  FeatureVector v;
  for (std::size_t i = 0; i < dim; ++i) v.values.push_back(rng.normal());
  return v;
}

TEST(InitEncoderTest, DeterministicWithZeroBias) {
  EncoderConfig c;
  c.input_dim = 2;
  c.init_seed = 7;
  const EncoderModel a = InitEncoder(c);
  const EncoderModel b = InitEncoder(c);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.layers().size(), 2u);
  EXPECT_EQ(a.layers()[0].weights.rows, 64u);
  EXPECT_EQ(a.layers()[1].weights.rows, 768u);
  for (const Layer& l : a.layers()) {
    for (double x : l.bias) EXPECT_EQ(x, 0.0);
  }
  c.init_seed = 8;
  EXPECT_NE(InitEncoder(c), a);
}

TEST(InitEncoderTest, GlorotBounds) {
  const EncoderModel m = InitEncoder(SmallConfig());
  for (const Layer& l : m.layers()) {
    const double s = std::sqrt(6.0 / (l.weights.rows + l.weights.cols));
    for (double w : l.weights.data) {
      EXPECT_LE(std::fabs(w), s);
    }
  }
  EXPECT_EQ(m.parameter_count(), (5 * 4 + 4) + (4 * 4 + 4) + (4 * 6 + 6));
}

TEST(InitEncoderTest, RejectsZeroDimensions) {
  for (int field = 0; field < 4; ++field) {
    EncoderConfig c = SmallConfig();
    if (field == 0) c.input_dim = 0;
    if (field == 1) c.hidden_dim = 0;
    if (field == 2) c.output_dim = 0;
    if (field == 3) c.num_hidden_layers = 0;
    if (field == 3) {
      // Zero hidden layers is a plain linear map and is allowed.
      EXPECT_NO_THROW(InitEncoder(c));
    } else {
      EXPECT_THROW(InitEncoder(c), InvalidArgument) << field;
    }
  }
}

TEST(ForwardTest, ZeroWeightsGiveZeroEmbedding) {
  EncoderModel m = InitEncoder(SmallConfig());
  for (Layer& l : m.mutable_layers()) {
    std::fill(l.weights.data.begin(), l.weights.data.end(), 0.0);
  }
  const std::vector<double> x = {1, -2, 3, 0.5, 9};
  for (double y : m.Forward(x)) EXPECT_EQ(y, 0.0);
}

TEST(ForwardTest, ChainedUnitNetwork) {
  EncoderConfig c{1, 1, 1, 3, Activation::kRelu, 0};
  std::vector<Layer> layers;
  for (int k = 0; k < 4; ++k) {
    Layer l{Matrix(1, 1), {0.0}};
    l.weights.at(0, 0) = 1.0;
    layers.push_back(l);
  }
  const EncoderModel m(c, layers);
  EXPECT_EQ(m.Forward(std::vector<double>{2.0}), (Embedding{2.0}));
  // relu on hidden layers only.
  EXPECT_EQ(m.Forward(std::vector<double>{-2.0}), (Embedding{0.0}));
}

TEST(ForwardTest, MatchesNaiveOracle) {
  const EncoderModel m = InitEncoder(SmallConfig(3));
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const FeatureVector x = RandomInput(rng, 5);
    const Embedding got = m.Forward(x);
    const std::vector<double> want = oracle::NaiveForward(m.layers(), x.values);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

TEST(ForwardTest, DimensionMismatch) {
  const EncoderModel m = InitEncoder(SmallConfig());
  EXPECT_THROW(m.Forward(std::vector<double>{1, 2}), InvalidArgument);
}

TEST(ForwardBatchTest, SingleRowAndPermutation) {
  const EncoderModel m = InitEncoder(SmallConfig());
  Rng rng(2);
  std::vector<FeatureVector> xs;
  for (int i = 0; i < 6; ++i) xs.push_back(RandomInput(rng, 5));
  const auto rows = m.ForwardBatch(xs);
  EXPECT_EQ(m.ForwardBatch(std::span(xs).first(1))[0], m.Forward(xs[0]));
  std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
  std::vector<FeatureVector> permuted;
  for (std::size_t p : perm) permuted.push_back(xs[p]);
  const auto prow = m.ForwardBatch(permuted);
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(prow[i], rows[perm[i]]);
}

TEST(ForwardBatchTest, ErrorNamesRow) {
  const EncoderModel m = InitEncoder(SmallConfig());
  std::vector<FeatureVector> xs(3, FeatureVector{std::vector<double>(5, 0.1)});
  xs[2].values.resize(4);
  try {
    m.ForwardBatch(xs);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(BackwardTest, LinearOutputGradientMatchesFiniteDifference) {
  // d(sum_j g_j y_j) / d(param) for a fixed upstream gradient g.
  const EncoderModel m = InitEncoder(SmallConfig(11));
  Rng rng(4);
  const FeatureVector x = RandomInput(rng, 5);
  std::vector<double> g(6);
  for (double& v : g) v = rng.normal();
  ForwardCache cache;
  m.Forward(x.span(), cache);
  auto grads = m.ZeroGradients();
  m.Backward(cache, g, grads);
  auto objective = [&](const std::vector<Layer>& layers) {
    const auto y = oracle::NaiveForward(layers, x.values);
    double s = 0;
    for (std::size_t j = 0; j < y.size(); ++j) s += g[j] * y[j];
    return s;
  };
  std::vector<Layer> layers = m.layers();
  const double h = 1e-6;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    for (std::size_t i = 0; i < layers[k].weights.data.size(); ++i) {
      double& p = layers[k].weights.data[i];
      const double saved = p;
      p = saved + h;
      const double up = objective(layers);
      p = saved - h;
      const double down = objective(layers);
      p = saved;
      EXPECT_NEAR(grads[k].weights.data[i], (up - down) / (2 * h), 1e-7);
    }
  }
}

TEST(EncoderModelTest, RejectsBadShapes) {
  const EncoderModel m = InitEncoder(SmallConfig());
  std::vector<Layer> layers = m.layers();
  layers[1].bias.pop_back();
  EXPECT_THROW(EncoderModel(SmallConfig(), layers), InvalidArgument);
  layers = m.layers();
  layers[0].weights.data[0] = std::nan("");
  EXPECT_THROW(EncoderModel(SmallConfig(), layers), InvalidArgument);
}

}  // namespace
}  // namespace stylomatch
