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

#include "stylomatch/contrastive.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oracles.h"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

// Three unit vectors with pairwise cosines s12 = 0.9, s13 = s23 = 0.1.
EmbeddingMatrix ThreeRowCase() {
  const double y2 = std::sqrt(1.0 - 0.81);
  const double y3 = (0.1 - 0.09) / y2;
  const double z3 = std::sqrt(1.0 - 0.01 - y3 * y3);
  return {{{1.0, 0.0, 0.0}, {0.9, y2, 0.0}, {0.1, y3, z3}}, {"A", "A", "B"}};
}

EmbeddingMatrix RandomBatch(Rng& rng, std::size_t rows, std::size_t dim,
                            std::size_t authors) {
  EmbeddingMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    Embedding e(dim);
    for (double& x : e) x = rng.normal();
    m.rows.push_back(e);
    m.labels.push_back("a" + std::to_string(rng.below(authors)));
  }
  return m;
}

TEST(CosineSimilarityTest, Examples) {
  const std::vector<double> v = {3.0, -1.0, 2.5};
  EXPECT_NEAR(CosineSimilarity(v, v), 1.0, 1e-15);
  EXPECT_EQ(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
  EXPECT_NEAR(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{1, 1}),
              1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(CosineSimilarity(std::vector<double>{1e-3, 1e-3, 1e-3},
                             std::vector<double>{1e-3, 1e-3, 1e-3}),
            1.0);
}

TEST(CosineSimilarityTest, Errors) {
  try {
    CosineSimilarity(std::vector<double>{0, 0}, std::vector<double>{1, 0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("undefined similarity"), std::string::npos);
  }
  EXPECT_THROW(CosineSimilarity(std::vector<double>{1}, std::vector<double>{1, 0}),
               InvalidArgument);
}

TEST(SupConLossTest, IdenticalPairIsZero) {
  const EmbeddingMatrix m{{{0.3, 0.4}, {0.3, 0.4}}, {"A", "A"}};
  EXPECT_NEAR(SupConLoss(m, 0.1), 0.0, 1e-15);
}

TEST(SupConLossTest, NoPositivesIsZero) {
  const EmbeddingMatrix m{{{1.0, 0.0}, {0.0, 1.0}}, {"A", "B"}};
  EXPECT_EQ(SupConLoss(m, 0.1), 0.0);
}

TEST(SupConLossTest, ThreeRowHandValue) {
  const double expected = -2.0 * std::log(std::exp(9.0) / (std::exp(9.0) + std::exp(1.0)));
  EXPECT_NEAR(expected, 0.000671, 5e-7);
  EXPECT_NEAR(SupConLoss(ThreeRowCase(), 0.1), expected, 1e-12);
}

TEST(SupConLossTest, MatchesScalarOracle) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 2 + rng.below(7);
    const std::size_t dim = 1 + rng.below(16);
    const EmbeddingMatrix m = RandomBatch(rng, rows, dim, 1 + rng.below(3));
    const double tau = rng.uniform(0.05, 2.0);
    const double want = oracle::ScalarSupConLoss(m.rows, m.labels, tau);
    EXPECT_NEAR(SupConLoss(m, tau), want, 1e-9 * std::max(1.0, want));
  }
}

TEST(SupConLossTest, ScaleAndPermutationInvariant) {
  Rng rng(8);
  const EmbeddingMatrix m = RandomBatch(rng, 6, 5, 2);
  const double base = SupConLoss(m, 0.5);
  EmbeddingMatrix scaled = m;
  for (auto& row : scaled.rows) for (double& x : row) x *= 7.5;
  EXPECT_NEAR(SupConLoss(scaled, 0.5), base, 1e-12);
  EmbeddingMatrix rev = m;
  std::reverse(rev.rows.begin(), rev.rows.end());
  std::reverse(rev.labels.begin(), rev.labels.end());
  EXPECT_NEAR(SupConLoss(rev, 0.5), base, 1e-12);
}

TEST(SupConLossTest, StableAtSmallTemperature) {
  Rng rng(1);
  const EmbeddingMatrix m = RandomBatch(rng, 8, 4, 2);
  const double loss = SupConLoss(m, 1e-4);
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_GE(loss, 0.0);
}

TEST(SupConLossTest, Errors) {
  EXPECT_THROW(SupConLoss({{{1.0}}, {"A"}}, 0.1), InvalidArgument);
  EXPECT_THROW(SupConLoss({{{1.0}, {0.0}}, {"A", "A"}}, 0.1), InvalidArgument);
  EXPECT_THROW(SupConLoss({{{1.0}, {1.0}}, {"A", "A"}}, 0.0), InvalidArgument);
}

TEST(SupConLossTest, RowGradientMatchesFiniteDifference) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    EmbeddingMatrix m = RandomBatch(rng, 5, 3, 2);
    const double tau = rng.uniform(0.1, 1.0);
    std::vector<Embedding> grad;
    SupConLoss(m, tau, &grad);
    const double h = 1e-6;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      for (std::size_t j = 0; j < m.rows[i].size(); ++j) {
        const double saved = m.rows[i][j];
        m.rows[i][j] = saved + h;
        const double up = oracle::ScalarSupConLoss(m.rows, m.labels, tau);
        m.rows[i][j] = saved - h;
        const double down = oracle::ScalarSupConLoss(m.rows, m.labels, tau);
        m.rows[i][j] = saved;
        EXPECT_NEAR(grad[i][j], (up - down) / (2 * h), 1e-6);
      }
    }
  }
}

EncoderModel SmallModel(std::uint64_t seed) {
  EncoderConfig c;
  c.input_dim = 5;
  c.hidden_dim = 4;
  c.output_dim = 6;
  c.num_hidden_layers = 1;
  c.init_seed = seed;
  EncoderModel m = InitEncoder(c);
  Rng rng(seed);
  for (Layer& l : m.mutable_layers()) {
    for (double& b : l.bias) b = rng.uniform(-0.2, 0.2);
  }
  return m;
}

std::vector<TrainingExample> RandomExamples(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<TrainingExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureVector f;
    for (std::size_t k = 0; k < dim; ++k) f.values.push_back(rng.uniform(0.0, 1.0));
    out.push_back({f, "a" + std::to_string(i % 3)});
  }
  return out;
}

TEST(SupConBackwardTest, MatchesFiniteDifferences) {
  Rng rng(12);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const EncoderModel model = SmallModel(seed);
    const auto batch = RandomExamples(rng, 6, 5);
    const LossAndGradients lg = SupConBackward(model, batch, 0.5);
    EXPECT_NEAR(lg.loss, oracle::OracleBatchLoss(model.layers(), batch, 0.5), 1e-10);
    const auto check = oracle::CheckGradients(model, batch, 0.5, lg.grads);
    EXPECT_LE(check.max_relative_error, 1e-4);
    EXPECT_EQ(check.parameters, model.parameter_count());
  }
}

TEST(SupConBackwardTest, IdenticalPositivesGiveZeroLossAndGradient) {
  const EncoderModel model = SmallModel(4);
  FeatureVector f{{0.1, 0.7, 0.2, 0.4, 0.9}};
  const std::vector<TrainingExample> batch = {{f, "A"}, {f, "A"}, {f, "A"}};
  const LossAndGradients lg = SupConBackward(model, batch, 0.1);
  EXPECT_NEAR(lg.loss, 0.0, 1e-15);
  const auto check = oracle::CheckGradients(model, batch, 0.1, lg.grads);
  EXPECT_LE(check.max_relative_error, 1e-4);
}

TEST(SupConBackwardTest, RepeatedEvaluationsAddUp) {
  // Concatenating a batch with itself gives every anchor an extra positive
  // at similarity 1, so that loss is not twice the original. What is
  // additive is the sum of two evaluations of the same batch.
  const EncoderModel model = SmallModel(5);
  Rng rng(3);
  const auto a = RandomExamples(rng, 5, 5);
  const LossAndGradients once = SupConBackward(model, a, 0.3);
  const LossAndGradients again = SupConBackward(model, a, 0.3);
  EXPECT_EQ(once.loss, again.loss);
  for (std::size_t k = 0; k < once.grads.size(); ++k) {
    for (std::size_t i = 0; i < once.grads[k].weights.data.size(); ++i) {
      EXPECT_EQ(once.grads[k].weights.data[i] + again.grads[k].weights.data[i],
                2.0 * once.grads[k].weights.data[i]);
    }
  }
  std::vector<TrainingExample> doubled = a;
  doubled.insert(doubled.end(), a.begin(), a.end());
  const double doubled_loss = SupConBackward(model, doubled, 0.3).loss;
  EXPECT_NEAR(doubled_loss,
              oracle::OracleBatchLoss(model.layers(), doubled, 0.3), 1e-10);
  EXPECT_NE(doubled_loss, 2.0 * once.loss);
}

TEST(DecideTest, ScoresAndBoundary) {
  EXPECT_EQ(DecideScore(0.95, 0.84).label, PairLabel::kSame);
  EXPECT_EQ(DecideScore(0.84, 0.84).label, PairLabel::kDifferent);
  EXPECT_EQ(DecideScore(0.2, 0.84).label, PairLabel::kDifferent);
}

TEST(DecideTest, IdenticalTextsAreSame) {
  const std::vector<std::string> docs = {"MOV RBP,RSP", "PUSH RBP"};
  const FittedFeaturizer f = FitFeaturizer(FeaturizerKind::kCharNgram, docs);
  EncoderConfig c;
  c.input_dim = f.dimension();
  c.hidden_dim = 8;
  c.output_dim = 4;
  c.init_seed = 2;
  EncoderModel m = InitEncoder(c);
  for (Layer& l : m.mutable_layers()) std::fill(l.bias.begin(), l.bias.end(), 0.05);
  const Verdict v = Decide(m, f, "MOV RBP,RSP", "MOV RBP,RSP", 0.99);
  EXPECT_EQ(v.label, PairLabel::kSame);
  EXPECT_NEAR(v.score, 1.0, 1e-12);
  EXPECT_THROW(Decide(m, f, "a", "b", 1.5), InvalidArgument);
}

}  // namespace
}  // namespace stylomatch
