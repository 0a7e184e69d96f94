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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stylomatch/error.h"

namespace stylomatch {
namespace {

double Norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double Dot(std::span<const double> u, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("cosine similarity of vectors with lengths " +
                          std::to_string(u.size()) + " and " +
                          std::to_string(v.size()));
  }
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw InvalidArgument("undefined similarity: zero-norm vector");
  }
  return std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
}

double SupConLoss(const EmbeddingMatrix& batch, double tau,
                  std::vector<Embedding>* grad_rows) {
  const std::size_t n = batch.rows.size();
  if (!(tau > 0.0)) throw InvalidArgument("temperature must be positive");
  if (n < 2) throw InvalidArgument("contrastive batch needs at least 2 rows");
  if (batch.labels.size() != n) {
    throw InvalidArgument("contrastive batch has mismatched labels");
  }
  const std::size_t dim = batch.rows[0].size();

  // Unit-normalized rows.
  std::vector<double> norms(n);
  std::vector<Embedding> unit(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (batch.rows[i].size() != dim) {
      throw InvalidArgument("contrastive batch rows differ in dimension");
    }
    norms[i] = Norm(batch.rows[i]);
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) {
      throw InvalidArgument("contrastive batch row " + std::to_string(i) +
                            " has zero or non-finite norm");
    }
    unit[i] = batch.rows[i];
    for (double& x : unit[i]) x /= norms[i];
  }

  std::vector<double> sim(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double s = Dot(unit[i], unit[k]);
      sim[i * n + k] = s;
      sim[k * n + i] = s;
    }
  }

  // dL/ds_ik accumulated for the ordered pair (anchor i, other k).
  std::vector<double> dsim(grad_rows != nullptr ? n * n : 0, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double max_all = -std::numeric_limits<double>::infinity();
    double max_pos = -std::numeric_limits<double>::infinity();
    bool has_pos = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double logit = sim[i * n + k] / tau;
      max_all = std::max(max_all, logit);
      if (batch.labels[k] == batch.labels[i]) {
        max_pos = std::max(max_pos, logit);
        has_pos = true;
      }
    }
    if (!has_pos) continue;
    double sum_all = 0.0;
    double sum_pos = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double logit = sim[i * n + k] / tau;
      sum_all += std::exp(logit - max_all);
      if (batch.labels[k] == batch.labels[i]) {
        sum_pos += std::exp(logit - max_pos);
      }
    }
    const double lse_all = max_all + std::log(sum_all);
    const double lse_pos = max_pos + std::log(sum_pos);
    total += lse_all - lse_pos;

    if (grad_rows != nullptr) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double logit = sim[i * n + k] / tau;
        double d = std::exp(logit - lse_all);
        if (batch.labels[k] == batch.labels[i]) d -= std::exp(logit - lse_pos);
        dsim[i * n + k] = d / tau;
      }
    }
  }

  if (grad_rows != nullptr) {
    grad_rows->assign(n, Embedding(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      // d/dz_i of sum over (a, b) of dsim[a, b] * z_a . z_b.
      Embedding gz(dim, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double w = dsim[i * n + k] + dsim[k * n + i];
        if (w == 0.0) continue;
        for (std::size_t d = 0; d < dim; ++d) gz[d] += w * unit[k][d];
      }
      // Project through the normalization z = e / |e|.
      const double radial = Dot(gz, unit[i]);
      Embedding& g = (*grad_rows)[i];
      for (std::size_t d = 0; d < dim; ++d) {
        g[d] = (gz[d] - radial * unit[i][d]) / norms[i];
      }
    }
  }
  return std::max(total, 0.0);
}

LossAndGradients SupConBackward(const EncoderModel& model,
                                std::span<const TrainingExample> batch,
                                double tau) {
  EmbeddingMatrix emb;
  std::vector<ForwardCache> caches(batch.size());
  emb.rows.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    emb.rows.push_back(model.Forward(batch[i].features.span(), caches[i]));
    emb.labels.push_back(batch[i].owner);
  }
  std::vector<Embedding> grad_rows;
  LossAndGradients out;
  out.loss = SupConLoss(emb, tau, &grad_rows);
  out.grads = model.ZeroGradients();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    model.Backward(caches[i], grad_rows[i], out.grads);
  }
  return out;
}

Embedding EmbedText(const EncoderModel& model,
                    const FittedFeaturizer& featurizer, std::string_view text,
                    std::size_t token_limit) {
  const FeatureVector x = featurizer.Featurize(TruncateTokens(text, token_limit));
  return model.Forward(x);
}

Verdict DecideScore(double score, double theta) {
  return {score > theta ? PairLabel::kSame : PairLabel::kDifferent, score};
}

Verdict Decide(const EncoderModel& model, const FittedFeaturizer& featurizer,
               std::string_view text1, std::string_view text2, double theta,
               std::size_t token_limit) {
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw InvalidArgument("threshold must lie in [-1, 1]");
  }
  const Embedding e1 = EmbedText(model, featurizer, text1, token_limit);
  const Embedding e2 = EmbedText(model, featurizer, text2, token_limit);
  return DecideScore(CosineSimilarity(e1, e2), theta);
}

}  // namespace stylomatch
