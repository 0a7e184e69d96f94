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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "stylomatch/calibration.h"
#include "stylomatch/contrastive.h"
#include "stylomatch/encoder.h"
#include "stylomatch/evalkit.h"
#include "stylomatch/featurizer.h"
#include "stylomatch/random.h"
#include "stylomatch/synthetic.h"

namespace stylomatch {
namespace {

std::vector<std::string> Listings(std::size_t count) {
  Rng rng(1);
  const synthetic::Style style = synthetic::MakeStyle("bench", rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(synthetic::GenerateListing(style, rng));
  }
  return out;
}

void BM_FitNgramFeaturizer(benchmark::State& state) {
  const auto docs = Listings(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitFeaturizer(FeaturizerKind::kCharNgram, docs));
  }
}
BENCHMARK(BM_FitNgramFeaturizer)->Arg(100)->Arg(800);

void BM_Featurize(benchmark::State& state) {
  const auto docs = Listings(200);
  const FittedFeaturizer f = FitFeaturizer(FeaturizerKind::kCharNgram, docs);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.Featurize(docs[i++ % docs.size()]));
  }
}
BENCHMARK(BM_Featurize);

void BM_Forward(benchmark::State& state) {
  EncoderConfig c;
  c.init_seed = 2;
  const EncoderModel m = InitEncoder(c);
  Rng rng(3);
  std::vector<double> x(c.input_dim);
  for (double& v : x) v = rng.uniform01();
  for (auto _ : state) benchmark::DoNotOptimize(m.Forward(x));
}
BENCHMARK(BM_Forward);

void BM_SupConBackward(benchmark::State& state) {
  EncoderConfig c;
  c.init_seed = 4;
  const EncoderModel m = InitEncoder(c);
  Rng rng(5);
  std::vector<TrainingExample> batch;
  for (int i = 0; i < state.range(0); ++i) {
    FeatureVector f;
    f.values.resize(c.input_dim);
    for (double& v : f.values) v = rng.uniform01();
    batch.push_back({f, "a" + std::to_string(i % 8)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(SupConBackward(m, batch, kDefaultTemperature));
  }
}
BENCHMARK(BM_SupConBackward)->Arg(8)->Arg(32);

void BM_ExpectedMinimum(benchmark::State& state) {
  BetaFit fit;
  fit.alpha = 1.8;
  fit.beta = 15.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpectedMinimum(fit, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ExpectedMinimum)->Arg(1)->Arg(1293);

void BM_Auroc(benchmark::State& state) {
  Rng rng(6);
  std::vector<ScoredPair> scored;
  for (int i = 0; i < state.range(0); ++i) {
    scored.push_back({{"l", "r", i % 2 ? PairLabel::kSame : PairLabel::kDifferent},
                      rng.uniform(-1.0, 1.0)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(Auroc(scored));
}
BENCHMARK(BM_Auroc)->Arg(2000);

}  // namespace
}  // namespace stylomatch

BENCHMARK_MAIN();
