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

#include "stylomatch/scan.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "stylomatch/contrastive.h"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

FunctionSample Fn(const std::string& name, const std::string& asm_text) {
  FunctionSample s;
  s.function_id = "v:" + name;
  s.project = "p";
  s.binary_id = "b";
  s.function_name = name;
  s.authors = {{"A", 1.0}};
  s.reprs["asm"] = asm_text;
  return s;
}

// Features {"a", "b", "c"} mapped straight through a 3x3 identity layer, so
// "a", "b" and "c" embed to orthogonal unit vectors.
class ScanTest : public ::testing::Test {
 protected:
  void SetUp() override {
    featurizer_ = FittedFeaturizer::FromParts(FeaturizerKind::kCharNgram, 1, 3,
                                              3, 3, {"a", "b", "c"}, {});
    EncoderConfig c{3, 1, 3, 0, Activation::kRelu, 0};
    Layer l{Matrix(3, 3), {0.0, 0.0, 0.0}};
    for (int i = 0; i < 3; ++i) l.weights.at(i, i) = 1.0;
    model_ = EncoderModel(c, {l});
    cfg_.representation = "asm";
    cfg_.min_instruction_count = 1;
    old_ = {Fn("f1", "a"), Fn("f2", "ab")};
  }
  FittedFeaturizer featurizer_;
  EncoderModel model_;
  ScanConfig cfg_;
  std::vector<FunctionSample> old_;
};

TEST_F(ScanTest, IdenticalVersionsHaveNoChanges) {
  EXPECT_TRUE(ChangedFunctions(old_, old_, "asm").empty());
  cfg_.manual_theta = 0.5;
  EXPECT_TRUE(ScanUpdate(model_, featurizer_, old_, old_, cfg_, {}).entries.empty());
}

TEST_F(ScanTest, AddedFunctionIsReported) {
  std::vector<FunctionSample> updated = old_;
  updated.push_back(Fn("f3", "c"));
  const auto changed = ChangedFunctions(old_, updated, "asm");
  ASSERT_EQ(changed.size(), 1u);
  EXPECT_EQ(changed[0].function_name, "f3");
}

TEST_F(ScanTest, CleaningOnlyDifferencesAreNotChanges) {
  std::vector<FunctionSample> old = {Fn("f1", "MOV EAX,0x10")};
  std::vector<FunctionSample> updated = {Fn("f1", "MOV EAX,0x20")};
  EXPECT_TRUE(ChangedFunctions(old, updated, "asm").empty());
  updated[0].reprs["asm"] = "MOV EBX,0x20";
  EXPECT_EQ(ChangedFunctions(old, updated, "asm").size(), 1u);
}

TEST_F(ScanTest, ExactMatchAndOrthogonalQuery) {
  cfg_.manual_theta = 0.4;
  const std::vector<FunctionSample> updated = {Fn("f1", "ba"), Fn("g", "c")};
  const ScanReport r = ScanUpdate(model_, featurizer_, old_, updated, cfg_, {});
  ASSERT_EQ(r.entries.size(), 2u);
  // "ba" has the same unigram profile as "ab".
  EXPECT_NEAR(r.entries[0].min_distance, 0.0, 1e-12);
  EXPECT_EQ(r.entries[0].nearest_corpus_id, "v:f2");
  EXPECT_FALSE(r.entries[0].flagged);
  EXPECT_EQ(r.entries[1].min_distance, 1.0);
  EXPECT_TRUE(r.entries[1].flagged);
  EXPECT_EQ(r.theta.source, ThresholdSource::kManual);
  EXPECT_FALSE(r.fit.has_value());
}

TEST_F(ScanTest, ShortFunctionsAreSkipped) {
  cfg_.manual_theta = 0.4;
  cfg_.min_instruction_count = 2;
  const std::vector<FunctionSample> updated = {Fn("g", "c"), Fn("h", "c\n\nc\n")};
  const ScanReport r = ScanUpdate(model_, featurizer_, old_, updated, cfg_, {});
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].skipped_reason, std::string(kSkippedBelowMinInstructions));
  EXPECT_FALSE(r.entries[0].flagged);
  EXPECT_FALSE(r.entries[1].skipped_reason.has_value());
  const std::string json = ScanReportToJson(r);
  EXPECT_NE(json.find("below_min_instructions"), std::string::npos);
  EXPECT_EQ(ScanReportToCsv(r), "function_id,min_distance,flagged\nv:g,,false\nv:h,1,true\n");
}

TEST_F(ScanTest, DynamicThresholdUsesCorpusSize) {
  const std::vector<double> scores = {0.95, 0.9, 0.97, 0.92, 0.99, 0.93};
  const std::vector<FunctionSample> updated = {Fn("g", "c")};
  const ScanReport r = ScanUpdate(model_, featurizer_, old_, updated, cfg_, scores);
  EXPECT_EQ(r.theta.n, old_.size());
  EXPECT_EQ(r.theta.domain, ScoreDomain::kDistance);
  ASSERT_TRUE(r.fit.has_value());
  EXPECT_NEAR(r.theta.value, ExpectedMinimum(*r.fit, old_.size()), 1e-15);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_TRUE(r.entries[0].flagged);
}

TEST_F(ScanTest, Errors) {
  cfg_.manual_theta = 0.5;
  EXPECT_THROW(ScanUpdate(model_, featurizer_, {}, old_, cfg_, {}), InvalidArgument);
  cfg_.manual_theta.reset();
  const std::vector<double> flat = {0.5, 0.5};
  const std::vector<FunctionSample> updated = {Fn("g", "c")};
  EXPECT_THROW(ScanUpdate(model_, featurizer_, old_, updated, cfg_, flat), NumericalError);
}

TEST(ScanPropertyTest, FlagsFollowThresholdAndShrinkWithCorpus) {
  // Random embeddings through a random linear encoder.
  Rng rng(10);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  const FittedFeaturizer f = FittedFeaturizer::FromParts(
      FeaturizerKind::kCharNgram, 1, 3, 6, 1, alphabet, {});
  EncoderConfig c{6, 4, 5, 1, Activation::kRelu, 4};
  EncoderModel m = InitEncoder(c);
  for (Layer& l : m.mutable_layers()) std::fill(l.bias.begin(), l.bias.end(), 0.1);
  auto random_text = [&] {
    std::string t;
    for (int i = 0; i < 8; ++i) t += alphabet[rng.below(6)];
    return t;
  };
  std::vector<FunctionSample> old, updated;
  for (int i = 0; i < 20; ++i) old.push_back(Fn("o" + std::to_string(i), random_text()));
  for (int i = 0; i < 15; ++i) updated.push_back(Fn("n" + std::to_string(i), random_text()));
  ScanConfig cfg;
  cfg.representation = "asm";
  cfg.min_instruction_count = 0;
  cfg.manual_theta = 0.05;
  const ScanReport small = ScanUpdate(m, f, std::span(old).first(10), updated, cfg, {});
  const ScanReport large = ScanUpdate(m, f, old, updated, cfg, {});
  ASSERT_EQ(small.entries.size(), updated.size());
  for (std::size_t i = 0; i < updated.size(); ++i) {
    EXPECT_EQ(large.entries[i].flagged, large.entries[i].min_distance > 0.05);
    EXPECT_LE(large.entries[i].min_distance, small.entries[i].min_distance);
    if (!small.entries[i].flagged) EXPECT_FALSE(large.entries[i].flagged);
    const FunctionSample* nearest = nullptr;
    for (const auto& s : old) {
      if (s.function_id == large.entries[i].nearest_corpus_id) nearest = &s;
    }
    ASSERT_NE(nearest, nullptr);
    EXPECT_EQ(StyleDistance(EmbedText(m, f, *nearest->repr("asm")),
                            EmbedText(m, f, *updated[i].repr("asm"))),
              large.entries[i].min_distance);
  }
}

TEST(InstructionCountTest, CountsNonEmptyLines) {
  FunctionSample s;
  s.reprs["asm"] = "PUSH RBP\n\n  \nRET\n";
  EXPECT_EQ(InstructionCount(s), 2u);
  s.reprs.erase("asm");
  s.reprs["asm_clean"] = "RET";
  EXPECT_EQ(InstructionCount(s), 1u);
  s.reprs.clear();
  EXPECT_EQ(InstructionCount(s), 0u);
}

}  // namespace
}  // namespace stylomatch
