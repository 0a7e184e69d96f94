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

#include "stylomatch/clean.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "oracles.h"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

using oracle::ReadTestFile;

TEST(CleanHexTest, Examples) {
  EXPECT_EQ(CleanHex("JUMP 0x1a2b"), "JUMP HEXSTR");
  EXPECT_EQ(CleanHex("SUB RSP,0x10"), "SUB RSP,HEXSTR");
  EXPECT_EQ(CleanHex("MOV RBP,RSP"), "MOV RBP,RSP");
  EXPECT_EQ(CleanHex("0xDEADbeef+0x1"), "HEXSTR+HEXSTR");
  EXPECT_EQ(CleanHex("R0x1 _0x2"), "R0x1 _0x2");
  EXPECT_EQ(CleanHex("0x"), "0x");
  EXPECT_EQ(CleanHex("[RBP + -0x28]"), "[RBP + -HEXSTR]");
}

TEST(CleanHexTest, Idempotent) {
  Rng rng(5);
  const std::string alphabet = "0xX1aFg_ ,R";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string t;
    const std::size_t len = rng.below(24);
    for (std::size_t i = 0; i < len; ++i) t += alphabet[rng.below(alphabet.size())];
    const std::string once = CleanHex(t);
    EXPECT_EQ(CleanHex(once), once) << t;
  }
}

TEST(StripCommentsTest, Examples) {
  EXPECT_EQ(StripComments("int x; // note"), "int x;");
  const std::string literal = "s = \"//not a comment\";";
  EXPECT_EQ(StripComments(literal), literal);
  EXPECT_EQ(StripComments("c = '/'; /* x */ d = 1;"), "c = '/';  d = 1;");
  EXPECT_EQ(StripComments("a = \"\\\" /* still string\";"),
            "a = \"\\\" /* still string\";");
}

TEST(StripCommentsTest, CommentOnlyLinesAreDropped) {
  EXPECT_EQ(StripComments("a;\n// gone\nb;\n"), "a;\nb;\n");
  EXPECT_EQ(StripComments("a;\n/* one\n two */\nb;"), "a;\nb;");
  EXPECT_EQ(StripComments("a;\n\nb;"), "a;\n\nb;");
}

TEST(StripCommentsTest, SelectsRuleKinds) {
  const std::string text = "a; // l\nb; /* k */";
  EXPECT_EQ(StripComments(text, true, false), "a;\nb; /* k */");
  EXPECT_EQ(StripComments(text, false, true), "a; // l\nb;");
  EXPECT_EQ(StripComments(text, false, false), text);
}

TEST(StripCommentsTest, UnterminatedBlockWarns) {
  std::vector<std::string> warnings;
  EXPECT_EQ(StripComments("x = 1; /* open\nmore", true, true, &warnings),
            "x = 1;");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("unterminated"), std::string::npos);
}

TEST(StripCommentsTest, Idempotent) {
  Rng rng(9);
  const std::string alphabet = "a/*\"'\\\n ;";
  for (int trial = 0; trial < 3000; ++trial) {
    std::string t;
    const std::size_t len = rng.below(30);
    for (std::size_t i = 0; i < len; ++i) t += alphabet[rng.below(alphabet.size())];
    const std::string once = StripComments(t);
    EXPECT_EQ(StripComments(once), once) << "input: " << t;
  }
}

TEST(ReferenceListingTest, ListingsMatchCleanedCounterparts) {
  const std::set<CleaningRule> all = ParseRules("hex,comments");
  for (const char* base : {"source", "asm", "pcode", "pcode2"}) {
    const std::string raw = ReadTestFile(std::string("listings/") + base + ".txt");
    const std::string clean =
        ReadTestFile(std::string("listings/") + base + "_clean.txt");
    ASSERT_FALSE(raw.empty()) << base;
    EXPECT_EQ(ApplyRules(raw, RulesFor(base, all)), clean) << base;
  }
}

TEST(ReferenceListingTest, TransformsIdempotentOnCorpus) {
  for (const char* name :
       {"source", "source_clean", "decompiled", "asm", "asm_clean", "pcode",
        "pcode_clean", "pcode2", "pcode2_clean", "raw_hex"}) {
    const std::string text = ReadTestFile(std::string("listings/") + name + ".txt");
    ASSERT_FALSE(text.empty()) << name;
    const std::string hex = CleanHex(text);
    EXPECT_EQ(CleanHex(hex), hex) << name;
    const std::string stripped = StripComments(text);
    EXPECT_EQ(StripComments(stripped), stripped) << name;
    const std::string both = StripComments(CleanHex(text));
    EXPECT_EQ(StripComments(CleanHex(both)), both) << name;
  }
}

TEST(ParseRulesTest, NamesAndErrors) {
  EXPECT_EQ(ParseRules("hex"), std::set<CleaningRule>{CleaningRule::kHexToHexstr});
  EXPECT_EQ(ParseRules("comments").size(), 2u);
  EXPECT_EQ(ParseRules("hex,line-comments"),
            (std::set<CleaningRule>{CleaningRule::kHexToHexstr,
                                    CleaningRule::kStripLineComments}));
  EXPECT_THROW(ParseRules("bogus"), InvalidArgument);
  EXPECT_THROW(ParseRules("hex,bogus"), InvalidArgument);
}

TEST(CleanSampleTest, WritesCleanFieldsOnly) {
  FunctionSample s;
  s.function_id = "f";
  s.reprs["asm"] = "SUB RSP,0x10";
  s.reprs["source"] = "int x; // c";
  s.reprs["raw_hex"] = "c3";
  CleanSample(s, ParseRules("hex,comments"));
  EXPECT_EQ(s.reprs.at("asm_clean"), "SUB RSP,HEXSTR");
  EXPECT_EQ(s.reprs.at("source_clean"), "int x;");
  EXPECT_EQ(s.reprs.at("asm"), "SUB RSP,0x10");
  EXPECT_EQ(s.reprs.at("raw_hex"), "c3");
  EXPECT_FALSE(s.reprs.contains("pcode_clean"));
  FunctionSample again = s;
  CleanSample(again, ParseRules("hex,comments"));
  EXPECT_EQ(again.reprs, s.reprs);
}

}  // namespace
}  // namespace stylomatch
