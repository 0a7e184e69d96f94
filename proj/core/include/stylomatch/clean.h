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

#ifndef STYLOMATCH_CLEAN_H_
#define STYLOMATCH_CLEAN_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/corpus.h"

namespace stylomatch {

// Text transforms that remove author-irrelevant noise from a representation.
// Every rule is pure and idempotent.
enum class CleaningRule {
  kHexToHexstr,
  kStripLineComments,
  kStripBlockComments,
};

inline constexpr std::string_view kHexPlaceholder = "HEXSTR";

// Replaces every hex literal `0x[0-9a-fA-F]+` with HEXSTR. A literal must
// not be glued to a preceding identifier character, so `R0x1` is left alone.
std::string CleanHex(std::string_view text);

// Removes C-style comments outside string and character literals. Lines that
// only held a comment are dropped and trailing blanks left behind by a
// removed comment are trimmed. An unterminated block comment swallows the
// rest of the text and appends a message to `warnings` when given.
std::string StripComments(std::string_view text, bool strip_line = true,
                          bool strip_block = true,
                          std::vector<std::string>* warnings = nullptr);

std::string ApplyRules(std::string_view text,
                       const std::set<CleaningRule>& rules,
                       std::vector<std::string>* warnings = nullptr);

// Parses a rule list such as "hex,comments". "comments" selects both comment
// rules. Throws InvalidArgument on an unknown name.
std::set<CleaningRule> ParseRules(std::string_view spec);

// Rules that apply to a base representation. Hex replacement targets
// assembly and both P-code flavours; comment stripping targets source and
// decompiled code.
std::set<CleaningRule> RulesFor(std::string_view base_repr,
                                const std::set<CleaningRule>& selected);

// Recomputes `<base>_clean` for each base representation targeted by a
// selected rule. Other fields are left untouched.
void CleanSample(FunctionSample& sample, const std::set<CleaningRule>& rules,
                 std::vector<std::string>* warnings = nullptr);

}  // namespace stylomatch

#endif  // STYLOMATCH_CLEAN_H_
