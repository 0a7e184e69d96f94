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

#include <array>

#include "stylomatch/error.h"

namespace stylomatch {
namespace {

bool IsHexDigit(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

bool IsWordChar(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c == '_';
}

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct CleanedLine {
  std::string text;
  bool touched = false;  // a comment was removed from this line
};

constexpr std::array<std::string_view, 3> kHexTargets = {"asm", "pcode",
                                                         "pcode2"};
constexpr std::array<std::string_view, 2> kCommentTargets = {"source",
                                                             "decompiled"};

template <std::size_t N>
bool Contains(const std::array<std::string_view, N>& arr,
              std::string_view name) {
  for (std::string_view s : arr) {
    if (s == name) return true;
  }
  return false;
}

}  // namespace

std::string CleanHex(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const bool starts_literal =
        text[i] == '0' && i + 2 < text.size() && text[i + 1] == 'x' &&
        IsHexDigit(text[i + 2]) && (i == 0 || !IsWordChar(text[i - 1]));
    if (starts_literal) {
      std::size_t j = i + 2;
      while (j < text.size() && IsHexDigit(text[j])) ++j;
      out.append(kHexPlaceholder);
      i = j;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::string StripComments(std::string_view text, bool strip_line,
                          bool strip_block,
                          std::vector<std::string>* warnings) {
  enum class State { kCode, kString, kChar, kLineComment, kBlockComment };
  State state = State::kCode;

  std::vector<CleanedLine> lines(1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == '\n') {
      if (state == State::kLineComment) state = State::kCode;
      // Unterminated literals do not continue past a newline.
      if (state == State::kString || state == State::kChar) state = State::kCode;
      lines.emplace_back();
      continue;
    }
    CleanedLine& line = lines.back();
    switch (state) {
      case State::kCode:
        if (strip_line && c == '/' && next == '/') {
          state = State::kLineComment;
          line.touched = true;
          ++i;
        } else if (strip_block && c == '/' && next == '*') {
          state = State::kBlockComment;
          line.touched = true;
          ++i;
        } else {
          if (c == '"') state = State::kString;
          if (c == '\'') state = State::kChar;
          line.text.push_back(c);
        }
        break;
      case State::kString:
      case State::kChar:
        line.text.push_back(c);
        if (c == '\\' && next != '\0' && next != '\n') {
          line.text.push_back(next);
          ++i;
        } else if ((state == State::kString && c == '"') ||
                   (state == State::kChar && c == '\'')) {
          state = State::kCode;
        }
        break;
      case State::kLineComment:
        break;
      case State::kBlockComment:
        line.touched = true;
        if (c == '*' && next == '/') {
          state = State::kCode;
          ++i;
        }
        break;
    }
  }
  if (state == State::kBlockComment && warnings != nullptr) {
    warnings->push_back("unterminated block comment stripped to end of text");
  }

  std::string out;
  out.reserve(text.size());
  bool first = true;
  for (CleanedLine& line : lines) {
    if (line.touched) {
      while (!line.text.empty() && IsBlank(line.text.back())) {
        line.text.pop_back();
      }
      if (line.text.empty()) continue;
    }
    if (!first) out.push_back('\n');
    out.append(line.text);
    first = false;
  }
  return out;
}

std::string ApplyRules(std::string_view text,
                       const std::set<CleaningRule>& rules,
                       std::vector<std::string>* warnings) {
  std::string out(text);
  const bool line = rules.contains(CleaningRule::kStripLineComments);
  const bool block = rules.contains(CleaningRule::kStripBlockComments);
  if (line || block) out = StripComments(out, line, block, warnings);
  if (rules.contains(CleaningRule::kHexToHexstr)) out = CleanHex(out);
  return out;
}

std::set<CleaningRule> ParseRules(std::string_view spec) {
  std::set<CleaningRule> rules;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view name = spec.substr(pos, comma - pos);
    if (name == "hex") {
      rules.insert(CleaningRule::kHexToHexstr);
    } else if (name == "comments") {
      rules.insert(CleaningRule::kStripLineComments);
      rules.insert(CleaningRule::kStripBlockComments);
    } else if (name == "line-comments") {
      rules.insert(CleaningRule::kStripLineComments);
    } else if (name == "block-comments") {
      rules.insert(CleaningRule::kStripBlockComments);
    } else {
      throw InvalidArgument("unknown cleaning rule '" + std::string(name) +
                            "' (expected hex, comments, line-comments or "
                            "block-comments)");
    }
    pos = comma + 1;
  }
  return rules;
}

std::set<CleaningRule> RulesFor(std::string_view base_repr,
                                const std::set<CleaningRule>& selected) {
  std::set<CleaningRule> out;
  for (CleaningRule rule : selected) {
    const bool applies = rule == CleaningRule::kHexToHexstr
                             ? Contains(kHexTargets, base_repr)
                             : Contains(kCommentTargets, base_repr);
    if (applies) out.insert(rule);
  }
  return out;
}

void CleanSample(FunctionSample& sample, const std::set<CleaningRule>& rules,
                 std::vector<std::string>* warnings) {
  for (std::string_view base :
       {std::string_view("source"), std::string_view("decompiled"),
        std::string_view("asm"), std::string_view("pcode"),
        std::string_view("pcode2")}) {
    const std::string* text = sample.repr(base);
    if (text == nullptr) continue;
    const std::set<CleaningRule> applicable = RulesFor(base, rules);
    if (applicable.empty()) continue;
    std::vector<std::string> local;
    std::string cleaned = ApplyRules(*text, applicable, &local);
    if (warnings != nullptr) {
      for (std::string& w : local) {
        warnings->push_back(sample.function_id + "/" + std::string(base) +
                            ": " + w);
      }
    }
    sample.reprs[std::string(base) + "_clean"] = std::move(cleaned);
  }
}

}  // namespace stylomatch
