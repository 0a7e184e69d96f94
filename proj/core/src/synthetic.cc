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

#include "stylomatch/synthetic.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <utility>

#include "stylomatch/clean.h"

namespace stylomatch::synthetic {
namespace {

constexpr std::array<std::string_view, 36> kMnemonics = {
    "MOV",  "LEA",   "ADD",   "SUB",  "IMUL",  "XOR",   "AND",  "OR",
    "CMP",  "TEST",  "JZ",    "JNZ",  "JMP",   "JL",    "JGE",  "JBE",
    "CALL", "PUSH",  "POP",   "RET",  "SHL",   "SHR",   "SAR",  "INC",
    "DEC",  "NEG",   "NOT",   "MOVZX", "MOVSX", "CMOVZ", "SETZ", "CDQE",
    "NOP",  "LEAVE", "MOVSD", "CVTSI2SD"};

constexpr std::array<std::string_view, 16> kRegisters = {
    "RAX", "RBX", "RCX", "RDX", "RSI", "RDI", "R8",  "R9",
    "R10", "R11", "R12", "R13", "R14", "R15", "EAX", "EDX"};

// Operand arity by mnemonic index.
int Arity(std::string_view m) {
  if (m == "RET" || m == "NOP" || m == "LEAVE" || m == "CDQE") return 0;
  if (m == "JZ" || m == "JNZ" || m == "JMP" || m == "JL" || m == "JGE" ||
      m == "JBE" || m == "CALL" || m == "PUSH" || m == "POP" || m == "INC" ||
      m == "DEC" || m == "NEG" || m == "NOT" || m == "SETZ") {
    return 1;
  }
  return 2;
}

bool IsBranch(std::string_view m) {
  return m == "JZ" || m == "JNZ" || m == "JMP" || m == "JL" || m == "JGE" ||
         m == "JBE" || m == "CALL";
}

std::size_t Pick(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = rng.uniform01() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r -= weights[i];
    if (r < 0.0) return i;
  }
  return weights.size() - 1;
}

std::string Hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Immediate(const Style& style, Rng& rng) {
  const std::uint64_t v = rng.below(256);
  return rng.uniform01() < style.hex_immediate_rate ? Hex(v) : std::to_string(v);
}

std::string Register(const Style& style, Rng& rng) {
  return std::string(kRegisters[Pick(style.register_weights, rng)]);
}

std::string Operand(const Style& style, Rng& rng) {
  const double r = rng.uniform01();
  if (r < 0.55) return Register(style, rng);
  if (r < 0.8) {
    return "qword ptr [RBP + -" + Hex(8 * (1 + rng.below(8))) + "]";
  }
  return Immediate(style, rng);
}

std::string Instruction(const Style& style, Rng& rng) {
  const std::string_view m = kMnemonics[Pick(style.mnemonic_weights, rng)];
  std::string line(m);
  if (IsBranch(m)) return line + " " + Hex(0x100000 + rng.below(0x10000));
  const int arity = Arity(m);
  if (arity >= 1) line += " " + Register(style, rng);
  if (arity == 2) line += "," + Operand(style, rng);
  return line;
}

void AppendBody(std::vector<std::string>& lines, const Style& style,
                std::size_t count, Rng& rng) {
  while (lines.size() < count) {
    if (!style.idioms.empty() && rng.uniform01() < style.idiom_rate) {
      const auto& idiom = style.idioms[rng.below(style.idioms.size())];
      for (const std::string& l : idiom) lines.push_back(l);
    } else {
      lines.push_back(Instruction(style, rng));
    }
  }
}

std::string Join(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace

Style MakeStyle(const std::string& author, Rng& rng,
                const StyleOptions& options) {
  Style s;
  s.author = author;
  for (std::size_t i = 0; i < kMnemonics.size(); ++i) {
    const double base = 1.0 / (1.0 + 0.1 * static_cast<double>(i));
    s.mnemonic_weights.push_back(base *
                                 std::exp(options.bias_sigma * rng.normal()));
  }
  for (std::size_t i = 0; i < kRegisters.size(); ++i) {
    s.register_weights.push_back(std::exp(options.bias_sigma * rng.normal()));
  }
  s.idiom_rate = options.idiom_rate;
  s.hex_immediate_rate = rng.uniform01();
  for (std::size_t k = 0; k < options.idioms; ++k) {
    std::vector<std::string> idiom;
    const std::size_t len = 2 + rng.below(3);
    for (std::size_t j = 0; j < len; ++j) idiom.push_back(Instruction(s, rng));
    s.idioms.push_back(std::move(idiom));
  }
  return s;
}

std::string GenerateListing(const Style& style, Rng& rng,
                            const FunctionShape& shape) {
  const std::size_t span = shape.max_instructions - shape.min_instructions + 1;
  const std::size_t count = shape.min_instructions + rng.below(span);
  std::vector<std::string> lines = {"ENDBR64", "PUSH RBP", "MOV RBP,RSP"};
  AppendBody(lines, style, count - 1, rng);
  lines.resize(count - 1);
  lines.push_back("RET");
  return Join(lines);
}

std::string EditListing(const std::string& listing, const Style& style,
                        double fraction, Rng& rng) {
  std::vector<std::string> lines;
  std::istringstream in(listing);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  bool changed = false;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    if (rng.uniform01() < fraction) {
      lines[i] = Instruction(style, rng);
      changed = true;
    }
  }
  if (!changed && lines.size() > 2) {
    lines[1 + rng.below(lines.size() - 2)] = Instruction(style, rng) + " ";
    lines.insert(lines.begin() + 1, Instruction(style, rng));
  }
  return Join(lines);
}

FunctionSample MakeSample(const std::string& function_id,
                          const std::string& project,
                          const std::string& binary_id,
                          const std::string& function_name,
                          const std::string& author, std::string asm_text) {
  FunctionSample s;
  s.function_id = function_id;
  s.project = project;
  s.binary_id = binary_id;
  s.function_name = function_name;
  s.authors = {{author, 1.0}};
  s.reprs["asm_clean"] = CleanHex(asm_text);
  s.reprs["asm"] = std::move(asm_text);
  return s;
}

SyntheticCorpus GenerateCorpus(const CorpusOptions& options) {
  Rng rng(options.seed);
  SyntheticCorpus corpus;
  for (std::size_t a = 0; a < options.authors; ++a) {
    char name[32];
    std::snprintf(name, sizeof name, "author%02zu", a);
    corpus.styles.push_back(MakeStyle(name, rng, options.style));
  }
  std::vector<std::size_t> per_binary(options.binaries, 0);
  for (std::size_t a = 0; a < options.authors; ++a) {
    const Style& style = corpus.styles[a];
    for (std::size_t k = 0; k < options.functions_per_author; ++k) {
      const std::size_t b = k % options.binaries;
      char binary[32];
      char fname[32];
      std::snprintf(binary, sizeof binary, "bin%02zu", b);
      std::snprintf(fname, sizeof fname, "FUN_%05zu", per_binary[b]++);
      corpus.samples.push_back(MakeSample(
          std::string(binary) + ":" + fname, options.project, binary, fname,
          style.author, GenerateListing(style, rng, options.shape)));
    }
  }
  return corpus;
}

}  // namespace stylomatch::synthetic
