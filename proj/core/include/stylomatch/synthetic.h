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

#ifndef STYLOMATCH_SYNTHETIC_H_
#define STYLOMATCH_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stylomatch/corpus.h"
#include "stylomatch/random.h"

namespace stylomatch::synthetic {

// A synthetic author: biased preferences over a shared assembly vocabulary
// plus a few habitual instruction sequences.
struct Style {
  std::string author;
  std::vector<double> mnemonic_weights;
  std::vector<double> register_weights;
  std::vector<std::vector<std::string>> idioms;
  double idiom_rate = 0.0;
  double hex_immediate_rate = 0.5;
};

struct StyleOptions {
  // Spread of the log-normal bias applied to the shared vocabulary weights.
  double bias_sigma = 1.5;
  std::size_t idioms = 3;
  double idiom_rate = 0.15;
};

Style MakeStyle(const std::string& author, Rng& rng,
                const StyleOptions& options = {});

struct FunctionShape {
  std::size_t min_instructions = 60;
  std::size_t max_instructions = 160;
};

// Newline-separated assembly listing in the style of `style`.
std::string GenerateListing(const Style& style, Rng& rng,
                            const FunctionShape& shape = {});

// Regenerates about `fraction` of the listing's lines in the same style.
std::string EditListing(const std::string& listing, const Style& style,
                        double fraction, Rng& rng);

struct CorpusOptions {
  std::size_t authors = 20;
  std::size_t functions_per_author = 50;
  std::size_t binaries = 5;
  std::string project = "synthetic";
  std::uint64_t seed = 1;
  StyleOptions style;
  FunctionShape shape;
};

struct SyntheticCorpus {
  std::vector<Style> styles;
  std::vector<FunctionSample> samples;
};

// Every author owns functions_per_author single-author functions spread
// round-robin over the binaries. Each sample carries asm and asm_clean.
SyntheticCorpus GenerateCorpus(const CorpusOptions& options);

// Builds a single-author sample with asm and asm_clean representations.
FunctionSample MakeSample(const std::string& function_id,
                          const std::string& project,
                          const std::string& binary_id,
                          const std::string& function_name,
                          const std::string& author, std::string asm_text);

}  // namespace stylomatch::synthetic

#endif  // STYLOMATCH_SYNTHETIC_H_
