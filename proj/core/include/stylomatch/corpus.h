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

#ifndef STYLOMATCH_CORPUS_H_
#define STYLOMATCH_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylomatch {

// The eleven representation names a corpus record may carry.
inline constexpr std::array<std::string_view, 11> kRepresentationNames = {
    "source",  "source_clean", "decompiled",   "decompiled_clean",
    "asm",     "asm_clean",    "pcode",        "pcode_clean",
    "pcode2",  "pcode2_clean", "raw_hex",
};

bool IsKnownRepresentation(std::string_view name);

// Minimum share for an author to own a function.
inline constexpr double kMajorityShare = 0.51;
// Slack above 1.0 tolerated in the sum of shares.
inline constexpr double kShareSumSlack = 1e-6;
inline constexpr std::size_t kDefaultTokenLimit = 1000;

struct AuthorShare {
  std::string name;
  double share = 0.0;
};

// One function extracted from a binary, with ownership shares and its
// textual representations. raw_hex holds the function bytes as lowercase
// hex.
struct FunctionSample {
  std::string function_id;
  std::string project;
  std::string binary_id;
  std::string function_name;
  std::vector<AuthorShare> authors;
  std::map<std::string, std::string> reprs;

  // nullptr when the representation is absent.
  const std::string* repr(std::string_view name) const;
};

// A sample attributed to its majority author.
struct LabeledSample {
  FunctionSample sample;
  std::string owner;
};

enum class PairLabel { kSame, kDifferent };

std::string_view ToString(PairLabel label);

struct SamplePair {
  std::string left;
  std::string right;
  PairLabel label = PairLabel::kDifferent;

  friend bool operator==(const SamplePair&, const SamplePair&) = default;
};

struct AuthorSplit {
  std::set<std::string> train_authors;
  std::set<std::string> eval_authors;
};

struct PairCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

// Throws DataError describing the first violated invariant.
void ValidateSample(const FunctionSample& sample);

// Reads a JSON-lines corpus. Errors name the offending line and field;
// duplicate function ids cite both lines. Blank lines are skipped.
std::vector<FunctionSample> ReadCorpus(std::istream& in);
std::vector<FunctionSample> LoadCorpus(const std::filesystem::path& path);

// Canonical one-line JSON encoding (fixed key order, reprs sorted by name).
std::string SerializeSample(const FunctionSample& sample);
void WriteCorpus(std::ostream& out, std::span<const FunctionSample> samples);
void SaveCorpus(const std::filesystem::path& path,
                std::span<const FunctionSample> samples);

// The author holding at least 51% of the function, if any.
std::optional<std::string> MajorityAuthor(const FunctionSample& sample);

// Keeps samples with a majority author, in input order.
std::vector<LabeledSample> LabelSamples(
    std::span<const FunctionSample> samples);

// Partitions owners into disjoint train/eval sets. The train set receives
// floor(train_fraction * owners) authors, kept within [1, owners - 1].
AuthorSplit SplitByAuthor(std::span<const LabeledSample> samples,
                          double train_fraction, std::uint64_t seed);

std::vector<LabeledSample> FilterByAuthors(
    std::span<const LabeledSample> samples,
    const std::set<std::string>& authors);

// Draws unordered same-binary pairs: up to counts.positive same-owner pairs
// followed by up to counts.negative different-owner pairs. A class with a
// nonzero request and no candidates is an error.
std::vector<SamplePair> SamplePairs(std::span<const LabeledSample> samples,
                                    PairCounts counts, std::uint64_t seed);

inline std::vector<SamplePair> SamplePairs(
    std::span<const LabeledSample> samples, std::size_t count_per_class,
    std::uint64_t seed) {
  return SamplePairs(samples, PairCounts{count_per_class, count_per_class},
                     seed);
}

// Keeps the first `limit` whitespace-delimited tokens, joined by single
// spaces.
std::string TruncateTokens(std::string_view text,
                           std::size_t limit = kDefaultTokenLimit);

}  // namespace stylomatch

#endif  // STYLOMATCH_CORPUS_H_
