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

#ifndef STYLOMATCH_SCAN_H_
#define STYLOMATCH_SCAN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/calibration.h"
#include "stylomatch/corpus.h"
#include "stylomatch/encoder.h"
#include "stylomatch/featurizer.h"

namespace stylomatch {

inline constexpr std::size_t kDefaultMinInstructions = 50;
inline constexpr std::string_view kSkippedBelowMinInstructions =
    "below_min_instructions";

struct ScanConfig {
  // Representation that is embedded and diffed.
  std::string representation = "asm_clean";
  // Functions with fewer non-empty asm lines are reported but not scored.
  std::size_t min_instruction_count = kDefaultMinInstructions;
  // Fixed distance threshold; when empty the threshold is derived from the
  // same-author scores with n = |old|.
  std::optional<double> manual_theta;
  std::size_t token_limit = kDefaultTokenLimit;
};

struct ScanEntry {
  std::string function_id;
  double min_distance = 0.0;
  std::string nearest_corpus_id;
  bool flagged = false;
  std::optional<std::string> skipped_reason;
};

struct ScanReport {
  std::size_t corpus_size = 0;
  Threshold theta;
  std::optional<BetaFit> fit;  // present for a derived threshold
  std::vector<ScanEntry> entries;
};

// Non-empty lines of the asm representation (asm_clean when asm is absent).
std::size_t InstructionCount(const FunctionSample& sample);

// Distance used by the scan: 1 - cosine similarity, clamped to [0, 1].
double StyleDistance(std::span<const double> a, std::span<const double> b);

// Functions of `updated` whose name is new, or whose `repr` text differs
// from every same-named function of `old` after cleaning. Keeps input order.
std::vector<FunctionSample> ChangedFunctions(
    std::span<const FunctionSample> old, std::span<const FunctionSample> updated,
    std::string_view repr);

// Profiles every changed function of `updated` by its minimum distance to
// the embedded `old` corpus and flags those above theta.
ScanReport ScanUpdate(const EncoderModel& model,
                      const FittedFeaturizer& featurizer,
                      std::span<const FunctionSample> old,
                      std::span<const FunctionSample> updated,
                      const ScanConfig& cfg,
                      std::span<const double> same_author_scores);

std::string ScanReportToJson(const ScanReport& report);
// function_id,min_distance,flagged
std::string ScanReportToCsv(const ScanReport& report);

}  // namespace stylomatch

#endif  // STYLOMATCH_SCAN_H_
