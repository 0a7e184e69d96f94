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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "stylomatch/clean.h"
#include "stylomatch/contrastive.h"
#include "stylomatch/error.h"

namespace stylomatch {
namespace {

const std::set<CleaningRule> kAllRules = {CleaningRule::kHexToHexstr,
                                          CleaningRule::kStripLineComments,
                                          CleaningRule::kStripBlockComments};

std::optional<std::string> CleanedText(const FunctionSample& s,
                                       std::string_view repr) {
  const std::string* text = s.repr(repr);
  if (text == nullptr) return std::nullopt;
  return ApplyRules(*text, kAllRules);
}

const std::string& RequireRepr(const FunctionSample& s, std::string_view repr) {
  const std::string* text = s.repr(repr);
  if (text == nullptr) {
    throw DataError("function '" + s.function_id + "' lacks representation '" +
                    std::string(repr) + "'");
  }
  return *text;
}

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::size_t InstructionCount(const FunctionSample& sample) {
  const std::string* text = sample.repr("asm");
  if (text == nullptr) text = sample.repr("asm_clean");
  if (text == nullptr) return 0;
  std::size_t count = 0;
  std::istringstream in(*text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) ++count;
  }
  return count;
}

double StyleDistance(std::span<const double> a, std::span<const double> b) {
  return std::clamp(1.0 - CosineSimilarity(a, b), 0.0, 1.0);
}

std::vector<FunctionSample> ChangedFunctions(
    std::span<const FunctionSample> old, std::span<const FunctionSample> updated,
    std::string_view repr) {
  std::unordered_map<std::string, std::vector<std::optional<std::string>>>
      old_texts;
  for (const FunctionSample& s : old) {
    old_texts[s.function_name].push_back(CleanedText(s, repr));
  }
  std::vector<FunctionSample> changed;
  for (const FunctionSample& s : updated) {
    auto it = old_texts.find(s.function_name);
    if (it == old_texts.end()) {
      changed.push_back(s);
      continue;
    }
    const std::optional<std::string> text = CleanedText(s, repr);
    if (std::find(it->second.begin(), it->second.end(), text) ==
        it->second.end()) {
      changed.push_back(s);
    }
  }
  return changed;
}

ScanReport ScanUpdate(const EncoderModel& model,
                      const FittedFeaturizer& featurizer,
                      std::span<const FunctionSample> old,
                      std::span<const FunctionSample> updated,
                      const ScanConfig& cfg,
                      std::span<const double> same_author_scores) {
  if (old.empty()) throw InvalidArgument("scan needs a non-empty old corpus");

  ScanReport report;
  report.corpus_size = old.size();
  if (cfg.manual_theta) {
    report.theta = {*cfg.manual_theta, old.size(), ThresholdSource::kManual,
                    ScoreDomain::kDistance};
  } else {
    Calibration c =
        DeriveThreshold(same_author_scores, old.size(), ScoreDomain::kDistance);
    report.theta = c.threshold;
    report.fit = c.fit;
  }

  std::vector<Embedding> corpus;
  corpus.reserve(old.size());
  for (const FunctionSample& s : old) {
    corpus.push_back(EmbedText(model, featurizer,
                               RequireRepr(s, cfg.representation),
                               cfg.token_limit));
  }

  for (const FunctionSample& s : ChangedFunctions(old, updated, cfg.representation)) {
    ScanEntry entry;
    entry.function_id = s.function_id;
    if (InstructionCount(s) < cfg.min_instruction_count) {
      entry.skipped_reason = std::string(kSkippedBelowMinInstructions);
      report.entries.push_back(std::move(entry));
      continue;
    }
    const Embedding e = EmbedText(model, featurizer,
                                  RequireRepr(s, cfg.representation),
                                  cfg.token_limit);
    entry.min_distance = 2.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const double d = StyleDistance(e, corpus[i]);
      if (d < entry.min_distance) {
        entry.min_distance = d;
        entry.nearest_corpus_id = old[i].function_id;
      }
    }
    entry.flagged = entry.min_distance > report.theta.value;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::string ScanReportToJson(const ScanReport& report) {
  nlohmann::ordered_json j;
  j["corpus_size"] = report.corpus_size;
  j["theta"]["value"] = report.theta.value;
  j["theta"]["n"] = report.theta.n;
  j["theta"]["source"] = ToString(report.theta.source);
  j["theta"]["domain"] = ToString(report.theta.domain);
  if (report.fit) {
    j["calibration"]["alpha"] = report.fit->alpha;
    j["calibration"]["beta"] = report.fit->beta;
    j["calibration"]["fitted_on"] = report.fit->fitted_on;
  }
  j["entries"] = nlohmann::ordered_json::array();
  for (const ScanEntry& e : report.entries) {
    nlohmann::ordered_json entry;
    entry["function_id"] = e.function_id;
    if (e.skipped_reason) {
      entry["min_distance"] = nullptr;
      entry["nearest_corpus_id"] = nullptr;
    } else {
      entry["min_distance"] = e.min_distance;
      entry["nearest_corpus_id"] = e.nearest_corpus_id;
    }
    entry["flagged"] = e.flagged;
    if (e.skipped_reason) {
      entry["skipped_reason"] = *e.skipped_reason;
    } else {
      entry["skipped_reason"] = nullptr;
    }
    j["entries"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

std::string ScanReportToCsv(const ScanReport& report) {
  std::ostringstream out;
  out << "function_id,min_distance,flagged\n";
  for (const ScanEntry& e : report.entries) {
    std::string id = e.function_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      id = quoted + "\"";
    }
    out << id << ',' << (e.skipped_reason ? "" : FormatDouble(e.min_distance))
        << ',' << (e.flagged ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace stylomatch
