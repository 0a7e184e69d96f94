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

#include "stylomatch/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "stylomatch/atomic_file.h"
#include "stylomatch/error.h"
#include "stylomatch/random.h"

namespace stylomatch {
namespace {

using nlohmann::json;

[[noreturn]] void FailLine(std::size_t line, std::string_view field,
                           std::string_view what) {
  std::ostringstream msg;
  msg << "corpus line " << line << ", field '" << field << "': " << what;
  throw DataError(msg.str());
}

const json& RequireKey(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) FailLine(line, key, "missing");
  return *it;
}

std::string RequireString(const json& obj, const char* key, std::size_t line) {
  const json& v = RequireKey(obj, key, line);
  if (!v.is_string()) FailLine(line, key, "expected a string");
  return v.get<std::string>();
}

bool IsLowerHex(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
}

FunctionSample ParseRecord(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    FailLine(line, "<record>", std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) FailLine(line, "<record>", "expected a JSON object");

  static constexpr std::array<std::string_view, 6> kKeys = {
      "function_id", "project", "binary_id",
      "function_name", "authors", "reprs"};
  for (const auto& [key, value] : obj.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      FailLine(line, key, "unknown key");
    }
  }

  FunctionSample sample;
  sample.function_id = RequireString(obj, "function_id", line);
  sample.project = RequireString(obj, "project", line);
  sample.binary_id = RequireString(obj, "binary_id", line);
  sample.function_name = RequireString(obj, "function_name", line);

  const json& authors = RequireKey(obj, "authors", line);
  if (!authors.is_array()) FailLine(line, "authors", "expected an array");
  for (std::size_t i = 0; i < authors.size(); ++i) {
    const json& a = authors[i];
    const std::string field = "authors[" + std::to_string(i) + "]";
    if (!a.is_object()) FailLine(line, field, "expected an object");
    for (const auto& [key, value] : a.items()) {
      if (key != "name" && key != "share") {
        FailLine(line, field + "." + key, "unknown key");
      }
    }
    auto name = a.find("name");
    auto share = a.find("share");
    if (name == a.end() || !name->is_string()) {
      FailLine(line, field + ".name", "expected a string");
    }
    if (share == a.end() || !share->is_number()) {
      FailLine(line, field + ".share", "expected a number");
    }
    sample.authors.push_back({name->get<std::string>(), share->get<double>()});
  }

  const json& reprs = RequireKey(obj, "reprs", line);
  if (!reprs.is_object()) FailLine(line, "reprs", "expected an object");
  for (const auto& [key, value] : reprs.items()) {
    if (!IsKnownRepresentation(key)) {
      FailLine(line, "reprs." + key, "unknown representation");
    }
    if (!value.is_string()) FailLine(line, "reprs." + key, "expected a string");
    sample.reprs.emplace(key, value.get<std::string>());
  }

  try {
    ValidateSample(sample);
  } catch (const DataError& e) {
    std::ostringstream msg;
    msg << e.what() << ", line " << line;
    throw DataError(msg.str());
  }
  return sample;
}

}  // namespace

bool IsKnownRepresentation(std::string_view name) {
  return std::find(kRepresentationNames.begin(), kRepresentationNames.end(),
                   name) != kRepresentationNames.end();
}

const std::string* FunctionSample::repr(std::string_view name) const {
  auto it = reprs.find(std::string(name));
  return it == reprs.end() ? nullptr : &it->second;
}

std::string_view ToString(PairLabel label) {
  return label == PairLabel::kSame ? "same" : "different";
}

void ValidateSample(const FunctionSample& sample) {
  const std::string who = "function '" + sample.function_id + "'";
  if (sample.function_id.empty()) throw DataError("empty function_id");
  if (sample.authors.empty()) throw DataError(who + ": no authors");
  double sum = 0.0;
  for (const AuthorShare& a : sample.authors) {
    if (!(a.share >= 0.0 && a.share <= 1.0)) {
      throw DataError(who + ": share out of range (" + a.name + ")");
    }
    sum += a.share;
  }
  if (!(sum > 0.0 && sum <= 1.0 + kShareSumSlack)) {
    throw DataError(who + ": share sum out of range");
  }
  if (sample.reprs.empty()) throw DataError(who + ": no representations");
  for (const auto& [name, text] : sample.reprs) {
    if (!IsKnownRepresentation(name)) {
      throw DataError(who + ": unknown representation '" + name + "'");
    }
  }
  if (const std::string* raw = sample.repr("raw_hex")) {
    if (raw->size() % 2 != 0 || !IsLowerHex(*raw)) {
      throw DataError(who + ": raw_hex must be even-length lowercase hex");
    }
  }
}

std::vector<FunctionSample> ReadCorpus(std::istream& in) {
  std::vector<FunctionSample> samples;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    FunctionSample sample = ParseRecord(text, line);
    auto [it, inserted] = first_line.emplace(sample.function_id, line);
    if (!inserted) {
      std::ostringstream msg;
      msg << "duplicate function_id '" << sample.function_id << "' on lines "
          << it->second << " and " << line;
      throw DataError(msg.str());
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::vector<FunctionSample> LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return ReadCorpus(in);
}

std::string SerializeSample(const FunctionSample& sample) {
  nlohmann::ordered_json obj;
  obj["function_id"] = sample.function_id;
  obj["project"] = sample.project;
  obj["binary_id"] = sample.binary_id;
  obj["function_name"] = sample.function_name;
  obj["authors"] = nlohmann::ordered_json::array();
  for (const AuthorShare& a : sample.authors) {
    nlohmann::ordered_json entry;
    entry["name"] = a.name;
    entry["share"] = a.share;
    obj["authors"].push_back(std::move(entry));
  }
  obj["reprs"] = nlohmann::ordered_json::object();
  for (const auto& [name, text] : sample.reprs) obj["reprs"][name] = text;
  return obj.dump();
}

void WriteCorpus(std::ostream& out, std::span<const FunctionSample> samples) {
  for (const FunctionSample& s : samples) out << SerializeSample(s) << '\n';
}

void SaveCorpus(const std::filesystem::path& path,
                std::span<const FunctionSample> samples) {
  std::ostringstream out;
  WriteCorpus(out, samples);
  WriteFileAtomic(path, out.str());
}

std::optional<std::string> MajorityAuthor(const FunctionSample& sample) {
  for (const AuthorShare& a : sample.authors) {
    if (a.share >= kMajorityShare) return a.name;
  }
  return std::nullopt;
}

std::vector<LabeledSample> LabelSamples(
    std::span<const FunctionSample> samples) {
  std::vector<LabeledSample> out;
  for (const FunctionSample& s : samples) {
    if (auto owner = MajorityAuthor(s)) out.push_back({s, *owner});
  }
  return out;
}

AuthorSplit SplitByAuthor(std::span<const LabeledSample> samples,
                          double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train_fraction must lie strictly between 0 and 1");
  }
  std::set<std::string> owner_set;
  for (const LabeledSample& s : samples) owner_set.insert(s.owner);
  if (owner_set.size() < 2) {
    throw InvalidArgument("author split needs at least 2 distinct owners, got " +
                          std::to_string(owner_set.size()));
  }
  std::vector<std::string> owners(owner_set.begin(), owner_set.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(owners));

  const std::size_t n = owners.size();
  auto n_train = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(n) + 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  AuthorSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? split.train_authors : split.eval_authors).insert(owners[i]);
  }
  return split;
}

std::vector<LabeledSample> FilterByAuthors(
    std::span<const LabeledSample> samples,
    const std::set<std::string>& authors) {
  std::vector<LabeledSample> out;
  for (const LabeledSample& s : samples) {
    if (authors.contains(s.owner)) out.push_back(s);
  }
  return out;
}

std::vector<SamplePair> SamplePairs(std::span<const LabeledSample> samples,
                                    PairCounts counts, std::uint64_t seed) {
  // Group by binary in first-appearance order so the candidate list does not
  // depend on hash iteration order.
  std::vector<std::string> binaries;
  std::unordered_map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto [it, inserted] = members.try_emplace(samples[i].sample.binary_id);
    if (inserted) binaries.push_back(samples[i].sample.binary_id);
    it->second.push_back(i);
  }

  using IndexPair = std::pair<std::size_t, std::size_t>;
  std::vector<IndexPair> same;
  std::vector<IndexPair> different;
  for (const std::string& binary : binaries) {
    const std::vector<std::size_t>& idx = members[binary];
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const LabeledSample& x = samples[idx[a]];
        const LabeledSample& y = samples[idx[b]];
        if (x.sample.function_id == y.sample.function_id) continue;
        (x.owner == y.owner ? same : different).emplace_back(idx[a], idx[b]);
      }
    }
  }

  if (same.empty() && different.empty() &&
      (counts.positive > 0 || counts.negative > 0)) {
    throw DataError("no same-binary pairs in corpus");
  }
  if (counts.positive > 0 && same.empty()) {
    throw DataError("no same-binary candidates for class 'same'");
  }
  if (counts.negative > 0 && different.empty()) {
    throw DataError("no same-binary candidates for class 'different'");
  }

  Rng rng(seed);
  std::vector<SamplePair> out;
  auto take = [&](std::vector<IndexPair>& pool, std::size_t count,
                  PairLabel label) {
    rng.shuffle(std::span<IndexPair>(pool));
    const std::size_t n = std::min(count, pool.size());
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({samples[pool[i].first].sample.function_id,
                     samples[pool[i].second].sample.function_id, label});
    }
  };
  take(same, counts.positive, PairLabel::kSame);
  take(different, counts.negative, PairLabel::kDifferent);
  return out;
}

std::string TruncateTokens(std::string_view text, std::size_t limit) {
  if (limit == 0) throw InvalidArgument("token limit must be at least 1");
  std::string out;
  out.reserve(text.size());
  std::size_t tokens = 0;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (i < text.size() && tokens < limit) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (tokens > 0) out.push_back(' ');
    out.append(text.substr(i, j - i));
    ++tokens;
    i = j;
  }
  return out;
}

}  // namespace stylomatch
