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

#include "stylomatch/featurizer.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "stylomatch/error.h"

namespace stylomatch {
namespace {

constexpr std::string_view kReplacementChar = "\xEF\xBF\xBD";

// Length of the UTF-8 sequence starting at text[i], or 0 if invalid.
std::size_t Utf8Length(std::string_view text, std::size_t i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  std::size_t len;
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) {
    len = 2;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
  } else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) {
    len = 4;
  } else {
    return 0;
  }
  if (i + len > text.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

// Calls fn(gram) for every n-gram of the character sequence, n in
// [n_min, n_max].
template <typename Fn>
void ForEachGram(const std::vector<std::string>& chars, int n_min, int n_max,
                 Fn&& fn) {
  std::string gram;
  for (std::size_t start = 0; start < chars.size(); ++start) {
    gram.clear();
    for (int n = 1; n <= n_max && start + n <= chars.size(); ++n) {
      gram += chars[start + n - 1];
      if (n >= n_min) fn(gram);
    }
  }
}

}  // namespace

std::string_view ToString(FeaturizerKind kind) {
  return kind == FeaturizerKind::kCharTfidf ? "char_tfidf" : "char_ngram";
}

FeaturizerKind ParseFeaturizerKind(std::string_view name) {
  if (name == "char_tfidf" || name == "tfidf") return FeaturizerKind::kCharTfidf;
  if (name == "char_ngram" || name == "ngram") return FeaturizerKind::kCharNgram;
  throw InvalidArgument("unknown featurizer kind '" + std::string(name) + "'");
}

bool FeatureVector::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0.0; });
}

std::vector<std::string> SplitCharacters(std::string_view text) {
  std::vector<std::string> chars;
  chars.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t len = Utf8Length(text, i);
    if (len == 0) {
      chars.emplace_back(kReplacementChar);
      ++i;
    } else {
      chars.emplace_back(text.substr(i, len));
      i += len;
    }
  }
  return chars;
}

FittedFeaturizer FittedFeaturizer::FromParts(
    FeaturizerKind kind, int n_min, int n_max, std::size_t max_features,
    std::size_t fitted_on, std::vector<std::string> features,
    std::vector<double> idf) {
  if (n_min < 1 || n_max < n_min) {
    throw InvalidArgument("featurizer n-gram range must satisfy 1 <= n_min <= n_max");
  }
  if (features.size() > max_features) {
    throw InvalidArgument("featurizer holds more features than max_features");
  }
  if (kind == FeaturizerKind::kCharTfidf) {
    if (idf.size() != features.size()) {
      throw InvalidArgument("tf-idf featurizer needs one idf weight per feature");
    }
    for (double w : idf) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw InvalidArgument("idf weights must be positive and finite");
      }
    }
  } else if (!idf.empty()) {
    throw InvalidArgument("n-gram featurizer carries no idf weights");
  }
  FittedFeaturizer f;
  f.kind_ = kind;
  f.n_min_ = n_min;
  f.n_max_ = n_max;
  f.max_features_ = max_features;
  f.fitted_on_ = fitted_on;
  f.features_ = std::move(features);
  f.idf_ = std::move(idf);
  f.BuildIndex();
  return f;
}

void FittedFeaturizer::BuildIndex() {
  index_.clear();
  index_.reserve(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!index_.emplace(features_[i], i).second) {
      throw InvalidArgument("duplicate feature '" + features_[i] + "'");
    }
  }
}

long FittedFeaturizer::column(std::string_view feature) const {
  auto it = index_.find(feature);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

FeatureVector FittedFeaturizer::Featurize(std::string_view text) const {
  FeatureVector out;
  out.values.assign(features_.size(), 0.0);
  const std::vector<std::string> chars = SplitCharacters(text);
  ForEachGram(chars, n_min_, n_max_, [&](const std::string& gram) {
    auto it = index_.find(gram);
    if (it != index_.end()) out.values[it->second] += 1.0;
  });
  if (kind_ == FeaturizerKind::kCharTfidf) {
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= idf_[i];
  }
  double sq = 0.0;
  for (double v : out.values) sq += v * v;
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : out.values) v *= inv;
  }
  return out;
}

FittedFeaturizer FitFeaturizer(FeaturizerKind kind,
                               std::span<const std::string> documents,
                               std::size_t max_features) {
  if (documents.empty()) {
    throw InvalidArgument("cannot fit a featurizer on zero documents");
  }
  if (max_features == 0) throw InvalidArgument("max_features must be positive");
  const int n_min = 1;
  const int n_max = kind == FeaturizerKind::kCharTfidf ? 1 : 3;

  std::unordered_map<std::string, std::size_t> df;
  std::unordered_set<std::string> seen;
  for (const std::string& doc : documents) {
    seen.clear();
    ForEachGram(SplitCharacters(doc), n_min, n_max,
                [&](const std::string& gram) { seen.insert(gram); });
    for (const std::string& gram : seen) ++df[gram];
  }

  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  auto order = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  if (ranked.size() > max_features) {
    std::partial_sort(ranked.begin(), ranked.begin() + max_features,
                      ranked.end(), order);
    ranked.resize(max_features);
  } else {
    std::sort(ranked.begin(), ranked.end(), order);
  }

  std::vector<std::string> features;
  std::vector<double> idf;
  const double n_docs = static_cast<double>(documents.size());
  for (auto& [gram, count] : ranked) {
    if (kind == FeaturizerKind::kCharTfidf) {
      idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) +
                    1.0);
    }
    features.push_back(std::move(gram));
  }
  return FittedFeaturizer::FromParts(kind, n_min, n_max, max_features,
                                     documents.size(), std::move(features),
                                     std::move(idf));
}

}  // namespace stylomatch
