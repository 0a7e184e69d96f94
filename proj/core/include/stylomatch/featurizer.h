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

#ifndef STYLOMATCH_FEATURIZER_H_
#define STYLOMATCH_FEATURIZER_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylomatch {

enum class FeaturizerKind {
  kCharTfidf,  // character unigrams weighted by smoothed idf
  kCharNgram,  // character 1..3-grams, raw counts
};

std::string_view ToString(FeaturizerKind kind);
// Accepts "char_tfidf"/"tfidf" and "char_ngram"/"ngram".
FeaturizerKind ParseFeaturizerKind(std::string_view name);

inline constexpr std::size_t kDefaultMaxFeatures = 1000;

// Dense, non-negative, L2-normalized (or all-zero) feature vector.
struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::span<const double> span() const { return values; }
  bool is_zero() const;
};

// Splits UTF-8 text into characters (code points re-encoded as UTF-8).
// Invalid bytes become U+FFFD.
std::vector<std::string> SplitCharacters(std::string_view text);

// A frozen character-level vocabulary. Columns are assigned in selection
// order: descending document frequency, then lexicographic.
class FittedFeaturizer {
 public:
  FittedFeaturizer() = default;

  // Reassembles a featurizer from its serialized parts (see model_io).
  static FittedFeaturizer FromParts(FeaturizerKind kind, int n_min, int n_max,
                                    std::size_t max_features,
                                    std::size_t fitted_on,
                                    std::vector<std::string> features,
                                    std::vector<double> idf);

  FeaturizerKind kind() const { return kind_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  std::size_t max_features() const { return max_features_; }
  std::size_t fitted_on() const { return fitted_on_; }
  std::size_t dimension() const { return features_.size(); }
  const std::vector<std::string>& features() const { return features_; }
  // Empty for kCharNgram.
  const std::vector<double>& idf() const { return idf_; }

  // Column of a feature, or -1 when out of vocabulary.
  long column(std::string_view feature) const;

  FeatureVector Featurize(std::string_view text) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  void BuildIndex();

  FeaturizerKind kind_ = FeaturizerKind::kCharNgram;
  int n_min_ = 1;
  int n_max_ = 3;
  std::size_t max_features_ = kDefaultMaxFeatures;
  std::size_t fitted_on_ = 0;
  std::vector<std::string> features_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>
      index_;
};

// Selects the max_features most document-frequent n-grams over `documents`
// (n = 1 for kCharTfidf, n in [1, 3] for kCharNgram) with a lexicographic
// tie-break. For kCharTfidf, idf = ln((1 + N) / (1 + df)) + 1.
FittedFeaturizer FitFeaturizer(FeaturizerKind kind,
                               std::span<const std::string> documents,
                               std::size_t max_features = kDefaultMaxFeatures);

}  // namespace stylomatch

#endif  // STYLOMATCH_FEATURIZER_H_
