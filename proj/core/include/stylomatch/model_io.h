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

#ifndef STYLOMATCH_MODEL_IO_H_
#define STYLOMATCH_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylomatch/encoder.h"
#include "stylomatch/featurizer.h"

namespace stylomatch {

inline constexpr int kModelFormatVersion = 1;

// Model file layout:
//
//   {"format_version": 1,
//    "featurizer": {"kind", "n_range", "max_features", "fitted_on",
//                   "features", "idf"},
//    "encoder": {"config": {...},
//                "layers": [{"w", "rows", "cols", "b"}, ...]},
//    "checksum": hex SHA-256 of the compact payload}
//
// "w" and "b" hold little-endian IEEE-754 doubles (row-major) in base64, so
// parameters survive a save/load cycle bit for bit. The payload is the
// compact JSON of {"encoder", "featurizer"} with keys sorted.
struct ModelBundle {
  EncoderModel encoder;
  FittedFeaturizer featurizer;
};

std::string SerializeModel(const EncoderModel& encoder,
                           const FittedFeaturizer& featurizer);

// Throws UnsupportedVersionError, ChecksumMismatchError or
// CorruptPayloadError.
ModelBundle DeserializeModel(std::string_view text);

void SaveModel(const EncoderModel& encoder, const FittedFeaturizer& featurizer,
               const std::filesystem::path& path);
ModelBundle LoadModel(const std::filesystem::path& path);

// Exposed for tests.
std::string Base64Encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> Base64Decode(std::string_view text);
std::string Sha256Hex(std::string_view data);

}  // namespace stylomatch

#endif  // STYLOMATCH_MODEL_IO_H_
