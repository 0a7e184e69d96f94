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

#include "stylomatch/model_io.h"

#include <bit>
#include <cstring>
#include <utility>

#include <openssl/evp.h>

#include "json.hpp"
#include "stylomatch/atomic_file.h"
#include "stylomatch/error.h"

namespace stylomatch {
namespace {

using nlohmann::json;

std::string EncodeDoubles(std::span<const double> values) {
  std::vector<std::uint8_t> bytes(values.size() * sizeof(double));
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (std::size_t b = 0; b < 8; ++b) {
      bytes[i * 8 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
    }
  }
  return Base64Encode(bytes);
}

std::vector<double> DecodeDoubles(std::string_view text, std::size_t count,
                                  std::string_view what) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = Base64Decode(text);
  } catch (const Error&) {
    throw CorruptPayloadError("corrupt payload: bad base64 in " +
                              std::string(what));
  }
  if (bytes.size() != count * sizeof(double)) {
    throw CorruptPayloadError("corrupt payload: " + std::string(what) +
                              " holds " + std::to_string(bytes.size()) +
                              " bytes, expected " +
                              std::to_string(count * sizeof(double)));
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
    }
    values[i] = std::bit_cast<double>(bits);
  }
  return values;
}

json FeaturizerToJson(const FittedFeaturizer& f) {
  json j;
  j["kind"] = ToString(f.kind());
  j["n_range"] = {f.n_min(), f.n_max()};
  j["max_features"] = f.max_features();
  j["fitted_on"] = f.fitted_on();
  j["features"] = f.features();
  j["idf"] = f.idf();
  return j;
}

FittedFeaturizer FeaturizerFromJson(const json& j) {
  const auto range = j.at("n_range").get<std::vector<int>>();
  if (range.size() != 2) throw CorruptPayloadError("corrupt payload: n_range");
  return FittedFeaturizer::FromParts(
      ParseFeaturizerKind(j.at("kind").get<std::string>()), range[0], range[1],
      j.at("max_features").get<std::size_t>(),
      j.at("fitted_on").get<std::size_t>(),
      j.at("features").get<std::vector<std::string>>(),
      j.at("idf").get<std::vector<double>>());
}

json EncoderToJson(const EncoderModel& m) {
  const EncoderConfig& c = m.config();
  json j;
  j["config"] = {{"input_dim", c.input_dim},
                 {"hidden_dim", c.hidden_dim},
                 {"output_dim", c.output_dim},
                 {"num_hidden_layers", c.num_hidden_layers},
                 {"activation", "relu"},
                 {"init_seed", c.init_seed}};
  j["layers"] = json::array();
  for (const Layer& l : m.layers()) {
    j["layers"].push_back({{"rows", l.weights.rows},
                           {"cols", l.weights.cols},
                           {"w", EncodeDoubles(l.weights.data)},
                           {"b", EncodeDoubles(l.bias)}});
  }
  return j;
}

EncoderModel EncoderFromJson(const json& j) {
  const json& jc = j.at("config");
  EncoderConfig c;
  c.input_dim = jc.at("input_dim").get<std::size_t>();
  c.hidden_dim = jc.at("hidden_dim").get<std::size_t>();
  c.output_dim = jc.at("output_dim").get<std::size_t>();
  c.num_hidden_layers = jc.at("num_hidden_layers").get<std::size_t>();
  c.init_seed = jc.at("init_seed").get<std::uint64_t>();
  if (jc.at("activation").get<std::string>() != "relu") {
    throw CorruptPayloadError("corrupt payload: unknown activation");
  }
  std::vector<Layer> layers;
  std::size_t k = 0;
  for (const json& jl : j.at("layers")) {
    Layer l;
    l.weights.rows = jl.at("rows").get<std::size_t>();
    l.weights.cols = jl.at("cols").get<std::size_t>();
    const std::string where = "layer " + std::to_string(k);
    l.weights.data = DecodeDoubles(jl.at("w").get<std::string>(),
                                   l.weights.rows * l.weights.cols,
                                   where + " weights");
    l.bias = DecodeDoubles(jl.at("b").get<std::string>(), l.weights.rows,
                           where + " bias");
    layers.push_back(std::move(l));
    ++k;
  }
  return EncoderModel(c, std::move(layers));
}

}  // namespace

std::string Base64Encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) throw DataError("base64 length not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw DataError("invalid base64");
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string SerializeModel(const EncoderModel& encoder,
                           const FittedFeaturizer& featurizer) {
  if (featurizer.dimension() != encoder.config().input_dim) {
    throw InvalidArgument("featurizer dimension does not match encoder input");
  }
  json payload;
  payload["encoder"] = EncoderToJson(encoder);
  payload["featurizer"] = FeaturizerToJson(featurizer);
  const std::string checksum = Sha256Hex(payload.dump());

  nlohmann::ordered_json file;
  file["format_version"] = kModelFormatVersion;
  file["featurizer"] = payload["featurizer"];
  file["encoder"] = payload["encoder"];
  file["checksum"] = checksum;
  return file.dump(1) + "\n";
}

ModelBundle DeserializeModel(std::string_view text) {
  json file;
  try {
    file = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CorruptPayloadError(std::string("corrupt payload: ") + e.what());
  }
  if (!file.is_object()) throw CorruptPayloadError("corrupt payload: not an object");
  auto version = file.find("format_version");
  if (version == file.end() || !version->is_number_integer()) {
    throw UnsupportedVersionError("unsupported version: missing format_version");
  }
  if (version->get<long long>() != kModelFormatVersion) {
    throw UnsupportedVersionError("unsupported version " +
                                  std::to_string(version->get<long long>()) +
                                  " (this build reads version " +
                                  std::to_string(kModelFormatVersion) + ")");
  }
  try {
    json payload;
    payload["encoder"] = file.at("encoder");
    payload["featurizer"] = file.at("featurizer");
    const std::string expected = file.at("checksum").get<std::string>();
    if (Sha256Hex(payload.dump()) != expected) {
      throw ChecksumMismatchError("checksum mismatch: model file was modified");
    }
    ModelBundle bundle{EncoderFromJson(payload["encoder"]),
                       FeaturizerFromJson(payload["featurizer"])};
    if (bundle.featurizer.dimension() != bundle.encoder.config().input_dim) {
      throw CorruptPayloadError(
          "corrupt payload: featurizer dimension does not match encoder input");
    }
    return bundle;
  } catch (const json::exception& e) {
    throw CorruptPayloadError(std::string("corrupt payload: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw CorruptPayloadError(std::string("corrupt payload: ") + e.what());
  }
}

void SaveModel(const EncoderModel& encoder, const FittedFeaturizer& featurizer,
               const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeModel(encoder, featurizer));
}

ModelBundle LoadModel(const std::filesystem::path& path) {
  return DeserializeModel(ReadFile(path));
}

}  // namespace stylomatch
