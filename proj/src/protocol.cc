/*
 * Copyright 2026 The yorex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "yorex/protocol.h"

#include <sodium.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "yorex/detector.h"

namespace yorex {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kVariant = sodium_base64_VARIANT_ORIGINAL;

Json Parse(std::string_view line) {
  try {
    Json j = Json::parse(line);
    if (!j.is_object()) throw ProtocolError("message is not a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ProtocolError(std::string("unparseable message: ") + e.what());
  }
}

const Json& Field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ProtocolError(std::string("missing field '") + key + "'");
  return *it;
}

uint64_t ToU64(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<uint64_t>();
  if (j.is_number_integer() && j.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(j.get<int64_t>());
  }
  throw ProtocolError(std::string(what) + " must be a non-negative integer");
}

int ToDim(const Json& j, const char* what) {
  const uint64_t v = ToU64(j, what);
  if (v < 1 || v > (1u << 16)) {
    throw ProtocolError(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

Json DetectionJson(const Detection& d) {
  Json j;
  j["label"] = d.label;
  j["conf"] = d.confidence;
  j["box"] = {d.box.x0, d.box.y0, d.box.x1, d.box.y1};
  return j;
}

Detection DetectionFromJson(const Json& j) {
  if (!j.is_object()) throw ProtocolError("detection is not an object");
  const Json& label = Field(j, "label");
  const Json& conf = Field(j, "conf");
  const Json& box = Field(j, "box");
  if (!label.is_string()) throw ProtocolError("label must be a string");
  if (!conf.is_number()) throw ProtocolError("conf must be a number");
  if (!box.is_array() || box.size() != 4) {
    throw ProtocolError("box must be [x0,y0,x1,y1]");
  }
  for (const auto& v : box) {
    if (!v.is_number()) throw ProtocolError("box coordinates must be numbers");
  }
  Detection d;
  d.label = label.get<std::string>();
  d.confidence = conf.get<double>();
  if (box[0].is_number_float() || box[1].is_number_float() ||
      box[2].is_number_float() || box[3].is_number_float()) {
    d.box = EnclosingBox(box[0].get<double>(), box[1].get<double>(),
                         box[2].get<double>(), box[3].get<double>());
  } else {
    d.box = {box[0].get<int>(), box[1].get<int>(), box[2].get<int>(),
             box[3].get<int>()};
  }
  return d;
}

std::vector<uint8_t> ReadRaw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProtocolError("cannot read image payload " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::string Base64Encode(std::span<const uint8_t> bytes) {
  std::string out(sodium_base64_ENCODED_LEN(bytes.size(), kVariant), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), kVariant);
  out.resize(out.size() - 1);  // drop the terminating NUL
  return out;
}

std::vector<uint8_t> Base64Decode(std::string_view text) {
  std::vector<uint8_t> out(text.size() / 4 * 3 + 3);
  size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr,
                        &len, &end, kVariant) != 0 ||
      end != text.data() + text.size()) {
    throw ProtocolError("invalid base64 payload");
  }
  out.resize(len);
  return out;
}

std::string EncodeHandshake(const Handshake& handshake) {
  Json j;
  j["ready"] = handshake.ready;
  j["max_batch"] = handshake.max_batch;
  return j.dump();
}

std::string EncodeRequest(const DetectRequest& request) {
  Json images = Json::array();
  for (const Raster& r : request.images) {
    Json img;
    img["w"] = r.width();
    img["h"] = r.height();
    img["rgb_b64"] = Base64Encode(r.data());
    images.push_back(std::move(img));
  }
  Json j;
  j["id"] = request.id;
  j["images"] = std::move(images);
  return j.dump();
}

std::string EncodeRequestByPath(const DetectRequest& request,
                                const std::string& dir,
                                std::vector<std::string>* written) {
  Json images = Json::array();
  for (size_t k = 0; k < request.images.size(); ++k) {
    const Raster& r = request.images[k];
    const std::string path =
        (std::filesystem::path(dir) /
         ("req" + std::to_string(request.id) + "_" + std::to_string(k) + ".rgb"))
            .string();
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(r.data().data()),
              static_cast<std::streamsize>(r.data().size()));
    if (!out) throw TransportError("cannot write image payload " + path);
    if (written) written->push_back(path);
    Json img;
    img["w"] = r.width();
    img["h"] = r.height();
    img["path"] = path;
    images.push_back(std::move(img));
  }
  Json j;
  j["id"] = request.id;
  j["images"] = std::move(images);
  return j.dump();
}

std::string EncodeResponse(const DetectResponse& response) {
  Json results = Json::array();
  for (const Detections& list : response.results) {
    Json items = Json::array();
    for (const Detection& d : list) items.push_back(DetectionJson(d));
    results.push_back(std::move(items));
  }
  Json j;
  j["id"] = response.id;
  j["results"] = std::move(results);
  return j.dump();
}

std::string EncodeError(const ErrorMessage& error) {
  Json j;
  j["id"] = error.id;
  j["error"] = error.error;
  return j.dump();
}

Handshake DecodeHandshake(std::string_view line) {
  const Json j = Parse(line);
  const Json& ready = Field(j, "ready");
  if (!ready.is_boolean()) throw ProtocolError("ready must be a boolean");
  Handshake h;
  h.ready = ready.get<bool>();
  if (j.contains("max_batch")) {
    const uint64_t mb = ToU64(j["max_batch"], "max_batch");
    if (mb > UINT32_MAX) throw ProtocolError("max_batch out of range");
    h.max_batch = static_cast<uint32_t>(mb);
  }
  return h;
}

DetectRequest DecodeRequest(std::string_view line) {
  const Json j = Parse(line);
  DetectRequest request;
  request.id = ToU64(Field(j, "id"), "id");
  const Json& images = Field(j, "images");
  if (!images.is_array() || images.empty()) {
    throw ProtocolError("images must be a non-empty array");
  }
  for (const Json& img : images) {
    if (!img.is_object()) throw ProtocolError("image is not an object");
    const int w = ToDim(Field(img, "w"), "w");
    const int h = ToDim(Field(img, "h"), "h");
    std::vector<uint8_t> bytes;
    if (img.contains("rgb_b64")) {
      if (!img["rgb_b64"].is_string()) throw ProtocolError("rgb_b64 must be a string");
      bytes = Base64Decode(img["rgb_b64"].get_ref<const std::string&>());
    } else if (img.contains("path")) {
      if (!img["path"].is_string()) throw ProtocolError("path must be a string");
      bytes = ReadRaw(img["path"].get<std::string>());
    } else {
      throw ProtocolError("image carries neither rgb_b64 nor path");
    }
    if (bytes.size() != static_cast<size_t>(w) * h * 3) {
      throw ProtocolError("image payload has " + std::to_string(bytes.size()) +
                          " bytes for " + std::to_string(w) + "x" +
                          std::to_string(h));
    }
    request.images.push_back(Raster::FromBytes(w, h, std::move(bytes)));
  }
  return request;
}

ResponseMessage DecodeResponse(std::string_view line) {
  const Json j = Parse(line);
  const uint64_t id = ToU64(Field(j, "id"), "id");
  if (j.contains("error")) {
    if (!j["error"].is_string()) throw ProtocolError("error must be a string");
    return ErrorMessage{id, j["error"].get<std::string>()};
  }
  const Json& results = Field(j, "results");
  if (!results.is_array()) throw ProtocolError("results must be an array");
  DetectResponse response;
  response.id = id;
  for (const Json& list : results) {
    if (!list.is_array()) throw ProtocolError("each result must be an array");
    Detections detections;
    for (const Json& d : list) detections.push_back(DetectionFromJson(d));
    response.results.push_back(std::move(detections));
  }
  return response;
}

uint64_t PeekId(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    if (j.is_object() && j.contains("id")) return ToU64(j["id"], "id");
  } catch (const std::exception&) {
  }
  return 0;
}

}  // namespace yorex
