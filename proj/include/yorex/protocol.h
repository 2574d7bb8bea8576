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

// Detector wire protocol. Every message is one line of compact UTF-8 JSON:
//
//   handshake  {"ready":true,"max_batch":<u32>}
//   request    {"id":<u64>,"images":[{"w":<u32>,"h":<u32>,"rgb_b64":"..."},...]}
//   response   {"id":<u64>,"results":[[{"label":"..","conf":<f>,"box":[x0,y0,x1,y1]},...],...]}
//   error      {"id":<u64>,"error":"..."}
//
// rgb_b64 is standard padded base64 of the raw RGB8 rows. An image may carry
// "path" instead of "rgb_b64", naming a file on a shared filesystem that holds
// the same raw bytes.

#ifndef YOREX_PROTOCOL_H_
#define YOREX_PROTOCOL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yorex/detection.h"
#include "yorex/raster.h"

namespace yorex {

struct DetectRequest {
  uint64_t id = 0;
  std::vector<Raster> images;

  bool operator==(const DetectRequest&) const = default;
};

struct DetectResponse {
  uint64_t id = 0;
  std::vector<Detections> results;

  bool operator==(const DetectResponse&) const = default;
};

struct ErrorMessage {
  uint64_t id = 0;
  std::string error;

  bool operator==(const ErrorMessage&) const = default;
};

struct Handshake {
  bool ready = true;
  uint32_t max_batch = 0;

  bool operator==(const Handshake&) const = default;
};

using ResponseMessage = std::variant<DetectResponse, ErrorMessage>;

std::string Base64Encode(std::span<const uint8_t> bytes);
// Throws ProtocolError on invalid input.
std::vector<uint8_t> Base64Decode(std::string_view text);

// Encoders return the line without its terminating newline.
std::string EncodeHandshake(const Handshake& handshake);
std::string EncodeRequest(const DetectRequest& request);
// Path-mode request: writes each image's raw RGB bytes under `dir` and
// references the files. The written paths are appended to `written`.
std::string EncodeRequestByPath(const DetectRequest& request,
                                const std::string& dir,
                                std::vector<std::string>* written);
std::string EncodeResponse(const DetectResponse& response);
std::string EncodeError(const ErrorMessage& error);

// Decoders throw ProtocolError on anything that is not exactly the expected
// message.
Handshake DecodeHandshake(std::string_view line);
DetectRequest DecodeRequest(std::string_view line);
ResponseMessage DecodeResponse(std::string_view line);

// Best-effort id of a possibly malformed message; 0 when none can be read.
uint64_t PeekId(std::string_view line);

}  // namespace yorex

#endif  // YOREX_PROTOCOL_H_
