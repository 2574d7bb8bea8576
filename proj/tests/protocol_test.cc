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

#include <gtest/gtest.h>

#include <deque>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "yorex/client.h"
#include "yorex/detector.h"
#include "yorex/scene.h"
#include "yorex/synthetic_detector.h"

namespace yorex {
namespace {

const std::string kWire = std::string(YOREX_FIXTURE_DIR) + "/wire";

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in) << path;
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Feeds scripted lines and records replies; end of script is end of stream.
class ScriptChannel : public LineChannel {
 public:
  void WriteLine(std::string_view line) override { written.emplace_back(line); }
  std::optional<std::string> ReadLine(std::chrono::milliseconds) override {
    if (input.empty()) throw TransportError("end of stream");
    std::string line = input.front();
    input.pop_front();
    return line;
  }
  std::deque<std::string> input;
  std::vector<std::string> written;
};

std::string Reencode(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  if (j.contains("ready")) return EncodeHandshake(DecodeHandshake(line));
  if (j.contains("images")) return EncodeRequest(DecodeRequest(line));
  const ResponseMessage m = DecodeResponse(line);
  if (const auto* e = std::get_if<ErrorMessage>(&m)) return EncodeError(*e);
  return EncodeResponse(std::get<DetectResponse>(m));
}

TEST(Base64Test, KnownVectors) {
  const std::vector<uint8_t> bytes = {1, 2, 3};
  EXPECT_EQ(Base64Encode(bytes), "AQID");
  const std::vector<uint8_t> two = {255, 0};
  EXPECT_EQ(Base64Encode(two), "/wA=");
  EXPECT_EQ(Base64Decode("/wA="), two);
  EXPECT_EQ(Base64Encode({}), "");
  EXPECT_TRUE(Base64Decode("").empty());
}

TEST(Base64Test, RejectsGarbage) {
  EXPECT_THROW(Base64Decode("A"), ProtocolError);
  EXPECT_THROW(Base64Decode("AQ$D"), ProtocolError);
  EXPECT_THROW(Base64Decode("AQID\n"), ProtocolError);
  EXPECT_THROW(Base64Decode("_-__"), ProtocolError);  // url-safe alphabet
}

TEST(Base64Test, RoundTripProperty) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    std::vector<uint8_t> b(rng() % 70);
    for (auto& x : b) x = static_cast<uint8_t>(rng());
    EXPECT_EQ(Base64Decode(Base64Encode(b)), b);
  }
}

TEST(GoldenMessagesTest, ReencodeByteExactly) {
  const auto lines = ReadLines(kWire + "/messages.jsonl");
  ASSERT_GE(lines.size(), 9u);
  for (const auto& line : lines) EXPECT_EQ(Reencode(line), line);
}

TEST(GoldenMessagesTest, DecodedValues) {
  const auto lines = ReadLines(kWire + "/messages.jsonl");
  EXPECT_EQ(DecodeHandshake(lines[0]), (Handshake{true, 16}));
  const DetectRequest r = DecodeRequest(lines[3]);
  EXPECT_EQ(r.id, 18446744073709551615ull);
  ASSERT_EQ(r.images.size(), 2u);
  EXPECT_EQ(r.images[1].at(1, 0), (Rgb{255, 0, 128}));
  const auto err = std::get<ErrorMessage>(DecodeResponse(lines[7]));
  EXPECT_EQ(err, (ErrorMessage{10, "model crashed: out of memory"}));
  const auto resp = std::get<DetectResponse>(DecodeResponse(lines[5]));
  ASSERT_EQ(resp.results.size(), 3u);
  EXPECT_EQ(resp.results[1][1].label, "b \"quoted\" \xc3\xa9");
}

// The synthetic server must reproduce the frozen transcript: handshake,
// batch alignment and error framing.
TEST(GoldenTranscriptTest, SyntheticServerMatches) {
  std::ifstream in(kWire + "/serve_scene.json");
  const Scene scene = SceneFromJson(nlohmann::json::parse(in));
  SyntheticBlobDetector det(scene.Render(), scene.Classes());
  std::vector<nlohmann::json> records;
  for (const auto& line : ReadLines(kWire + "/serve_transcript.jsonl")) {
    records.push_back(nlohmann::json::parse(line));
  }
  ScriptChannel channel;
  for (const auto& r : records) {
    if (r.contains("send")) channel.input.push_back(r["send"]);
  }
  const uint32_t max_batch = DecodeHandshake(records[0]["expect"].get<std::string>()).max_batch;
  ServeDetector(det, channel, max_batch);

  size_t out = 0;
  for (const auto& r : records) {
    if (r.contains("send")) continue;
    ASSERT_LT(out, channel.written.size());
    const std::string& got = channel.written[out++];
    if (r.contains("expect")) {
      EXPECT_EQ(got, r["expect"].get<std::string>());
    } else {
      const auto m = DecodeResponse(got);
      ASSERT_TRUE(std::holds_alternative<ErrorMessage>(m)) << got;
      EXPECT_EQ(std::get<ErrorMessage>(m).id, r["expect_error"].get<uint64_t>());
      EXPECT_FALSE(std::get<ErrorMessage>(m).error.empty());
    }
  }
  EXPECT_EQ(out, channel.written.size());
}

TEST(TranscriptRequestsTest, AlignmentOfGoldenResponses) {
  for (const auto& line : ReadLines(kWire + "/serve_transcript.jsonl")) {
    const auto r = nlohmann::json::parse(line);
    if (!r.contains("send")) continue;
    DetectRequest req;
    try {
      req = DecodeRequest(r["send"].get<std::string>());
    } catch (const ProtocolError&) {
      continue;
    }
    EXPECT_FALSE(req.images.empty());
  }
}

std::string RandomLabel(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a", "Z", " ", "\"", "\\", "\n", "\t",
                                                  "\xc3\xa9", "\xe2\x82\xac", "/", "{"};
  std::string s;
  for (int i = static_cast<int>(rng() % 6); i > 0; --i) s += pieces[rng() % pieces.size()];
  return s;
}

TEST(ProtocolRoundTripTest, RandomMessages) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    DetectRequest req{rng(), {}};
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) {
      Raster img(1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 9));
      for (auto& b : img.mutable_data()) b = static_cast<uint8_t>(rng());
      req.images.push_back(img);
    }
    EXPECT_EQ(DecodeRequest(EncodeRequest(req)), req);

    DetectResponse resp{rng() >> 1, {}};
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) {
      Detections d;
      for (int j = static_cast<int>(rng() % 3); j > 0; --j) {
        const int x = static_cast<int>(rng() % 100), y = static_cast<int>(rng() % 100);
        d.push_back({RandomLabel(rng), std::uniform_real_distribution<double>(0, 1)(rng),
                     {x, y, x + 1 + static_cast<int>(rng() % 50), y + 1 + static_cast<int>(rng() % 50)}});
      }
      resp.results.push_back(d);
    }
    const auto back = DecodeResponse(EncodeResponse(resp));
    EXPECT_EQ(std::get<DetectResponse>(back), resp);

    const ErrorMessage err{rng(), RandomLabel(rng) + "x"};
    EXPECT_EQ(std::get<ErrorMessage>(DecodeResponse(EncodeError(err))), err);
    const Handshake hs{(rng() & 1) != 0, static_cast<uint32_t>(rng())};
    EXPECT_EQ(DecodeHandshake(EncodeHandshake(hs)), hs);
  }
}

TEST(ProtocolDecodeTest, FractionalBoxesRoundOutward) {
  const auto m = DecodeResponse(R"({"id":1,"results":[[{"label":"a","conf":0.5,"box":[1.5,2,3.2,4.0]}]]})");
  EXPECT_EQ(std::get<DetectResponse>(m).results[0][0].box, (Box{1, 2, 4, 4}));
}

TEST(ProtocolDecodeTest, StrictAboutShape) {
  const char* bad_responses[] = {
      "[]",
      "{}",
      R"({"id":-1,"results":[]})",
      R"({"id":1})",
      R"({"id":1,"results":{}})",
      R"({"id":1,"results":[{}]})",
      R"({"id":1,"results":[[{"label":3,"conf":1,"box":[0,0,1,1]}]]})",
      R"({"id":1,"results":[[{"label":"a","conf":"x","box":[0,0,1,1]}]]})",
      R"({"id":1,"results":[[{"label":"a","conf":1,"box":[0,0,1]}]]})",
      R"({"id":1,"results":[[{"label":"a","box":[0,0,1,1]}]]})",
      R"({"id":1,"error":5})",
      "not json",
  };
  for (const char* line : bad_responses) {
    EXPECT_THROW(DecodeResponse(line), ProtocolError) << line;
  }
  const char* bad_requests[] = {
      R"({"id":1,"images":[]})",
      R"({"id":1,"images":[{"w":1,"h":1}]})",
      R"({"id":1,"images":[{"w":0,"h":1,"rgb_b64":""}]})",
      R"({"id":1,"images":[{"w":1,"h":1,"rgb_b64":"AQIDBA=="}]})",
      R"({"id":1,"images":[{"w":1,"h":1,"rgb_b64":"A!ID"}]})",
      R"({"images":[{"w":1,"h":1,"rgb_b64":"AQID"}]})",
      R"({"id":1,"images":[{"w":1,"h":1,"path":"/nonexistent/yorex.rgb"}]})",
  };
  for (const char* line : bad_requests) {
    EXPECT_THROW(DecodeRequest(line), ProtocolError) << line;
  }
  EXPECT_THROW(DecodeHandshake(R"({"max_batch":3})"), ProtocolError);
  EXPECT_THROW(DecodeHandshake(R"({"ready":"yes"})"), ProtocolError);
}

TEST(ProtocolPathModeTest, FilesCarryTheSameBytes) {
  const auto dir = std::filesystem::temp_directory_path() / "yorex_path_mode";
  std::filesystem::create_directories(dir);
  Raster a(3, 2, Rgb{1, 2, 3}), b(1, 4, Rgb{200, 100, 0});
  a.set(2, 1, {9, 9, 9});
  const DetectRequest req{77, {a, b}};
  std::vector<std::string> written;
  const std::string line = EncodeRequestByPath(req, dir.string(), &written);
  ASSERT_EQ(written.size(), 2u);
  EXPECT_EQ(std::filesystem::file_size(written[0]), 18u);
  EXPECT_EQ(nlohmann::json::parse(line)["images"][0]["path"], written[0]);
  EXPECT_EQ(DecodeRequest(line), req);
}

TEST(PeekIdTest, BestEffort) {
  EXPECT_EQ(PeekId(R"({"id":12,"images":"junk"})"), 12u);
  EXPECT_EQ(PeekId("nonsense"), 0u);
  EXPECT_EQ(PeekId(R"({"id":"7"})"), 0u);
}

}  // namespace
}  // namespace yorex
