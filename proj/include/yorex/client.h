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

// Line transports and the batched protocol client.

#ifndef YOREX_CLIENT_H_
#define YOREX_CLIENT_H_

#include <sys/types.h>

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yorex/detector.h"
#include "yorex/protocol.h"

namespace yorex {

inline constexpr char kDetectorCmdEnv[] = "YOREX_DETECTOR_CMD";

// A bidirectional stream of newline-terminated lines.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // Sends `line` followed by '\n'. Throws TransportError.
  virtual void WriteLine(std::string_view line) = 0;
  // Next line without its terminator, or nullopt when nothing complete
  // arrived within `timeout`. Throws TransportError on end of stream.
  virtual std::optional<std::string> ReadLine(std::chrono::milliseconds timeout) = 0;
};

// Channel over a pair of file descriptors (pipes or a socket).
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, bool owns_fds, bool is_socket = false);
  ~FdChannel() override;
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine(std::chrono::milliseconds timeout) override;

 protected:
  void CloseWrite();

 private:
  int read_fd_;
  int write_fd_;
  bool owns_fds_;
  bool is_socket_;
  std::string buffer_;
};

// Runs `command` through /bin/sh and talks to its stdin/stdout. The child
// gets EOF on stdin when the channel is destroyed and is killed if it has not
// exited shortly after.
std::unique_ptr<LineChannel> SpawnProcess(const std::string& command);

// Connects to a TCP listener.
std::unique_ptr<LineChannel> ConnectTcp(const std::string& host, uint16_t port);

struct ClientOptions {
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds handshake_timeout{120000};
  // Send images as raw files in payload_dir instead of inline base64.
  bool payload_by_path = false;
  std::string payload_dir;
};

// Detector reached over the wire protocol.
//
// Safe for concurrent callers: writes are serialized and responses are routed
// to their request ids, so responses may arrive in any order. A request that
// times out is sent again once under a new id; a second timeout is fatal.
class ProtocolClient : public Detector {
 public:
  // Reads the handshake; throws DetectorError if it does not arrive or is not
  // ready.
  explicit ProtocolClient(std::unique_ptr<LineChannel> channel,
                          ClientOptions options = {});

  // `target` is "tcp:HOST:PORT" or a shell command. An empty target falls
  // back to $YOREX_DETECTOR_CMD.
  static std::unique_ptr<ProtocolClient> Connect(const std::string& target,
                                                 ClientOptions options = {});

  std::vector<Detections> DetectBatch(std::span<const Raster> images) override;

  uint32_t max_batch() const { return max_batch_; }
  int64_t requests_sent() const;

 private:
  uint64_t Send(std::span<const Raster> images, std::vector<std::string>* files);
  std::vector<Detections> Await(uint64_t id, size_t expected);
  std::vector<Detections> RoundTrip(std::span<const Raster> images);

  std::unique_ptr<LineChannel> channel_;
  ClientOptions options_;
  uint32_t max_batch_ = 0;

  std::mutex write_mu_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  uint64_t next_id_ = 1;
  int64_t requests_sent_ = 0;
  bool reader_active_ = false;
  std::exception_ptr fatal_;
  std::set<uint64_t> outstanding_;
  std::set<uint64_t> abandoned_;
  std::map<uint64_t, ResponseMessage> ready_;
};

// Serves `detector` on `channel` until the peer closes it: sends the
// handshake, then answers each request line. Undecodable requests and
// detector exceptions are answered with an error message and the loop goes
// on.
void ServeDetector(Detector& detector, LineChannel& channel, uint32_t max_batch);

// Listens on 127.0.0.1:`port` (0 picks a free port) and serves one
// connection. `on_listen` receives the bound port before accepting.
void ServeDetectorTcp(Detector& detector, uint16_t port, uint32_t max_batch,
                      const std::function<void(uint16_t)>& on_listen = {});

}  // namespace yorex

#endif  // YOREX_CLIENT_H_
