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

#include "yorex/client.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <functional>
#include <thread>

extern char** environ;

namespace yorex {
namespace {

std::string Errno(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

class ProcessChannel : public FdChannel {
 public:
  ProcessChannel(int read_fd, int write_fd, pid_t pid)
      : FdChannel(read_fd, write_fd, /*owns_fds=*/true), pid_(pid) {}

  ~ProcessChannel() override {
    CloseWrite();
    for (int i = 0; i < 200; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGTERM);
    ::waitpid(pid_, nullptr, 0);
  }

 private:
  pid_t pid_;
};

}  // namespace

FdChannel::FdChannel(int read_fd, int write_fd, bool owns_fds, bool is_socket)
    : read_fd_(read_fd),
      write_fd_(write_fd),
      owns_fds_(owns_fds),
      is_socket_(is_socket) {
  IgnoreSigpipe();
}

FdChannel::~FdChannel() {
  if (!owns_fds_) return;
  if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
  if (read_fd_ >= 0) ::close(read_fd_);
}

void FdChannel::CloseWrite() {
  if (write_fd_ < 0 || !owns_fds_) return;
  if (is_socket_) {
    ::shutdown(write_fd_, SHUT_WR);
  } else {
    ::close(write_fd_);
    write_fd_ = -1;
  }
}

void FdChannel::WriteLine(std::string_view line) {
  if (write_fd_ < 0) throw TransportError("channel is closed for writing");
  std::string out(line);
  out.push_back('\n');
  size_t done = 0;
  while (done < out.size()) {
    const ssize_t n =
        is_socket_ ? ::send(write_fd_, out.data() + done, out.size() - done, MSG_NOSIGNAL)
                   : ::write(write_fd_, out.data() + done, out.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("write to detector failed"));
    }
    done += static_cast<size_t>(n);
  }
}

std::optional<std::string> FdChannel::ReadLine(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    const auto pos = buffer_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) return std::nullopt;
    pollfd p{read_fd_, POLLIN, 0};
    const int wait_ms = static_cast<int>(std::min<int64_t>(remaining.count(), 3600000));
    const int r = ::poll(&p, 1, wait_ms);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("poll on detector stream failed"));
    }
    if (r == 0) continue;
    char buf[65536];
    const ssize_t n = ::read(read_fd_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError(Errno("read from detector failed"));
    }
    if (n == 0) throw TransportError("detector closed the stream");
    buffer_.append(buf, static_cast<size_t>(n));
  }
}

std::unique_ptr<LineChannel> SpawnProcess(const std::string& command) {
  IgnoreSigpipe();
  int to_child[2], from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw TransportError(Errno("pipe"));
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw TransportError(Errno("pipe"));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
  std::string sh = "/bin/sh", flag = "-c", cmd = command;
  char* argv[] = {sh.data(), flag.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  const int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw TransportError("cannot spawn detector '" + command +
                         "': " + std::strerror(rc));
  }
  return std::make_unique<ProcessChannel>(from_child[0], to_child[1], pid);
}

std::unique_ptr<LineChannel> ConnectTcp(const std::string& host, uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
  if (rc != 0) {
    throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw TransportError(Errno("cannot connect to " + host + ":" + std::to_string(port)));
  }
  return std::make_unique<FdChannel>(fd, fd, /*owns_fds=*/true, /*is_socket=*/true);
}

ProtocolClient::ProtocolClient(std::unique_ptr<LineChannel> channel,
                               ClientOptions options)
    : channel_(std::move(channel)), options_(std::move(options)) {
  const auto line = channel_->ReadLine(options_.handshake_timeout);
  if (!line) throw TimeoutError("detector sent no handshake");
  const Handshake h = DecodeHandshake(*line);
  if (!h.ready) throw ProtocolError("detector reported it is not ready");
  max_batch_ = h.max_batch;
  if (options_.payload_by_path && options_.payload_dir.empty()) {
    options_.payload_dir = std::filesystem::temp_directory_path().string();
  }
}

std::unique_ptr<ProtocolClient> ProtocolClient::Connect(const std::string& target,
                                                        ClientOptions options) {
  std::string where = target;
  if (where.empty()) {
    if (const char* env = std::getenv(kDetectorCmdEnv)) where = env;
  }
  if (where.empty()) {
    throw std::invalid_argument(std::string("no detector given and $") +
                                kDetectorCmdEnv + " is unset");
  }
  if (where.rfind("tcp:", 0) == 0) {
    const std::string rest = where.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("expected tcp:HOST:PORT, got '" + where + "'");
    }
    int port = 0;
    try {
      port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      port = -1;
    }
    if (port <= 0 || port > 65535) {
      throw std::invalid_argument("invalid port in '" + where + "'");
    }
    return std::make_unique<ProtocolClient>(
        ConnectTcp(rest.substr(0, colon), static_cast<uint16_t>(port)),
        std::move(options));
  }
  return std::make_unique<ProtocolClient>(SpawnProcess(where), std::move(options));
}

int64_t ProtocolClient::requests_sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_sent_;
}

uint64_t ProtocolClient::Send(std::span<const Raster> images,
                              std::vector<std::string>* files) {
  DetectRequest request;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (fatal_) std::rethrow_exception(fatal_);
    request.id = next_id_++;
    outstanding_.insert(request.id);
    ++requests_sent_;
  }
  request.images.assign(images.begin(), images.end());
  const std::string line =
      options_.payload_by_path
          ? EncodeRequestByPath(request, options_.payload_dir, files)
          : EncodeRequest(request);
  std::lock_guard<std::mutex> lock(write_mu_);
  channel_->WriteLine(line);
  return request.id;
}

std::vector<Detections> ProtocolClient::Await(uint64_t id, size_t expected) {
  const auto deadline = std::chrono::steady_clock::now() + options_.timeout;
  std::unique_lock<std::mutex> lock(mu_);
  while (true) {
    if (fatal_) std::rethrow_exception(fatal_);
    if (auto it = ready_.find(id); it != ready_.end()) {
      ResponseMessage message = std::move(it->second);
      ready_.erase(it);
      outstanding_.erase(id);
      if (const auto* err = std::get_if<ErrorMessage>(&message)) {
        throw RemoteError("detector error for request " + std::to_string(id) +
                          ": " + err->error);
      }
      auto& response = std::get<DetectResponse>(message);
      if (response.results.size() != expected) {
        throw ProtocolError("response " + std::to_string(id) + " carries " +
                            std::to_string(response.results.size()) +
                            " result lists for " + std::to_string(expected) +
                            " images");
      }
      for (Detections& list : response.results) {
        std::erase_if(list, [](const Detection& d) { return d.box.empty(); });
      }
      return std::move(response.results);
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      outstanding_.erase(id);
      abandoned_.insert(id);
      throw TimeoutError("no response to request " + std::to_string(id));
    }
    if (reader_active_) {
      cv_.wait_until(lock, deadline);
      continue;
    }

    reader_active_ = true;
    lock.unlock();
    std::optional<std::string> line;
    std::exception_ptr error;
    try {
      line = channel_->ReadLine(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now));
    } catch (...) {
      error = std::current_exception();
    }
    lock.lock();
    reader_active_ = false;
    if (!error && line) {
      try {
        ResponseMessage message = DecodeResponse(*line);
        const uint64_t rid = std::visit([](const auto& m) { return m.id; }, message);
        if (abandoned_.erase(rid) > 0) {
          // Late answer to a request that was already retried.
        } else if (outstanding_.count(rid) == 0) {
          std::string detail;
          if (const auto* err = std::get_if<ErrorMessage>(&message)) {
            detail = ": " + err->error;
          }
          throw ProtocolError("response for unknown request id " +
                              std::to_string(rid) + detail);
        } else {
          ready_.insert_or_assign(rid, std::move(message));
        }
      } catch (...) {
        error = std::current_exception();
      }
    }
    if (error) fatal_ = error;
    cv_.notify_all();
  }
}

std::vector<Detections> ProtocolClient::RoundTrip(std::span<const Raster> images) {
  std::vector<std::string> files;
  auto cleanup = [&files] {
    for (const auto& f : files) std::filesystem::remove(f);
    files.clear();
  };
  try {
    const uint64_t id = Send(images, &files);
    try {
      auto out = Await(id, images.size());
      cleanup();
      return out;
    } catch (const TimeoutError&) {
      cleanup();
      const uint64_t retry = Send(images, &files);
      try {
        auto out = Await(retry, images.size());
        cleanup();
        return out;
      } catch (const TimeoutError&) {
        // Out of retries: every later call fails the same way.
        std::lock_guard<std::mutex> lock(mu_);
        if (!fatal_) fatal_ = std::current_exception();
        throw;
      }
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

std::vector<Detections> ProtocolClient::DetectBatch(std::span<const Raster> images) {
  std::vector<Detections> out;
  out.reserve(images.size());
  const size_t chunk = max_batch_ == 0 ? std::max<size_t>(images.size(), 1) : max_batch_;
  for (size_t start = 0; start < images.size(); start += chunk) {
    auto part = RoundTrip(images.subspan(start, std::min(chunk, images.size() - start)));
    for (auto& r : part) out.push_back(std::move(r));
  }
  return out;
}

void ServeDetector(Detector& detector, LineChannel& channel, uint32_t max_batch) {
  channel.WriteLine(EncodeHandshake({true, max_batch}));
  while (true) {
    std::optional<std::string> line;
    try {
      line = channel.ReadLine(std::chrono::hours(24));
    } catch (const TransportError&) {
      return;
    }
    if (!line || line->empty()) continue;
    std::string reply;
    try {
      const DetectRequest request = DecodeRequest(*line);
      if (max_batch != 0 && request.images.size() > max_batch) {
        throw ProtocolError("batch of " + std::to_string(request.images.size()) +
                            " exceeds max_batch " + std::to_string(max_batch));
      }
      reply = EncodeResponse({request.id, detector.DetectBatch(request.images)});
    } catch (const std::exception& e) {
      reply = EncodeError({PeekId(*line), e.what()});
    }
    try {
      channel.WriteLine(reply);
    } catch (const TransportError&) {
      return;
    }
  }
}

void ServeDetectorTcp(Detector& detector, uint16_t port, uint32_t max_batch,
                      const std::function<void(uint16_t)>& on_listen) {
  const int listener = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listener < 0) throw TransportError(Errno("socket"));
  const int one = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listener, 1) != 0) {
    const std::string msg = Errno("cannot listen on port " + std::to_string(port));
    ::close(listener);
    throw TransportError(msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  if (on_listen) on_listen(ntohs(addr.sin_port));
  const int fd = ::accept4(listener, nullptr, nullptr, SOCK_CLOEXEC);
  ::close(listener);
  if (fd < 0) throw TransportError(Errno("accept"));
  FdChannel channel(fd, fd, /*owns_fds=*/true, /*is_socket=*/true);
  ServeDetector(detector, channel, max_batch);
}

}  // namespace yorex
