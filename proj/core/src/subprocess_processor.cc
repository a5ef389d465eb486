// Copyright 2026  The dnsgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include "dnsgen/error.h"
#include "dnsgen/rtcheck.h"

namespace dnsgen::rt {

static_assert(std::endian::native == std::endian::little,
              "wire format is little-endian float32");

namespace {

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void WriteAll(int fd, const void *data, size_t n) {
  const auto *p = static_cast<const char *>(data);
  while (n > 0) {
    const ssize_t w = ::write(fd, p, n);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kHarness,
                  std::string("write to processor failed: ") + std::strerror(errno));
    }
    p += w;
    n -= static_cast<size_t>(w);
  }
}

// Waits up to timeout_ms for fd to become readable.
void AwaitReadable(int fd, int timeout_ms) {
  pollfd pfd{fd, POLLIN, 0};
  while (true) {
    const int ready = ::poll(&pfd, 1, timeout_ms);
    if (ready > 0) return;
    if (ready == 0)
      throw Error(ErrorCode::kHarness, "processor produced no output within " +
                                           std::to_string(timeout_ms) + " ms");
    if (errno != EINTR)
      throw Error(ErrorCode::kHarness, std::string("poll failed: ") + std::strerror(errno));
  }
}

void ReadAll(int fd, void *data, size_t n, int timeout_ms) {
  auto *p = static_cast<char *>(data);
  while (n > 0) {
    AwaitReadable(fd, timeout_ms);
    const ssize_t r = ::read(fd, p, n);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kHarness,
                  std::string("read from processor failed: ") + std::strerror(errno));
    }
    if (r == 0)
      throw Error(ErrorCode::kHarness, "processor closed its output mid-frame");
    p += r;
    n -= static_cast<size_t>(r);
  }
}

int ParseField(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() == key.size())
    throw Error(ErrorCode::kHarness, "bad processor header token '" +
                                         std::string(token) + "'");
  int v = 0;
  for (char c : token.substr(key.size())) {
    if (c < '0' || c > '9')
      throw Error(ErrorCode::kHarness, "bad processor header token '" +
                                           std::string(token) + "'");
    v = v * 10 + (c - '0');
    if (v > 100000)
      throw Error(ErrorCode::kHarness, "processor header value out of range");
  }
  return v;
}

}  // namespace

void ParseProcessorHeader(std::string_view line, int *frame_ms, int *lookahead_ms) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    line.remove_suffix(1);
  const size_t space = line.find(' ');
  if (space == std::string_view::npos)
    throw Error(ErrorCode::kHarness, "processor header must be "
                                     "'frame_ms=<int> lookahead_ms=<int>', got '" +
                                         std::string(line) + "'");
  *frame_ms = ParseField(line.substr(0, space), "frame_ms=");
  *lookahead_ms = ParseField(line.substr(space + 1), "lookahead_ms=");
  if (*frame_ms <= 0)
    throw Error(ErrorCode::kHarness, "processor declares frame_ms=0");
}

SubprocessProcessor::SubprocessProcessor(std::string command_line, int sample_rate,
                                         int timeout_ms)
    : command_line_(std::move(command_line)),
      sample_rate_(sample_rate),
      timeout_ms_(timeout_ms) {
  IgnoreSigpipe();
  Start();
}

SubprocessProcessor::~SubprocessProcessor() { Stop(); }

void SubprocessProcessor::Start() {
  int to_child[2], from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0)
    throw Error(ErrorCode::kHarness, "pipe() failed");
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw Error(ErrorCode::kHarness, "pipe() failed");
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    throw Error(ErrorCode::kHarness, "fork() failed");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_line_.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];

  std::string header;
  char c = 0;
  while (true) {
    try {
      AwaitReadable(from_child_, timeout_ms_);
    } catch (...) {
      Stop();
      throw;
    }
    const ssize_t r = ::read(from_child_, &c, 1);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      Stop();
      throw Error(ErrorCode::kHarness,
                  "processor '" + command_line_ + "' exited before its header");
    }
    if (c == '\n') break;
    header += c;
    if (header.size() > 256) {
      Stop();
      throw Error(ErrorCode::kHarness, "processor header line too long");
    }
  }
  try {
    ParseProcessorHeader(header, &frame_ms_, &lookahead_ms_);
  } catch (...) {
    Stop();
    throw;
  }
}

void SubprocessProcessor::Stop() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ <= 0) return;
  // Closing stdin asks the child to exit; give it a moment before killing.
  int status = 0;
  for (int i = 0; i < 100; ++i) {
    if (::waitpid(pid_, &status, WNOHANG) == pid_) {
      pid_ = -1;
      return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ::kill(pid_, SIGKILL);
  ::waitpid(pid_, &status, 0);
  pid_ = -1;
}

void SubprocessProcessor::Reset() {
  Stop();
  Start();
}

void SubprocessProcessor::Process(std::span<const float> in, std::span<float> out) {
  const size_t frame = static_cast<size_t>(sample_rate_) * frame_ms_ / 1000;
  if (in.size() != frame || out.size() != frame)
    throw Error(ErrorCode::kHarness, "frame size mismatch");
  if (pid_ <= 0) throw Error(ErrorCode::kHarness, "processor is not running");
  WriteAll(to_child_, in.data(), in.size_bytes());
  ReadAll(from_child_, out.data(), out.size_bytes(), timeout_ms_);
}

}  // namespace dnsgen::rt
