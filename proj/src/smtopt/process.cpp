// Copyright 2026 The smtopt Authors
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

#include "smtopt/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>
#include <utility>

#include "smtopt/error.hpp"

extern char** environ;

namespace smtopt {

namespace {

constexpr auto kPollSlice = std::chrono::milliseconds(20);

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

ChildProcess::ChildProcess(const std::string& command, const std::vector<std::string>& args) {
  ignore_sigpipe();
  if (command.empty()) throw Error(ErrorCode::kSpawnFailure, "empty solver command");

  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw Error(ErrorCode::kSpawnFailure, std::strerror(errno));
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw Error(ErrorCode::kSpawnFailure, std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);

  std::vector<std::string> argv_storage;
  argv_storage.push_back(command);
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = -1;
  int rc = ::posix_spawnp(&pid, command.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw Error(ErrorCode::kSpawnFailure, command + ": " + std::strerror(rc));
  }
  pid_ = pid;
  in_fd_ = to_child[1];
  out_fd_ = from_child[0];
}

ChildProcess::~ChildProcess() { kill(); }

ChildProcess::ChildProcess(ChildProcess&& other) noexcept
    : pid_(std::exchange(other.pid_, -1)),
      in_fd_(std::exchange(other.in_fd_, -1)),
      out_fd_(std::exchange(other.out_fd_, -1)),
      buf_(std::move(other.buf_)) {}

ChildProcess& ChildProcess::operator=(ChildProcess&& other) noexcept {
  if (this != &other) {
    kill();
    pid_ = std::exchange(other.pid_, -1);
    in_fd_ = std::exchange(other.in_fd_, -1);
    out_fd_ = std::exchange(other.out_fd_, -1);
    buf_ = std::move(other.buf_);
  }
  return *this;
}

void ChildProcess::write(std::string_view data) {
  if (in_fd_ < 0) throw Error(ErrorCode::kSolverDied, "solver stdin closed");
  while (!data.empty()) {
    ssize_t n = ::write(in_fd_, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      kill();
      throw Error(ErrorCode::kSolverDied, std::string("write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
}

size_t ChildProcess::complete_prefix() const {
  size_t i = 0;
  const size_t n = buf_.size();
  // skip whitespace and comments
  while (i < n) {
    if (is_space(buf_[i])) {
      ++i;
    } else if (buf_[i] == ';') {
      while (i < n && buf_[i] != '\n') ++i;
      if (i == n) return 0;
    } else {
      break;
    }
  }
  if (i == n) return 0;
  if (buf_[i] != '(') {
    size_t j = i;
    while (j < n && !is_space(buf_[j]) && buf_[j] != '(' && buf_[j] != ')') ++j;
    return j < n ? j : 0;  // need a delimiter to know the token ended
  }
  int depth = 0;
  for (size_t j = i; j < n; ++j) {
    char c = buf_[j];
    if (c == '"') {
      // "" is an escaped quote inside SMT-LIB strings
      for (++j; j < n; ++j) {
        if (buf_[j] == '"') {
          if (j + 1 < n && buf_[j + 1] == '"') {
            ++j;
          } else {
            break;
          }
        }
      }
      if (j >= n) return 0;
    } else if (c == '|') {
      for (++j; j < n && buf_[j] != '|'; ++j) {
      }
      if (j >= n) return 0;
    } else if (c == ';') {
      while (j < n && buf_[j] != '\n') ++j;
      if (j >= n) return 0;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth == 0) return j + 1;
    }
  }
  return 0;
}

std::optional<std::string> ChildProcess::read_sexpr(const CancelToken& cancel,
                                                    std::optional<Clock::time_point> local_deadline) {
  for (;;) {
    if (size_t end = complete_prefix(); end > 0) {
      std::string out = buf_.substr(0, end);
      buf_.erase(0, end);
      auto b = std::find_if_not(out.begin(), out.end(), is_space);
      // strip leading whitespace/comments
      size_t start = static_cast<size_t>(b - out.begin());
      while (start < out.size() && out[start] == ';') {
        start = out.find('\n', start);
        while (start < out.size() && is_space(out[start])) ++start;
      }
      return out.substr(start);
    }
    if (out_fd_ < 0) throw Error(ErrorCode::kSolverDied, "solver stdout closed");
    if (cancel.stop.stop_requested()) {
      kill();
      throw Error(ErrorCode::kCancelled, "cancelled while waiting for solver");
    }
    if (cancel.expired()) {
      kill();
      throw Error(ErrorCode::kTimeout, "deadline exceeded while waiting for solver");
    }
    auto now = Clock::now();
    if (local_deadline && now >= *local_deadline) return std::nullopt;
    auto wait = kPollSlice;
    if (local_deadline) {
      wait = std::min(wait, std::chrono::duration_cast<std::chrono::milliseconds>(*local_deadline - now) +
                                std::chrono::milliseconds(1));
    }
    pollfd pfd{out_fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(wait.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill();
      throw Error(ErrorCode::kSolverDied, std::string("poll failed: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[65536];
    ssize_t got = ::read(out_fd_, chunk, sizeof chunk);
    if (got < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      kill();
      throw Error(ErrorCode::kSolverDied, std::string("read failed: ") + std::strerror(errno));
    }
    if (got == 0) {
      // A trailing bare token without newline is still a complete answer.
      std::string rest = buf_;
      kill();
      auto b = rest.find_first_not_of(" \t\r\n");
      if (b != std::string::npos && rest[b] != '(') {
        buf_.clear();
        return rest.substr(b, rest.find_last_not_of(" \t\r\n") - b + 1);
      }
      throw Error(ErrorCode::kSolverDied, rest.empty() ? "solver exited" : "solver exited after: " + rest);
    }
    buf_.append(chunk, static_cast<size_t>(got));
  }
}

void ChildProcess::reap(std::chrono::milliseconds grace) {
  if (pid_ <= 0) return;
  auto until = Clock::now() + grace;
  for (;;) {
    int status = 0;
    pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_ || (r < 0 && errno == ECHILD)) {
      pid_ = -1;
      return;
    }
    if (Clock::now() >= until) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  ::kill(pid_, SIGKILL);
  int status = 0;
  while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
  }
  pid_ = -1;
}

void ChildProcess::shutdown(std::string_view farewell, std::chrono::milliseconds grace) {
  if (pid_ <= 0 && in_fd_ < 0 && out_fd_ < 0) return;
  if (in_fd_ >= 0 && !farewell.empty()) {
    // best effort; the solver may already be gone
    [[maybe_unused]] ssize_t ignored = ::write(in_fd_, farewell.data(), farewell.size());
  }
  close_fd(in_fd_);
  reap(grace);
  close_fd(out_fd_);
}

void ChildProcess::kill() {
  close_fd(in_fd_);
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
    pid_ = -1;
  }
  close_fd(out_fd_);
}

}  // namespace smtopt
