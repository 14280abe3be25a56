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

#ifndef SMTOPT_PROCESS_HPP_
#define SMTOPT_PROCESS_HPP_

#include <sys/types.h>

#include <chrono>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

namespace smtopt {

using Clock = std::chrono::steady_clock;

// Stop signal plus optional deadline. Blocking reads observe both.
struct CancelToken {
  std::stop_token stop;
  std::optional<Clock::time_point> deadline;

  bool expired() const { return deadline && Clock::now() >= *deadline; }
};

// A child process with its stdin/stdout connected to pipes. stderr goes to
// /dev/null. Not copyable; movable.
class ChildProcess {
 public:
  // Throws Error(kSpawnFailure) when the executable cannot be started.
  ChildProcess(const std::string& command, const std::vector<std::string>& args);
  ~ChildProcess();

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;
  ChildProcess(ChildProcess&& other) noexcept;
  ChildProcess& operator=(ChildProcess&& other) noexcept;

  // Throws Error(kSolverDied) if the pipe is closed.
  void write(std::string_view data);

  // Reads one complete s-expression or bare token from stdout, skipping
  // whitespace and ';' comments. Waits at most until `local_deadline` (if
  // set), then returns nullopt. Throws Error(kSolverDied) on EOF and
  // Error(kCancelled)/Error(kTimeout) when the token fires; the process is
  // killed before throwing.
  std::optional<std::string> read_sexpr(const CancelToken& cancel,
                                        std::optional<Clock::time_point> local_deadline = std::nullopt);

  bool alive() const { return pid_ > 0; }

  // Sends `farewell` (best effort), closes stdin, waits up to `grace`, then
  // kills. Idempotent.
  void shutdown(std::string_view farewell, std::chrono::milliseconds grace);
  void kill();

 private:
  // Returns the length of the first complete expression in buf_, or 0.
  size_t complete_prefix() const;
  void reap(std::chrono::milliseconds grace);

  pid_t pid_ = -1;
  int in_fd_ = -1;   // child's stdin
  int out_fd_ = -1;  // child's stdout
  std::string buf_;
};

}  // namespace smtopt

#endif  // SMTOPT_PROCESS_HPP_
