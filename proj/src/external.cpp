// Copyright 2026 The encon Authors
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

#include "encon/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <mutex>

#include "encon/con_format.hpp"

namespace encon {

namespace {

void ignore_sigpipe_once() {
  // A child that exits without draining stdin must not take us down.
  static std::once_flag flag;
  std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0)
      throw AdapterError(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  int read_fd() const { return fds[0]; }
  int write_fd() const { return fds[1]; }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

void set_nonblocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace

AnnotationSet external_annotate(const ExternalAdapterConfig& config,
                                const Document& doc,
                                const std::string& source) {
  if (config.command.empty())
    throw ConfigError("external annotator '" + source + "': empty command");
  if (config.timeout.count() <= 0)
    throw ConfigError("external annotator '" + source +
                      "': timeout must be positive");
  ignore_sigpipe_once();

  Pipe to_child, from_child, err_child;

  pid_t pid = fork();
  if (pid < 0)
    throw AdapterError(std::string("fork: ") + std::strerror(errno));

  if (pid == 0) {
    // Child: wire the pipes, optionally change directory, exec.
    dup2(to_child.read_fd(), STDIN_FILENO);
    dup2(from_child.write_fd(), STDOUT_FILENO);
    dup2(err_child.write_fd(), STDERR_FILENO);
    to_child.close_write();
    from_child.close_read();
    err_child.close_read();
    if (!config.workdir.empty() &&
        chdir(config.workdir.c_str()) != 0) {
      const char* msg = "cannot change to working directory\n";
      ssize_t ignored = write(STDERR_FILENO, msg, std::strlen(msg));
      (void)ignored;
      _exit(127);
    }
    std::vector<char*> argv;
    argv.reserve(config.command.size() + 1);
    for (const std::string& arg : config.command)
      argv.push_back(const_cast<char*>(arg.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    const char* msg = "exec failed\n";
    ssize_t ignored = write(STDERR_FILENO, msg, std::strlen(msg));
    (void)ignored;
    _exit(127);
  }

  // Parent.
  to_child.close_read();
  from_child.close_write();
  err_child.close_write();
  set_nonblocking(to_child.write_fd());
  set_nonblocking(from_child.read_fd());
  set_nonblocking(err_child.read_fd());

  const std::string input = doc.text();
  std::size_t written = 0;
  std::string out_text, err_text;
  bool stdin_open = true;
  if (input.empty()) {
    to_child.close_write();
    stdin_open = false;
  }

  auto deadline = std::chrono::steady_clock::now() + config.timeout;
  char buf[4096];
  bool timed_out = false;

  while (true) {
    bool stdout_open = from_child.read_fd() >= 0;
    bool stderr_open = err_child.read_fd() >= 0;
    if (!stdin_open && !stdout_open && !stderr_open) break;

    struct pollfd fds[3];
    nfds_t n = 0;
    int idx_in = -1, idx_out = -1, idx_err = -1;
    if (stdin_open) {
      idx_in = static_cast<int>(n);
      fds[n++] = {to_child.write_fd(), POLLOUT, 0};
    }
    if (stdout_open) {
      idx_out = static_cast<int>(n);
      fds[n++] = {from_child.read_fd(), POLLIN, 0};
    }
    if (stderr_open) {
      idx_err = static_cast<int>(n);
      fds[n++] = {err_child.read_fd(), POLLIN, 0};
    }

    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    int rc = poll(fds, n, wait_ms > 0 ? wait_ms : 1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill(pid, SIGKILL);
      waitpid(pid, nullptr, 0);
      throw AdapterError(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) {
      timed_out = true;
      break;
    }

    if (idx_in >= 0 && (fds[idx_in].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t w = write(to_child.write_fd(), input.data() + written,
                        input.size() - written);
      if (w > 0) {
        written += static_cast<std::size_t>(w);
      } else if (w < 0 && errno != EAGAIN && errno != EINTR) {
        // Child closed its stdin early; that is its business.
        written = input.size();
      }
      if (written >= input.size()) {
        to_child.close_write();
        stdin_open = false;
      }
    }
    if (idx_out >= 0 && (fds[idx_out].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(from_child.read_fd(), buf, sizeof(buf));
      if (r > 0)
        out_text.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR))
        from_child.close_read();
    }
    if (idx_err >= 0 && (fds[idx_err].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(err_child.read_fd(), buf, sizeof(buf));
      if (r > 0)
        err_text.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR))
        err_child.close_read();
    }
  }

  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    throw AdapterTimeout("external annotator '" + source +
                             "' exceeded its deadline of " +
                             std::to_string(config.timeout.count()) + " ms",
                         err_text);
  }

  int status = 0;
  if (waitpid(pid, &status, 0) < 0)
    throw AdapterError(std::string("waitpid: ") + std::strerror(errno));
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string detail = WIFEXITED(status)
                             ? "exit status " +
                                   std::to_string(WEXITSTATUS(status))
                             : "killed by signal";
    throw AdapterError("external annotator '" + source + "' failed (" +
                           detail + ")" +
                           (err_text.empty() ? "" : ": " + err_text),
                       err_text);
  }

  try {
    return parse_con(out_text, doc, source);
  } catch (const Error& e) {
    throw ParseError("external annotator '" + source + "': " +
                     std::string(e.what()));
  }
}

ExternalAnnotator::ExternalAnnotator(std::string id,
                                     ExternalAdapterConfig config)
    : id_(std::move(id)), config_(std::move(config)) {
  if (config_.command.empty())
    throw ConfigError("external annotator '" + id_ + "': empty command");
  if (config_.timeout.count() <= 0)
    throw ConfigError("external annotator '" + id_ +
                      "': timeout must be positive");
}

}  // namespace encon
