#pragma once

// Minimal POSIX process runner: spawn, feed stdin, capture stdout/stderr,
// enforce a wall-clock deadline, and report exit status plus elapsed time.

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace hintforge {

struct RunResult {
    int exit_code = -1;       // valid when exited normally
    bool exited = false;      // normal exit (vs signal/timeout)
    bool timed_out = false;
    int term_signal = 0;      // nonzero when killed by a signal
    std::string out;
    std::string err;
    double wall_seconds = 0.0;
};

namespace detail {

inline void set_nonblocking(int fd) {
    int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

inline bool drain_fd(int fd, std::string& sink) {
    // Returns false on EOF.
    char buf[4096];
    for (;;) {
        ssize_t n = ::read(fd, buf, sizeof(buf));
        if (n > 0) {
            sink.append(buf, static_cast<size_t>(n));
        } else if (n == 0) {
            return false;
        } else {
            return errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR;
        }
    }
}

} // namespace detail

// Runs argv[0] with the given arguments. timeout_s <= 0 means no deadline.
// The child is placed in its own process group so a timeout kills the whole
// tree.
inline RunResult run_process(const std::vector<std::string>& argv,
                             const std::string& stdin_data = {},
                             double timeout_s = 0.0) {
    RunResult result;
    if (argv.empty()) return result;

    int in_pipe[2], out_pipe[2], err_pipe[2];
    if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
        result.err = std::string("pipe failed: ") + std::strerror(errno);
        return result;
    }

    auto start = std::chrono::steady_clock::now();
    pid_t pid = ::fork();
    if (pid < 0) {
        result.err = std::string("fork failed: ") + std::strerror(errno);
        return result;
    }

    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        ::close(in_pipe[0]); ::close(in_pipe[1]);
        ::close(out_pipe[0]); ::close(out_pipe[1]);
        ::close(err_pipe[0]); ::close(err_pipe[1]);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        // exec failed; mimic the shell's convention
        std::string msg = "exec failed: " + argv[0] + ": " + std::strerror(errno) + "\n";
        ssize_t ignored = ::write(STDERR_FILENO, msg.data(), msg.size());
        (void)ignored;
        ::_exit(127);
    }

    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    detail::set_nonblocking(out_pipe[0]);
    detail::set_nonblocking(err_pipe[0]);

    // Feed stdin up front; test inputs are small.
    size_t written = 0;
    ::signal(SIGPIPE, SIG_IGN);
    while (written < stdin_data.size()) {
        ssize_t n = ::write(in_pipe[1], stdin_data.data() + written, stdin_data.size() - written);
        if (n > 0) {
            written += static_cast<size_t>(n);
        } else if (n < 0 && errno == EINTR) {
            continue;
        } else {
            break; // child closed stdin
        }
    }
    ::close(in_pipe[1]);

    auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(timeout_s));
    bool out_open = true, err_open = true;
    while (out_open || err_open) {
        if (timeout_s > 0.0 && std::chrono::steady_clock::now() >= deadline && !result.timed_out) {
            result.timed_out = true;
            ::kill(-pid, SIGKILL);
        }
        struct pollfd fds[2];
        int nfds = 0;
        if (out_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
        if (err_open) fds[nfds++] = {err_pipe[0], POLLIN, 0};
        int wait_ms = 50;
        if (timeout_s > 0.0 && !result.timed_out) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                            deadline - std::chrono::steady_clock::now()).count();
            if (left < wait_ms) wait_ms = left > 0 ? static_cast<int>(left) : 0;
        }
        int pr = ::poll(fds, static_cast<nfds_t>(nfds), wait_ms);
        if (pr < 0 && errno != EINTR) break;
        int idx = 0;
        if (out_open) {
            if (fds[idx].revents & (POLLIN | POLLHUP)) {
                if (!detail::drain_fd(out_pipe[0], result.out)) out_open = false;
            }
            idx++;
        }
        if (err_open) {
            if (fds[idx].revents & (POLLIN | POLLHUP)) {
                if (!detail::drain_fd(err_pipe[0], result.err)) err_open = false;
            }
        }
    }
    ::close(out_pipe[0]);
    ::close(err_pipe[0]);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {}
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (WIFEXITED(status)) {
        result.exited = true;
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.term_signal = WTERMSIG(status);
    }
    return result;
}

} // namespace hintforge
