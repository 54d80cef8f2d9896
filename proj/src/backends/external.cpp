#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>

#include "kara/backends.hpp"

namespace kara {
namespace {

class TempDir {
 public:
  TempDir() {
    std::string templ = (std::filesystem::temp_directory_path() / "kara-XXXXXX").string();
    if (!mkdtemp(templ.data()))
      throw BackendError(BackendError::Kind::Spawn, "cannot create temp directory: " + std::string(std::strerror(errno)));
    path_ = templ;
  }
  ~TempDir() {
    if (!keep_) {
      std::error_code ec;
      std::filesystem::remove_all(path_, ec);
    }
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  void keep() { keep_ = true; }

 private:
  std::filesystem::path path_;
  bool keep_ = false;
};

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (pipe2(fd, O_CLOEXEC) != 0)
      throw BackendError(BackendError::Kind::Spawn, "pipe: " + std::string(std::strerror(errno)));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fd[0] >= 0) close(fd[0]);
    fd[0] = -1;
  }
  void close_write() {
    if (fd[1] >= 0) close(fd[1]);
    fd[1] = -1;
  }
};

void kill_group(pid_t pid) {
  kill(-pid, SIGKILL);
  kill(pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
}

}  // namespace

std::vector<Interpretation> run_external(const Program& program, const SolverConfig& config) {
  config.validate();
  std::filesystem::path exe = config.executable;
  if (const char* env = std::getenv("KARA_SOLVER"); env && *env) exe = env;

  TempDir dir;
  auto file = dir.path() / "program.lp";
  {
    std::ofstream out(file);
    out << program.str();
    if (!out) {
      dir.keep();
      throw BackendError(BackendError::Kind::Spawn, "cannot write " + file.string());
    }
  }

  std::vector<std::string> args{exe.string()};
  args.insert(args.end(), config.extra_args.begin(), config.extra_args.end());
  args.push_back(file.string());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  Pipe out, err, exec_status;
  pid_t pid = fork();
  if (pid < 0) throw BackendError(BackendError::Kind::Spawn, "fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out.fd[1], STDOUT_FILENO);
    dup2(err.fd[1], STDERR_FILENO);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    execvp(argv[0], argv.data());
    int e = errno;
    ssize_t ignored = write(exec_status.fd[1], &e, sizeof e);
    (void)ignored;
    _exit(127);
  }
  setpgid(pid, pid);
  out.close_write();
  err.close_write();
  exec_status.close_write();

  int exec_errno = 0;
  if (read(exec_status.fd[0], &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
    int status = 0;
    waitpid(pid, &status, 0);
    dir.keep();
    throw BackendError(BackendError::Kind::Spawn,
                       "cannot execute " + exe.string() + ": " + std::strerror(exec_errno));
  }

  using clock = std::chrono::steady_clock;
  auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                     std::chrono::duration<double>(config.timeout_seconds));
  std::string stdout_text, stderr_text;
  pollfd fds[2] = {{out.fd[0], POLLIN, 0}, {err.fd[0], POLLIN, 0}};
  std::string* sinks[2] = {&stdout_text, &stderr_text};
  int open_fds = 2;
  char buf[65536];
  while (open_fds > 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
    if (left <= 0) {
      kill_group(pid);
      dir.keep();
      throw BackendError(BackendError::Kind::Timeout,
                         exe.string() + " timed out after " + std::to_string(config.timeout_seconds) + " s");
    }
    int rc = poll(fds, 2, static_cast<int>(std::min<long long>(left, 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_group(pid);
      dir.keep();
      throw BackendError(BackendError::Kind::Spawn, "poll: " + std::string(std::strerror(errno)));
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  // The solver closed its output; reap it and anything it left behind.
  while (true) {
    int status = 0;
    pid_t rc = waitpid(pid, &status, WNOHANG);
    if (rc == pid || (rc < 0 && errno != EINTR)) break;
    if (clock::now() >= deadline) {
      kill_group(pid);
      dir.keep();
      throw BackendError(BackendError::Kind::Timeout,
                         exe.string() + " timed out after " + std::to_string(config.timeout_seconds) + " s");
    }
    usleep(2000);
  }
  kill(-pid, SIGKILL);

  try {
    auto models = parse_solver_output(stdout_text, config.answer_set_limit);
    return models;
  } catch (const BackendError& e) {
    dir.keep();
    std::string msg = e.what();
    if (!stderr_text.empty()) msg += "\nstderr: " + stderr_text.substr(0, 400);
    msg += "\nprogram kept in " + dir.path().string();
    throw BackendError(BackendError::Kind::Output, msg);
  }
}

}  // namespace kara
