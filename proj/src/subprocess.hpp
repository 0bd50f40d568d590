#pragma once

// Child process with line-oriented pipes to its stdin and stdout. POSIX only.

#include <sys/types.h>

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace limelight::detail {

class Subprocess {
 public:
  // Throws ProtocolError when the program cannot be executed.
  explicit Subprocess(const std::vector<std::string>& argv);
  ~Subprocess();

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  // Writes `line` plus '\n'. Returns false if the child has closed its stdin.
  bool write_line(std::string_view line);

  enum class ReadStatus { kLine, kEof, kTimeout };
  ReadStatus read_line(std::string& line, std::chrono::milliseconds timeout);

  void kill();
  pid_t pid() const { return pid_; }

 private:
  void reap(std::chrono::milliseconds grace);

  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

}  // namespace limelight::detail
