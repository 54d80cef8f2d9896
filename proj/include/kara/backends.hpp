#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kara/interpretation.hpp"
#include "kara/program.hpp"
#include "kara/solver.hpp"

namespace kara {

enum class Backend { Builtin, External };

struct SolverConfig {
  Backend backend = Backend::Builtin;
  std::filesystem::path executable;
  std::vector<std::string> extra_args;
  double timeout_seconds = 30.0;
  /// 0 keeps every parsed answer set.
  std::size_t answer_set_limit = 0;

  /// Throws ConfigError when external has no path or timeout is not positive.
  void validate() const;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  enum class Kind { Spawn, Timeout, Output };
  BackendError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Writes `program` to a temp file, runs the configured executable with
/// extra_args followed by the file path and parses its stdout. The
/// KARA_SOLVER environment variable overrides the executable path. The child
/// runs in its own process group, which is killed when the timeout expires.
std::vector<Interpretation> run_external(const Program& program, const SolverConfig& config);

/// Parses clasp-style ("Answer: n" followed by a witness line) or DLV-style
/// (`{a, b}` per line) solver output. An UNSATISFIABLE clasp run or a DLV run
/// printing no sets yields no answer sets; anything else raises
/// BackendError with an excerpt of the raw output.
std::vector<Interpretation> parse_solver_output(std::string_view output, std::size_t limit = 0);

/// Solves program ∪ input with the configured backend. The built-in path
/// applies answer_set_limit on top of options.limit.
std::vector<Interpretation> solve_with(const SolverConfig& config, const Program& program,
                                       const Interpretation& input = {}, SolveOptions options = {});

}  // namespace kara
