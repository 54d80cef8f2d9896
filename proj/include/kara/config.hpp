#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string_view>

#include "kara/backends.hpp"

namespace kara {

/// Settings shared by the CLI and the service. Precedence: built-in defaults,
/// then the config file, then command-line flags. The environment is not
/// consulted here (KARA_SOLVER is applied by run_external itself).
struct Config {
  SolverConfig solver;
  int depth_bound = 8;
  /// Default integrity predicates; unset means the catalogue minus
  /// visposition/4 and visscale/3.
  std::optional<std::set<Predicate>> integrity;
  double session_ttl_seconds = 1800;
};

/// Parses key = value lines. `#` starts a comment; values may be double
/// quoted. Keys: solver (builtin|external), solver_path, solver_args,
/// solver_timeout, depth_bound, integrity, session_ttl. Unknown keys and bad
/// values raise ConfigError naming the line. Settings not present keep the
/// value they have in `base`.
Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});

/// "visrect/3, visgrid/5" or whitespace separated.
std::set<Predicate> parse_predicate_list(std::string_view text);

}  // namespace kara
