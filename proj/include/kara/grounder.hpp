#pragma once

#include <cstddef>

#include "kara/interpretation.hpp"
#include "kara/program.hpp"

namespace kara {

struct GroundOptions {
  /// Maximum function nesting depth of generated terms.
  int max_term_depth = 8;
  /// Upper bound on derivable ground atoms (guards arithmetic recursion).
  std::size_t max_atoms = 2'000'000;
  /// Drop rule instances whose arithmetic is applied to non-integers instead
  /// of raising GroundingError.
  bool discard_undefined_arithmetic = false;
};

/// Semi-naive bottom-up instantiation of `program` together with the facts
/// of `input`. The result contains the input facts, the program facts and
/// every rule instance whose positive body is derivable; builtins are
/// evaluated (satisfied instances keep no builtin) and arithmetic is folded.
Program ground(const Program& program, const Interpretation& input = {},
               const GroundOptions& options = {});

}  // namespace kara
