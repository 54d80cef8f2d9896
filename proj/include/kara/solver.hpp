#pragma once

#include <cstddef>
#include <vector>

#include "kara/grounder.hpp"
#include "kara/interpretation.hpp"
#include "kara/program.hpp"

namespace kara {

struct SolveOptions {
  /// Maximum number of answer sets; 0 enumerates all.
  std::size_t limit = 0;
  GroundOptions ground;
  /// Branching polarity hint: atoms in this set are tried true first, all
  /// others false first. Enumeration stays deterministic either way.
  const Interpretation* prefer = nullptr;
};

/// Enumerates answer sets of program ∪ input with the built-in evaluator.
/// Order is lexicographic over the truth assignments of the ground atoms
/// (sorted atom order, preferred polarity first). Throws
/// UnsupportedProgramError for disjunctive programs.
std::vector<Interpretation> solve(const Program& program, const Interpretation& input = {},
                                  const SolveOptions& options = {});

/// Same as solve() on an already ground program.
std::vector<Interpretation> solve_ground(const Program& ground, const SolveOptions& options = {});

}  // namespace kara
