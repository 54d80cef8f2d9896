#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kara/backends.hpp"
#include "kara/interpretation.hpp"
#include "kara/program.hpp"

namespace kara {

/// Names of the fresh predicates of the abduction program.
inline constexpr const char* kDomPredicate = "kara__dom";
inline constexpr const char* kNonrecdomPredicate = "kara__nonrecdom";
inline constexpr const char* kPrimeSuffix = "__prime";

std::string primed(const std::string& predicate);

class AbductionError : public Error {
 public:
  using Error::Error;
};

struct PredicateSets {
  /// Abducible predicates P_a.
  std::set<Predicate> abducibles;
  /// Integrity predicates P_i, a subset of the catalogue.
  std::set<Predicate> integrity;
};

/// Catalogue minus visposition/4 and visscale/3.
std::set<Predicate> default_integrity_predicates();

/// Non-vis predicates occurring in some rule body of V but in no head.
std::set<Predicate> abducible_predicates(const Program& vis_program);

/// P_a from V and the default P_i.
PredicateSets default_predicate_sets(const Program& vis_program);

/// Domain part. Vis atoms in rule bodies here refer to the primed copy of
/// I'_v, so the facts of that copy are included.
Program build_dom(const Interpretation& edited_vis, const Program& vis_program);

/// Terms derived by the domain part alone (before any override).
std::set<Term> derive_domain(const Interpretation& edited_vis, const Program& vis_program);

/// Complementary guess pair per abducible predicate over kara__dom.
Program build_guess(const std::set<Predicate>& abducibles);

struct CheckOptions {
  /// Also forbid P_i atoms for integrity predicates absent from I'_v.
  bool constrain_absent_integrity = false;
};

/// Constraints forcing agreement with I'_v on P_i in both directions.
Program build_check(const Interpretation& edited_vis, const std::set<Predicate>& integrity,
                    const CheckOptions& options = {});

struct AbductionProgram {
  Program dom;
  Program guess;
  Program vis;
  Program check;

  Program combined() const;
  /// Dialect text with a comment line before each part.
  std::string str() const;
};

/// User adjustments of the automatically derived domain and abducibles.
struct DomainOverride {
  std::set<Term> extra_terms;
  std::set<Predicate> extra_abducibles;
};

struct AbductionOptions {
  /// Empty optional: derived from the program (default P_i, derived P_a).
  std::optional<PredicateSets> sets;
  DomainOverride domain;
  CheckOptions check;
  SolverConfig solver;
  /// Enumerate every answer set of the abduction program, not just the first.
  bool all = false;
  /// Built-in solver only: abducible atoms tried true first (e.g. the
  /// interpretation before the edit), so the result stays close to it.
  const Interpretation* prefer = nullptr;
};

struct AbductionResult {
  /// Absent when the abduction program has no answer set.
  std::optional<Interpretation> interpretation;
  /// Every solution when AbductionOptions::all is set.
  std::vector<Interpretation> alternatives;
  PredicateSets sets;
  /// Domain terms of the first answer set (kara__dom atoms).
  std::set<Term> domain;
  AbductionProgram program;

  bool unsat() const { return !interpretation.has_value(); }
};

/// Checks that fresh names are unused, then assembles the abduction program.
AbductionProgram build_abduction_program(const Interpretation& edited_vis, const Program& vis_program,
                                         const PredicateSets& sets, const DomainOverride& domain = {},
                                         const CheckOptions& check = {});

AbductionResult abduce(const Interpretation& edited_vis, const Program& vis_program,
                       const AbductionOptions& options = {});

/// True iff V ∪ I' has an answer set and every answer set agrees with I'_v
/// on the integrity predicates.
bool verify_roundtrip(const Interpretation& candidate, const Program& vis_program, const Interpretation& edited_vis,
                      const std::set<Predicate>& integrity, const SolverConfig& solver = {});

}  // namespace kara
