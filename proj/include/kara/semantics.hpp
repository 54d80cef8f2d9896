#pragma once

#include "kara/interpretation.hpp"
#include "kara/program.hpp"

namespace kara {

/// Gelfond-Lifschitz reduct of a ground program: rules whose naf body meets
/// `candidate` are dropped, the naf body of the rest is removed.
Program reduct(const Program& ground, const Interpretation& candidate);

/// Least model of a ground negation-free program (constraints ignored).
Interpretation least_model(const Program& positive);

/// True iff `candidate` is consistent, satisfies every constraint and equals
/// the least model of the reduct. Throws UnsupportedProgramError on
/// disjunctive heads.
bool is_answer_set(const Program& ground, const Interpretation& candidate);

}  // namespace kara
