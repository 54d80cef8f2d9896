#pragma once

#include <string_view>

#include "kara/interpretation.hpp"
#include "kara/program.hpp"

namespace kara {

/// Parses a program in the dialect:
///
///   % comment
///   fact(1..3).
///   head(X) :- body(X,Y), not other(Y), -neg(X), X < Y + 1.
///   :- constraint(X).
///
/// Interval facts are expanded here. Every rule is checked for safety; an
/// unsafe rule raises UnsafeRuleError naming the first unbound variable.
Program parse_program(std::string_view text);

enum class InterpretationFormat { Facts, ClaspLine, DlvBraces };

/// Parses a ground interpretation. Facts may use intervals; clasp lines are
/// whitespace separated atoms; DLV output is `{a, b(1)}`.
Interpretation parse_interpretation(std::string_view text,
                                    InterpretationFormat format = InterpretationFormat::Facts);

/// Parses a single ground or non-ground term, e.g. an element id "f(s1,1)".
Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);

}  // namespace kara
