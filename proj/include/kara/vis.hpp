#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kara/interpretation.hpp"

namespace kara {

enum class VisCategory { Element, Property, LayoutHint, Grid, Graph, EditAffordance };

const char* category_name(VisCategory c);

struct VisPredicate {
  std::string_view name;
  std::size_t arity;
  VisCategory category;

  Predicate predicate() const { return {std::string(name), arity}; }
};

/// The reserved visualisation predicates P_v, in a fixed order.
std::span<const VisPredicate> vis_catalog();
const VisPredicate* find_vis_predicate(std::string_view name, std::size_t arity);
std::set<Predicate> vis_predicates();
bool is_vis_predicate(const Predicate& p);

/// Keeps the positive atoms whose predicate/arity is catalogued.
Interpretation project_vis(const Interpretation& answer_set);

struct Diagnostic {
  enum class Code {
    WrongArity,
    UnknownPredicate,
    DanglingReference,
    LabelTarget,
    NodeKind,
    OutOfBounds,
    KindConflict,
    NonIntegerGeometry,
    DuplicateProperty,
  };
  Code code;
  std::string message;

  std::string str() const;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

const char* diagnostic_code_name(Diagnostic::Code code);

/// Checks the atoms of an answer set that look like visualisation atoms
/// (predicate name starting with "vis"). Other atoms are ignored.
std::vector<Diagnostic> validate(const Interpretation& atoms);

/// Raised in strict mode when validation reports anything.
class VisValidationError : public Error {
 public:
  explicit VisValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace kara
