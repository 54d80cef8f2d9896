#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kara/interpretation.hpp"
#include "kara/scene.hpp"

namespace kara {

/// Replaces the content of one grid cell with one of the grid's possible values.
struct SetGridValue {
  Term grid;
  std::int64_t row = 0;
  std::int64_t col = 0;
  Term value;
  friend bool operator==(const SetGridValue&, const SetGridValue&) = default;
};

/// Needs visdeletable(id). Removes every atom mentioning id except the
/// affordances of id itself; connections to the element go with it.
struct DeleteElement {
  Term id;
  friend bool operator==(const DeleteElement&, const DeleteElement&) = default;
};

/// Needs viscreatable(id). `args` follow the id in the element atom; for a
/// polygon they are (x, y, order) triples.
struct CreateElement {
  Term id;
  ElementKind kind = ElementKind::Rect;
  std::vector<Term> args;
  friend bool operator==(const CreateElement&, const CreateElement&) = default;
};

/// Needs vischangable(id, property). Properties: color, backgroundcolor,
/// fontfamily, fontsize, fontstyle, sourcedeco, targetdeco.
struct SetProperty {
  Term id;
  std::string property;
  Term value;
  friend bool operator==(const SetProperty&, const SetProperty&) = default;
};

/// Needs viscreatable(id).
struct Connect {
  Term id;
  Term source;
  Term target;
  friend bool operator==(const Connect&, const Connect&) = default;
};

/// Needs visdeletable(id).
struct Disconnect {
  Term id;
  friend bool operator==(const Disconnect&, const Disconnect&) = default;
};

/// Cosmetic: sets visposition, which the default integrity predicates ignore.
struct MoveElement {
  Term id;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  friend bool operator==(const MoveElement&, const MoveElement&) = default;
};

using EditOp = std::variant<SetGridValue, DeleteElement, CreateElement, SetProperty, Connect, Disconnect, MoveElement>;

class EditError : public Error {
 public:
  enum class Kind { Affordance, UnknownId, Invalid };
  EditError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Predicate of a changeable property name, e.g. "backgroundColor" -> visbackgroundcolor.
std::optional<std::string> property_predicate(std::string_view property);

/// Returns I'_v; the input is not modified.
Interpretation apply_edit(const Interpretation& vis, const EditOp& op);

/// An edit undoing `op` on `vis`, when one exists (deletions have none).
std::optional<EditOp> inverse_edit(const Interpretation& vis, const EditOp& op);

std::string edit_name(const EditOp& op);

nlohmann::json edit_to_json(const EditOp& op);
/// Throws EditError(Invalid) on malformed input.
EditOp edit_from_json(const nlohmann::json& json);

/// Base interpretation plus the edits applied so far.
class EditLog {
 public:
  explicit EditLog(Interpretation base = {}) : base_(std::move(base)), current_(base_) {}

  const Interpretation& base() const { return base_; }
  const Interpretation& current() const { return current_; }
  const std::vector<EditOp>& edits() const { return edits_; }

  /// Applies op to current(); on error nothing changes.
  void apply(const EditOp& op);
  /// Drops the last edit; false when there is none.
  bool undo();

 private:
  Interpretation base_;
  std::vector<EditOp> edits_;
  Interpretation current_;
};

}  // namespace kara
