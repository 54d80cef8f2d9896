#include "kara/edit.hpp"
#include "kara/parser.hpp"

namespace kara {

using nlohmann::json;

namespace {

Term term_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw EditError(EditError::Kind::Invalid, std::string("edit: missing term field ") + key);
  Term t;
  try {
    t = parse_term(j.at(key).get<std::string>());
  } catch (const ParseError& e) {
    throw EditError(EditError::Kind::Invalid, std::string("edit: field ") + key + ": " + e.what());
  }
  if (!t.is_ground()) throw EditError(EditError::Kind::Invalid, std::string("edit: field ") + key + " is not ground");
  return t;
}

std::int64_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw EditError(EditError::Kind::Invalid, std::string("edit: missing integer field ") + key);
  return j.at(key).get<std::int64_t>();
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw EditError(EditError::Kind::Invalid, std::string("edit: missing string field ") + key);
  return j.at(key).get<std::string>();
}

}  // namespace

json edit_to_json(const EditOp& op) {
  json j = std::visit(
      [](const auto& o) -> json {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, SetGridValue>) {
          return {{"grid", o.grid.str()}, {"row", o.row}, {"col", o.col}, {"value", o.value.str()}};
        } else if constexpr (std::is_same_v<O, DeleteElement> || std::is_same_v<O, Disconnect>) {
          return {{"id", o.id.str()}};
        } else if constexpr (std::is_same_v<O, CreateElement>) {
          json args = json::array();
          for (const auto& t : o.args) args.push_back(t.str());
          return {{"id", o.id.str()}, {"kind", kind_name(o.kind)}, {"args", args}};
        } else if constexpr (std::is_same_v<O, SetProperty>) {
          return {{"id", o.id.str()}, {"property", o.property}, {"value", o.value.str()}};
        } else if constexpr (std::is_same_v<O, Connect>) {
          return {{"id", o.id.str()}, {"source", o.source.str()}, {"target", o.target.str()}};
        } else {
          return {{"id", o.id.str()}, {"x", o.x}, {"y", o.y}, {"z", o.z}};
        }
      },
      op);
  j["op"] = edit_name(op);
  return j;
}

EditOp edit_from_json(const json& j) {
  if (!j.is_object()) throw EditError(EditError::Kind::Invalid, "edit: expected an object");
  std::string op = string_field(j, "op");
  if (op == "setGridValue")
    return SetGridValue{term_field(j, "grid"), int_field(j, "row"), int_field(j, "col"), term_field(j, "value")};
  if (op == "deleteElement") return DeleteElement{term_field(j, "id")};
  if (op == "createElement") {
    auto kind = kind_from_name(string_field(j, "kind"));
    if (!kind) throw EditError(EditError::Kind::Invalid, "edit: unknown kind " + j.at("kind").dump());
    std::vector<Term> args;
    if (j.contains("args")) {
      if (!j.at("args").is_array()) throw EditError(EditError::Kind::Invalid, "edit: args must be an array");
      for (std::size_t i = 0; i < j.at("args").size(); ++i) {
        json holder = {{"arg", j.at("args").at(i)}};
        args.push_back(term_field(holder, "arg"));
      }
    }
    return CreateElement{term_field(j, "id"), *kind, std::move(args)};
  }
  if (op == "setProperty") return SetProperty{term_field(j, "id"), string_field(j, "property"), term_field(j, "value")};
  if (op == "connect") return Connect{term_field(j, "id"), term_field(j, "source"), term_field(j, "target")};
  if (op == "disconnect") return Disconnect{term_field(j, "id")};
  if (op == "move") return MoveElement{term_field(j, "id"), int_field(j, "x"), int_field(j, "y"), int_field(j, "z")};
  throw EditError(EditError::Kind::Invalid, "edit: unknown op " + op);
}

}  // namespace kara
