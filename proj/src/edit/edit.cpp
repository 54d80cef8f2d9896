#include <algorithm>
#include <cctype>
#include <functional>

#include "kara/edit.hpp"

namespace kara {
namespace {

using Kind = EditError::Kind;

const char* element_predicate(ElementKind k) {
  switch (k) {
    case ElementKind::Ellipse: return "visellipse";
    case ElementKind::Rect: return "visrect";
    case ElementKind::Polygon: return "vispolygon";
    case ElementKind::Image: return "visimage";
    case ElementKind::Line: return "visline";
    case ElementKind::Grid: return "visgrid";
    case ElementKind::Graph: return "visgraph";
    case ElementKind::Text: return "vistext";
    case ElementKind::Connection: return "visconnect";
  }
  return "";
}

bool is_element_atom(const Atom& a) {
  static const std::set<std::string> names{"visellipse", "visrect", "vispolygon", "visimage", "visline",
                                           "visgrid",    "visgraph", "vistext",  "visconnect"};
  return !a.strong_neg && !a.args.empty() && names.contains(a.predicate);
}

bool exists(const Interpretation& vis, const Term& id) {
  return std::any_of(vis.begin(), vis.end(), [&](const Atom& a) { return is_element_atom(a) && a.args[0] == id; });
}

bool has(const Interpretation& vis, const char* pred, std::vector<Term> args) { return vis.contains(Atom(pred, std::move(args))); }

void require_element(const Interpretation& vis, const Term& id) {
  if (!exists(vis, id)) throw EditError(Kind::UnknownId, "no element " + id.str());
}

// First atom pred(id, ...) if any.
const Atom* find_atom(const Interpretation& vis, const std::string& pred, const Term& id) {
  for (const auto& a : vis)
    if (a.predicate == pred && !a.strong_neg && !a.args.empty() && a.args[0] == id) return &a;
  return nullptr;
}

void erase_where(Interpretation& vis, const std::function<bool(const Atom&)>& pred) {
  std::vector<Atom> doomed;
  for (const auto& a : vis)
    if (pred(a)) doomed.push_back(a);
  for (const auto& a : doomed) vis.erase(a);
}

bool is_affordance(const std::string& pred) {
  return pred == "visdeletable" || pred == "viscreatable" || pred == "vischangable";
}

// Atoms removed when deleting `id`: everything mentioning it or a connection
// attached to it, except the affordances of the deleted ids themselves.
std::set<Atom> deletion(const Interpretation& vis, const Term& id) {
  std::set<Term> ids{id};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& a : vis)
      if (a.predicate == "visconnect" && a.arity() == 3 && (ids.contains(a.args[1]) || ids.contains(a.args[2])))
        grew |= ids.insert(a.args[0]).second;
  }
  std::set<Atom> out;
  for (const auto& a : vis) {
    if (is_affordance(a.predicate) && !a.args.empty() && ids.contains(a.args[0])) continue;
    if (std::any_of(a.args.begin(), a.args.end(), [&](const Term& t) { return ids.contains(t); })) out.insert(a);
  }
  return out;
}

const Atom& grid_atom(const Interpretation& vis, const Term& grid) {
  const Atom* g = find_atom(vis, "visgrid", grid);
  if (!g || g->arity() != 5) throw EditError(Kind::UnknownId, "no grid " + grid.str());
  return *g;
}

const Atom* fill_at(const Interpretation& vis, const SetGridValue& op) {
  for (const auto& a : vis)
    if (a.predicate == "visfillgrid" && a.arity() == 4 && a.args[0] == op.grid && a.args[2] == Term::integer(op.row) &&
        a.args[3] == Term::integer(op.col))
      return &a;
  return nullptr;
}

struct Applier {
  Interpretation vis;

  void operator()(const SetGridValue& op) {
    const Atom& g = grid_atom(vis, op.grid);
    bool in_bounds = g.args[1].is_int() && g.args[2].is_int() && op.row >= 1 && op.col >= 1 &&
                     op.row <= g.args[1].int_value() && op.col <= g.args[2].int_value();
    if (!in_bounds)
      throw EditError(Kind::Invalid, "cell (" + std::to_string(op.row) + "," + std::to_string(op.col) +
                                         ") is outside grid " + op.grid.str());
    if (!has(vis, "vispossiblegridvalues", {op.grid, op.value}))
      throw EditError(Kind::Affordance, op.value.str() + " is not a possible value of grid " + op.grid.str());
    erase_where(vis, [&](const Atom& a) {
      return a.predicate == "visfillgrid" && a.arity() == 4 && a.args[0] == op.grid &&
             a.args[2] == Term::integer(op.row) && a.args[3] == Term::integer(op.col);
    });
    vis.insert(Atom("visfillgrid", {op.grid, op.value, Term::integer(op.row), Term::integer(op.col)}));
  }

  void remove(const Term& id) {
    for (const auto& a : deletion(vis, id)) vis.erase(a);
  }

  void operator()(const DeleteElement& op) {
    require_element(vis, op.id);
    if (!has(vis, "visdeletable", {op.id})) throw EditError(Kind::Affordance, op.id.str() + " is not deletable");
    remove(op.id);
  }

  void operator()(const CreateElement& op) {
    if (!has(vis, "viscreatable", {op.id})) throw EditError(Kind::Affordance, op.id.str() + " is not creatable");
    if (exists(vis, op.id)) throw EditError(Kind::Invalid, "element " + op.id.str() + " already exists");
    if (op.kind == ElementKind::Connection) throw EditError(Kind::Invalid, "connections are created with connect");
    for (const auto& t : op.args)
      if (!t.is_ground()) throw EditError(Kind::Invalid, "argument " + t.str() + " is not ground");
    const char* pred = element_predicate(op.kind);
    if (op.kind == ElementKind::Polygon) {
      if (op.args.empty() || op.args.size() % 3 != 0)
        throw EditError(Kind::Invalid, "polygon arguments must be (x, y, order) triples");
      for (std::size_t i = 0; i < op.args.size(); i += 3)
        vis.insert(Atom(pred, {op.id, op.args[i], op.args[i + 1], op.args[i + 2]}));
      return;
    }
    std::size_t arity = find_vis_predicate(pred, op.args.size() + 1) ? op.args.size() + 1 : 0;
    if (arity == 0) throw EditError(Kind::Invalid, std::string("wrong number of arguments for ") + pred);
    std::vector<Term> args{op.id};
    args.insert(args.end(), op.args.begin(), op.args.end());
    vis.insert(Atom(pred, std::move(args)));
  }

  void operator()(const SetProperty& op) {
    auto pred = property_predicate(op.property);
    if (!pred) throw EditError(Kind::Invalid, "unknown property " + op.property);
    require_element(vis, op.id);
    if (!op.value.is_ground()) throw EditError(Kind::Invalid, "value " + op.value.str() + " is not ground");
    Term name = Term::symbol(pred->substr(3));
    if (!has(vis, "vischangable", {op.id, name}))
      throw EditError(Kind::Affordance, "property " + name.str() + " of " + op.id.str() + " is not changeable");
    erase_where(vis, [&](const Atom& a) { return a.predicate == *pred && a.arity() == 2 && a.args[0] == op.id; });
    vis.insert(Atom(*pred, {op.id, op.value}));
  }

  void operator()(const Connect& op) {
    if (!has(vis, "viscreatable", {op.id})) throw EditError(Kind::Affordance, op.id.str() + " is not creatable");
    if (exists(vis, op.id)) throw EditError(Kind::Invalid, "element " + op.id.str() + " already exists");
    require_element(vis, op.source);
    require_element(vis, op.target);
    vis.insert(Atom("visconnect", {op.id, op.source, op.target}));
  }

  void operator()(const Disconnect& op) {
    if (!find_atom(vis, "visconnect", op.id)) throw EditError(Kind::UnknownId, "no connection " + op.id.str());
    if (!has(vis, "visdeletable", {op.id})) throw EditError(Kind::Affordance, op.id.str() + " is not deletable");
    remove(op.id);
  }

  void operator()(const MoveElement& op) {
    require_element(vis, op.id);
    erase_where(vis, [&](const Atom& a) { return a.predicate == "visposition" && a.arity() == 4 && a.args[0] == op.id; });
    vis.insert(Atom("visposition", {op.id, Term::integer(op.x), Term::integer(op.y), Term::integer(op.z)}));
  }
};

}  // namespace

std::optional<std::string> property_predicate(std::string_view property) {
  std::string name;
  for (char c : property)
    if (std::isalnum(static_cast<unsigned char>(c))) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::set<std::string> known{"color",     "backgroundcolor", "fontfamily", "fontsize",
                                           "fontstyle", "sourcedeco",      "targetdeco"};
  if (!known.contains(name)) return std::nullopt;
  return "vis" + name;
}

Interpretation apply_edit(const Interpretation& vis, const EditOp& op) {
  Applier applier{vis};
  std::visit(applier, op);
  return std::move(applier.vis);
}

std::optional<EditOp> inverse_edit(const Interpretation& vis, const EditOp& op) {
  return std::visit(
      [&](const auto& o) -> std::optional<EditOp> {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, SetGridValue>) {
          const Atom* old = fill_at(vis, o);
          if (!old) return std::nullopt;
          return SetGridValue{o.grid, o.row, o.col, old->args[1]};
        } else if constexpr (std::is_same_v<O, SetProperty>) {
          auto pred = property_predicate(o.property);
          const Atom* old = pred ? find_atom(vis, *pred, o.id) : nullptr;
          if (!old) return std::nullopt;
          return SetProperty{o.id, o.property, old->args[1]};
        } else if constexpr (std::is_same_v<O, MoveElement>) {
          const Atom* old = find_atom(vis, "visposition", o.id);
          if (!old || old->arity() != 4 || !old->args[1].is_int() || !old->args[2].is_int() || !old->args[3].is_int())
            return std::nullopt;
          return MoveElement{o.id, old->args[1].int_value(), old->args[2].int_value(), old->args[3].int_value()};
        } else if constexpr (std::is_same_v<O, CreateElement>) {
          if (!has(vis, "visdeletable", {o.id})) return std::nullopt;
          return DeleteElement{o.id};
        } else if constexpr (std::is_same_v<O, Connect>) {
          if (!has(vis, "visdeletable", {o.id})) return std::nullopt;
          return Disconnect{o.id};
        } else {
          // Deletion is reversible only if nothing but the element atom goes.
          auto removed = deletion(vis, o.id);
          if (removed.size() != 1 || !has(vis, "viscreatable", {o.id})) return std::nullopt;
          const Atom& a = *removed.begin();
          if (a.predicate == "visconnect") return Connect{o.id, a.args[1], a.args[2]};
          if (!is_element_atom(a) || a.predicate == "vispolygon") return std::nullopt;
          auto kind = kind_from_name(a.predicate.substr(3));
          if (!kind) return std::nullopt;
          return CreateElement{o.id, *kind, std::vector<Term>(a.args.begin() + 1, a.args.end())};
        }
      },
      op);
}

std::string edit_name(const EditOp& op) {
  static const char* names[] = {"setGridValue", "deleteElement", "createElement", "setProperty",
                                "connect",      "disconnect",    "move"};
  return names[op.index()];
}

void EditLog::apply(const EditOp& op) {
  current_ = apply_edit(current_, op);
  edits_.push_back(op);
}

bool EditLog::undo() {
  if (edits_.empty()) return false;
  edits_.pop_back();
  Interpretation vis = base_;
  for (const auto& op : edits_) vis = apply_edit(vis, op);
  current_ = std::move(vis);
  return true;
}

}  // namespace kara
