#include <map>

#include "kara/scene.hpp"
#include "kara/vis.hpp"

namespace kara {
namespace {

using Code = Diagnostic::Code;

std::optional<ElementKind> element_kind(std::string_view pred) {
  if (pred == "visellipse") return ElementKind::Ellipse;
  if (pred == "visrect") return ElementKind::Rect;
  if (pred == "vispolygon") return ElementKind::Polygon;
  if (pred == "visimage") return ElementKind::Image;
  if (pred == "visline") return ElementKind::Line;
  if (pred == "visgrid") return ElementKind::Grid;
  if (pred == "visgraph") return ElementKind::Graph;
  if (pred == "vistext") return ElementKind::Text;
  if (pred == "visconnect") return ElementKind::Connection;
  return std::nullopt;
}

// Argument positions (0-based) that must be integers.
std::vector<std::size_t> integer_args(std::string_view pred) {
  if (pred == "visellipse" || pred == "visrect" || pred == "visscale") return {1, 2};
  if (pred == "vispolygon" || pred == "visposition") return {1, 2, 3};
  if (pred == "visline") return {1, 2, 3, 4, 5};
  if (pred == "visgrid") return {1, 2, 3, 4};
  if (pred == "visfillgrid") return {2, 3};
  return {};
}

// Argument positions that must name a defined element.
std::vector<std::size_t> reference_args(std::string_view pred) {
  if (pred == "vislabel" || pred == "visisnode" || pred == "visfillgrid" || pred == "vispossiblegridvalues" ||
      pred == "visleft" || pred == "visright" || pred == "visabove" || pred == "visbelow" || pred == "visinfrontof")
    return {0, 1};
  if (pred == "visconnect") return {1, 2};
  if (pred == "viscreatable") return {};
  if (pred == "visscale" || pred == "visposition" || pred == "visfontfamily" || pred == "visfontsize" ||
      pred == "visfontstyle" || pred == "viscolor" || pred == "visbackgroundcolor" || pred == "vissourcedeco" ||
      pred == "vistargetdeco" || pred == "vishide" || pred == "visdeletable" || pred == "vischangable")
    return {0};
  return {};
}

bool single_valued(std::string_view pred) {
  return pred == "vislabel" || pred == "visscale" || pred == "visposition" || pred == "visfontfamily" ||
         pred == "visfontsize" || pred == "visfontstyle" || pred == "viscolor" || pred == "visbackgroundcolor" ||
         pred == "vissourcedeco" || pred == "vistargetdeco";
}

}  // namespace

const char* diagnostic_code_name(Code code) {
  switch (code) {
    case Code::WrongArity: return "wrong-arity";
    case Code::UnknownPredicate: return "unknown-predicate";
    case Code::DanglingReference: return "dangling-reference";
    case Code::LabelTarget: return "label-target";
    case Code::NodeKind: return "node-kind";
    case Code::OutOfBounds: return "out-of-bounds";
    case Code::KindConflict: return "kind-conflict";
    case Code::NonIntegerGeometry: return "non-integer-geometry";
    case Code::DuplicateProperty: return "duplicate-property";
  }
  return "?";
}

std::string Diagnostic::str() const { return std::string(diagnostic_code_name(code)) + ": " + message; }

VisValidationError::VisValidationError(std::vector<Diagnostic> diagnostics)
    : Error([&] {
        std::string msg = "invalid visualisation atoms:";
        for (const auto& d : diagnostics) msg += "\n  " + d.str();
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate(const Interpretation& atoms) {
  std::vector<Diagnostic> out;
  auto report = [&](Code c, const Atom& a, const std::string& what) { out.push_back({c, a.str() + ": " + what}); };

  std::vector<const Atom*> vis;
  for (const auto& a : atoms) {
    if (a.strong_neg || !a.predicate.starts_with("vis")) continue;
    if (find_vis_predicate(a.predicate, a.arity())) {
      vis.push_back(&a);
      continue;
    }
    bool known_name = false;
    for (const auto& p : vis_catalog())
      if (p.name == a.predicate) {
        known_name = true;
        report(Code::WrongArity, a, "expected arity " + std::to_string(p.arity));
      }
    if (!known_name) report(Code::UnknownPredicate, a, "unknown visualisation predicate " + a.signature().str());
  }

  // Element definitions and their kinds.
  std::map<Term, std::set<ElementKind>> kinds;
  std::map<std::pair<Term, std::string>, std::vector<const Atom*>> by_pred;
  for (const Atom* a : vis) {
    if (a->args.empty()) continue;
    if (auto k = element_kind(a->predicate)) kinds[a->args[0]].insert(*k);
    by_pred[{a->args[0], a->predicate}].push_back(a);
  }
  for (const auto& [id, ks] : kinds) {
    if (ks.size() > 1) {
      std::string names;
      for (auto k : ks) names += std::string(names.empty() ? "" : ", ") + kind_name(k);
      out.push_back({Code::KindConflict, id.str() + ": defined as " + names});
    }
  }
  for (const auto& [key, list] : by_pred) {
    const auto& pred = key.second;
    bool single_def = pred != "vispolygon" && element_kind(pred).has_value();
    if ((single_def || single_valued(pred)) && list.size() > 1)
      report(Code::DuplicateProperty, *list[1], "conflicts with " + list[0]->str());
    if (pred == "vispolygon") {
      std::set<Term> orders;
      for (const Atom* a : list)
        if (!orders.insert(a->args[3]).second) report(Code::DuplicateProperty, *a, "repeated point order");
    }
  }

  auto kind_of = [&](const Term& id) -> std::optional<ElementKind> {
    auto it = kinds.find(id);
    if (it == kinds.end()) return std::nullopt;
    return *it->second.begin();
  };

  for (const Atom* a : vis) {
    const auto& p = a->predicate;
    for (std::size_t i : integer_args(p))
      if (!a->args[i].is_int()) report(Code::NonIntegerGeometry, *a, "argument " + std::to_string(i + 1) + " must be an integer");
    for (std::size_t i : reference_args(p))
      if (!kinds.contains(a->args[i]))
        report(Code::DanglingReference, *a, "no element " + a->args[i].str());

    if (p == "vislabel") {
      auto host = kind_of(a->args[0]);
      if (host && *host != ElementKind::Ellipse && *host != ElementKind::Rect && *host != ElementKind::Polygon &&
          *host != ElementKind::Connection)
        report(Code::LabelTarget, *a, std::string("labels are not supported on ") + kind_name(*host));
      auto text = kind_of(a->args[1]);
      if (text && *text != ElementKind::Text) report(Code::LabelTarget, *a, "label must be a vistext element");
    } else if (p == "visisnode") {
      auto node = kind_of(a->args[0]);
      if (node && *node != ElementKind::Rect && *node != ElementKind::Ellipse && *node != ElementKind::Polygon &&
          *node != ElementKind::Image)
        report(Code::NodeKind, *a, std::string(kind_name(*node)) + " cannot be a graph node");
      auto graph = kind_of(a->args[1]);
      if (graph && *graph != ElementKind::Graph) report(Code::NodeKind, *a, a->args[1].str() + " is not a graph");
    } else if (p == "visfillgrid") {
      auto grid_it = by_pred.find({a->args[0], "visgrid"});
      if (grid_it != by_pred.end() && a->args[2].is_int() && a->args[3].is_int()) {
        const Atom& g = *grid_it->second.front();
        if (g.args[1].is_int() && g.args[2].is_int()) {
          auto row = a->args[2].int_value(), col = a->args[3].int_value();
          if (row < 1 || row > g.args[1].int_value() || col < 1 || col > g.args[2].int_value())
            report(Code::OutOfBounds, *a,
                   "cell outside " + g.args[1].str() + "x" + g.args[2].str() + " grid " + a->args[0].str());
        }
      } else if (kinds.contains(a->args[0]) && kind_of(a->args[0]) != ElementKind::Grid) {
        report(Code::KindConflict, *a, a->args[0].str() + " is not a grid");
      }
    }
  }
  return out;
}

}  // namespace kara
