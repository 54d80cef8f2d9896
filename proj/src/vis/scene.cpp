#include <algorithm>

#include "kara/scene.hpp"

namespace kara {

const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Ellipse: return "ellipse";
    case ElementKind::Rect: return "rect";
    case ElementKind::Polygon: return "polygon";
    case ElementKind::Image: return "image";
    case ElementKind::Line: return "line";
    case ElementKind::Grid: return "grid";
    case ElementKind::Graph: return "graph";
    case ElementKind::Text: return "text";
    case ElementKind::Connection: return "connection";
  }
  return "?";
}

std::optional<ElementKind> kind_from_name(std::string_view name) {
  for (auto k : {ElementKind::Ellipse, ElementKind::Rect, ElementKind::Polygon, ElementKind::Image, ElementKind::Line,
                 ElementKind::Grid, ElementKind::Graph, ElementKind::Text, ElementKind::Connection})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Left: return "left";
    case Relation::Right: return "right";
    case Relation::Above: return "above";
    case Relation::Below: return "below";
    case Relation::InFrontOf: return "infrontof";
  }
  return "?";
}

const Element* Scene::find(const Term& id) const {
  auto it = elements.find(id);
  return it == elements.end() ? nullptr : &it->second;
}

std::set<Term> Scene::grid_templates() const {
  std::set<Term> out;
  for (const auto& f : grid_fills) out.insert(f.element);
  for (const auto& [grid, values] : possible_grid_values) out.insert(values.begin(), values.end());
  return out;
}

std::set<Term> Scene::label_texts() const {
  std::set<Term> out;
  for (const auto& [id, e] : elements)
    if (e.label) out.insert(*e.label);
  return out;
}

std::vector<const Element*> Scene::connections() const {
  std::vector<const Element*> out;
  for (const auto& [id, e] : elements)
    if (e.kind == ElementKind::Connection) out.push_back(&e);
  return out;
}

namespace {

bool all_int(const Atom& a, std::initializer_list<std::size_t> idx) {
  return std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return a.args[i].is_int(); });
}

std::int64_t I(const Atom& a, std::size_t i) { return a.args[i].int_value(); }

Atom make(const char* pred, std::vector<Term> args) { return Atom(pred, std::move(args)); }

Term num(std::int64_t v) { return Term::integer(v); }

}  // namespace

Scene build_scene(const Interpretation& vis, bool strict) {
  if (strict) {
    auto diags = validate(vis);
    if (!diags.empty()) throw VisValidationError(std::move(diags));
  }
  Scene s;
  std::vector<const Atom*> rest;
  auto add = [&](const Atom& a, ElementKind kind, Geometry g) {
    if (s.elements.contains(a.args[0])) return;
    Element e;
    e.id = a.args[0];
    e.kind = kind;
    e.geometry = std::move(g);
    s.elements.emplace(e.id, std::move(e));
  };

  for (const auto& a : vis) {
    if (a.strong_neg || !is_vis_predicate(a.signature())) continue;
    const auto& p = a.predicate;
    if (p == "visellipse" || p == "visrect") {
      if (all_int(a, {1, 2}))
        add(a, p == "visrect" ? ElementKind::Rect : ElementKind::Ellipse, BoxGeom{I(a, 1), I(a, 2)});
    } else if (p == "vispolygon") {
      if (!all_int(a, {1, 2, 3})) continue;
      add(a, ElementKind::Polygon, PolygonGeom{});
      Element& e = s.elements.at(a.args[0]);
      if (e.kind != ElementKind::Polygon) continue;
      auto& pts = std::get<PolygonGeom>(e.geometry).points;
      PolygonPoint pt{I(a, 1), I(a, 2), I(a, 3)};
      bool dup = std::any_of(pts.begin(), pts.end(), [&](const PolygonPoint& q) { return q.order == pt.order; });
      if (!dup) pts.push_back(pt);
    } else if (p == "visimage") {
      add(a, ElementKind::Image, ImageGeom{a.args[1]});
    } else if (p == "visline") {
      if (all_int(a, {1, 2, 3, 4, 5}))
        add(a, ElementKind::Line, LineGeom{I(a, 1), I(a, 2), I(a, 3), I(a, 4), I(a, 5)});
    } else if (p == "visgrid") {
      if (all_int(a, {1, 2, 3, 4})) add(a, ElementKind::Grid, GridGeom{I(a, 1), I(a, 2), I(a, 3), I(a, 4)});
    } else if (p == "visgraph") {
      add(a, ElementKind::Graph, GraphGeom{});
    } else if (p == "vistext") {
      add(a, ElementKind::Text, TextGeom{a.args[1]});
    } else if (p == "visconnect") {
      add(a, ElementKind::Connection, ConnectionGeom{a.args[1], a.args[2], std::nullopt, std::nullopt});
    } else {
      rest.push_back(&a);
    }
  }
  for (auto& [id, e] : s.elements)
    if (auto* poly = std::get_if<PolygonGeom>(&e.geometry))
      std::sort(poly->points.begin(), poly->points.end(),
                [](const PolygonPoint& x, const PolygonPoint& y) { return x.order < y.order; });

  auto element = [&](const Term& id) -> Element* {
    auto it = s.elements.find(id);
    return it == s.elements.end() ? nullptr : &it->second;
  };
  auto set_once = [](std::optional<Term>& field, const Term& v) {
    if (!field) field = v;
  };

  for (const Atom* ap : rest) {
    const Atom& a = *ap;
    const auto& p = a.predicate;
    if (p == "viscreatable") {
      s.creatable.insert(a.args[0]);
      continue;
    }
    Element* e = element(a.args[0]);
    if (!e) continue;
    if (p == "vislabel") {
      if (element(a.args[1])) set_once(e->label, a.args[1]);
    } else if (p == "visisnode") {
      if (element(a.args[1])) s.graph_membership.emplace(a.args[0], a.args[1]);
    } else if (p == "visscale") {
      if (all_int(a, {1, 2}) && !e->scale) e->scale = std::pair{I(a, 1), I(a, 2)};
    } else if (p == "visposition") {
      if (all_int(a, {1, 2, 3})) s.positions.emplace(a.args[0], Position{I(a, 1), I(a, 2), I(a, 3)});
    } else if (p == "visfontfamily") {
      set_once(e->style.font_family, a.args[1]);
    } else if (p == "visfontsize") {
      set_once(e->style.font_size, a.args[1]);
    } else if (p == "visfontstyle") {
      set_once(e->style.font_style, a.args[1]);
    } else if (p == "viscolor") {
      set_once(e->style.color, a.args[1]);
    } else if (p == "visbackgroundcolor") {
      set_once(e->style.background, a.args[1]);
    } else if (p == "visfillgrid") {
      if (e->kind == ElementKind::Grid && element(a.args[1]) && all_int(a, {2, 3}))
        s.grid_fills.insert({a.args[0], a.args[1], I(a, 2), I(a, 3)});
    } else if (p == "vissourcedeco" || p == "vistargetdeco") {
      if (auto* c = std::get_if<ConnectionGeom>(&e->geometry))
        set_once(p == "vissourcedeco" ? c->source_deco : c->target_deco, a.args[1]);
    } else if (p == "vishide") {
      e->hidden = true;
    } else if (p == "visdeletable") {
      e->affordances.deletable = true;
    } else if (p == "vischangable") {
      e->affordances.changeable.insert(a.args[1]);
    } else if (p == "vispossiblegridvalues") {
      if (element(a.args[1])) s.possible_grid_values[a.args[0]].insert(a.args[1]);
    } else {
      static const std::pair<const char*, Relation> relations[] = {
          {"visleft", Relation::Left},   {"visright", Relation::Right},         {"visabove", Relation::Above},
          {"visbelow", Relation::Below}, {"visinfrontof", Relation::InFrontOf},
      };
      for (const auto& [name, rel] : relations)
        if (p == name && element(a.args[1])) s.relative_constraints.insert({rel, a.args[0], a.args[1]});
    }
  }
  return s;
}

Interpretation scene_to_vis(const Scene& s) {
  Interpretation out;
  for (const auto& [id, e] : s.elements) {
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, BoxGeom>) {
            out.insert(make(e.kind == ElementKind::Rect ? "visrect" : "visellipse", {id, num(g.height), num(g.width)}));
          } else if constexpr (std::is_same_v<G, PolygonGeom>) {
            for (const auto& pt : g.points) out.insert(make("vispolygon", {id, num(pt.x), num(pt.y), num(pt.order)}));
          } else if constexpr (std::is_same_v<G, ImageGeom>) {
            out.insert(make("visimage", {id, g.path}));
          } else if constexpr (std::is_same_v<G, LineGeom>) {
            out.insert(make("visline", {id, num(g.x1), num(g.y1), num(g.x2), num(g.y2), num(g.z)}));
          } else if constexpr (std::is_same_v<G, GridGeom>) {
            out.insert(make("visgrid", {id, num(g.rows), num(g.cols), num(g.height), num(g.width)}));
          } else if constexpr (std::is_same_v<G, GraphGeom>) {
            out.insert(make("visgraph", {id}));
          } else if constexpr (std::is_same_v<G, TextGeom>) {
            out.insert(make("vistext", {id, g.text}));
          } else if constexpr (std::is_same_v<G, ConnectionGeom>) {
            out.insert(make("visconnect", {id, g.source, g.target}));
            if (g.source_deco) out.insert(make("vissourcedeco", {id, *g.source_deco}));
            if (g.target_deco) out.insert(make("vistargetdeco", {id, *g.target_deco}));
          }
        },
        e.geometry);
    if (e.label) out.insert(make("vislabel", {id, *e.label}));
    if (e.scale) out.insert(make("visscale", {id, num(e.scale->first), num(e.scale->second)}));
    if (e.style.color) out.insert(make("viscolor", {id, *e.style.color}));
    if (e.style.background) out.insert(make("visbackgroundcolor", {id, *e.style.background}));
    if (e.style.font_family) out.insert(make("visfontfamily", {id, *e.style.font_family}));
    if (e.style.font_size) out.insert(make("visfontsize", {id, *e.style.font_size}));
    if (e.style.font_style) out.insert(make("visfontstyle", {id, *e.style.font_style}));
    if (e.hidden) out.insert(make("vishide", {id}));
    if (e.affordances.deletable) out.insert(make("visdeletable", {id}));
    for (const auto& prop : e.affordances.changeable) out.insert(make("vischangable", {id, prop}));
  }
  for (const auto& f : s.grid_fills) out.insert(make("visfillgrid", {f.grid, f.element, num(f.row), num(f.col)}));
  for (const auto& [node, graph] : s.graph_membership) out.insert(make("visisnode", {node, graph}));
  for (const auto& [grid, values] : s.possible_grid_values)
    for (const auto& v : values) out.insert(make("vispossiblegridvalues", {grid, v}));
  for (const auto& [id, pos] : s.positions) out.insert(make("visposition", {id, num(pos.x), num(pos.y), num(pos.z)}));
  for (const auto& c : s.relative_constraints)
    out.insert(make((std::string("vis") + relation_name(c.relation)).c_str(), {c.a, c.b}));
  for (const auto& id : s.creatable) out.insert(make("viscreatable", {id}));
  return out;
}

}  // namespace kara
