#include "kara/scene_json.hpp"

#include "kara/parser.hpp"

namespace kara {

using nlohmann::json;

namespace {

json term(const Term& t) { return t.str(); }

json opt_term(const std::optional<Term>& t) { return t ? json(t->str()) : json(nullptr); }

Term to_term(const json& j) {
  if (!j.is_string()) throw Error("scene json: expected a term string, got " + j.dump());
  return parse_term(j.get<std::string>());
}

std::optional<Term> to_opt_term(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return to_term(j.at(key));
}

std::int64_t num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw Error(std::string("scene json: missing integer ") + key);
  return j.at(key).get<std::int64_t>();
}

json style_json(const Style& s) {
  return {{"color", opt_term(s.color)},
          {"background", opt_term(s.background)},
          {"fontFamily", opt_term(s.font_family)},
          {"fontSize", opt_term(s.font_size)},
          {"fontStyle", opt_term(s.font_style)}};
}

Style style_from(const json& j) {
  Style s;
  if (!j.is_object()) return s;
  s.color = to_opt_term(j, "color");
  s.background = to_opt_term(j, "background");
  s.font_family = to_opt_term(j, "fontFamily");
  s.font_size = to_opt_term(j, "fontSize");
  s.font_style = to_opt_term(j, "fontStyle");
  return s;
}

json affordances_json(const Affordances& a) {
  json changeable = json::array();
  for (const auto& p : a.changeable) changeable.push_back(term(p));
  return {{"deletable", a.deletable}, {"changeable", changeable}};
}

Affordances affordances_from(const json& j) {
  Affordances a;
  if (!j.is_object()) return a;
  a.deletable = j.value("deletable", false);
  if (j.contains("changeable"))
    for (const auto& p : j.at("changeable")) a.changeable.insert(to_term(p));
  return a;
}

json geometry_json(const Element& e) {
  return std::visit(
      [](const auto& g) -> json {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, BoxGeom>) {
          return {{"height", g.height}, {"width", g.width}};
        } else if constexpr (std::is_same_v<G, PolygonGeom>) {
          json pts = json::array();
          for (const auto& p : g.points) pts.push_back({{"x", p.x}, {"y", p.y}, {"order", p.order}});
          return {{"points", pts}};
        } else if constexpr (std::is_same_v<G, ImageGeom>) {
          return {{"path", term(g.path)}};
        } else if constexpr (std::is_same_v<G, LineGeom>) {
          return {{"x1", g.x1}, {"y1", g.y1}, {"x2", g.x2}, {"y2", g.y2}, {"z", g.z}};
        } else if constexpr (std::is_same_v<G, GridGeom>) {
          return {{"rows", g.rows}, {"cols", g.cols}, {"height", g.height}, {"width", g.width}};
        } else if constexpr (std::is_same_v<G, TextGeom>) {
          return {{"text", term(g.text)}};
        } else if constexpr (std::is_same_v<G, ConnectionGeom>) {
          return {{"source", term(g.source)},
                  {"target", term(g.target)},
                  {"sourceDeco", opt_term(g.source_deco)},
                  {"targetDeco", opt_term(g.target_deco)}};
        } else {
          return json::object();
        }
      },
      e.geometry);
}

Geometry geometry_from(ElementKind kind, const json& g) {
  switch (kind) {
    case ElementKind::Ellipse:
    case ElementKind::Rect: return BoxGeom{num(g, "height"), num(g, "width")};
    case ElementKind::Polygon: {
      PolygonGeom p;
      for (const auto& pt : g.at("points")) p.points.push_back({num(pt, "x"), num(pt, "y"), num(pt, "order")});
      return p;
    }
    case ElementKind::Image: return ImageGeom{to_term(g.at("path"))};
    case ElementKind::Line: return LineGeom{num(g, "x1"), num(g, "y1"), num(g, "x2"), num(g, "y2"), num(g, "z")};
    case ElementKind::Grid: return GridGeom{num(g, "rows"), num(g, "cols"), num(g, "height"), num(g, "width")};
    case ElementKind::Graph: return GraphGeom{};
    case ElementKind::Text: return TextGeom{to_term(g.at("text"))};
    case ElementKind::Connection:
      return ConnectionGeom{to_term(g.at("source")), to_term(g.at("target")), to_opt_term(g, "sourceDeco"),
                            to_opt_term(g, "targetDeco")};
  }
  return GraphGeom{};
}

json element_json(const Element& e) {
  json j = {{"id", term(e.id)},
            {"kind", kind_name(e.kind)},
            {"geometry", geometry_json(e)},
            {"style", style_json(e.style)},
            {"hidden", e.hidden},
            {"label", opt_term(e.label)},
            {"scale", e.scale ? json::array({e.scale->first, e.scale->second}) : json(nullptr)},
            {"affordances", affordances_json(e.affordances)}};
  return j;
}

Element element_from(const json& j) {
  Element e;
  e.id = to_term(j.at("id"));
  auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw Error("scene json: unknown element kind " + j.at("kind").dump());
  e.kind = *kind;
  e.geometry = geometry_from(e.kind, j.contains("geometry") ? j.at("geometry") : json::object());
  e.style = style_from(j.value("style", json::object()));
  e.hidden = j.value("hidden", false);
  e.label = to_opt_term(j, "label");
  if (j.contains("scale") && j.at("scale").is_array())
    e.scale = std::pair{j.at("scale").at(0).get<std::int64_t>(), j.at("scale").at(1).get<std::int64_t>()};
  e.affordances = affordances_from(j.value("affordances", json::object()));
  return e;
}

}  // namespace

json layout_to_json(const LayoutResult& l) {
  json coords = json::object();
  for (const auto& [id, c] : l.coords) {
    auto sz = l.sizes.find(id);
    json entry = {{"x", c.x}, {"y", c.y}, {"z", c.z}};
    if (sz != l.sizes.end()) {
      entry["width"] = sz->second.width;
      entry["height"] = sz->second.height;
    }
    coords[id.str()] = entry;
  }
  json cells = json::array();
  for (const auto& c : l.cells)
    cells.push_back({{"grid", term(c.fill.grid)},
                     {"element", term(c.fill.element)},
                     {"row", c.fill.row},
                     {"col", c.fill.col},
                     {"x", c.x},
                     {"y", c.y},
                     {"width", c.width},
                     {"height", c.height}});
  return {{"width", l.width}, {"height", l.height}, {"coords", coords}, {"cells", cells}, {"diagnostics", l.diagnostics}};
}

json scene_to_json(const Scene& s, const LayoutResult* layout) {
  json elements = json::array(), connections = json::array(), graphs = json::array();
  for (const auto& [id, e] : s.elements) {
    if (e.kind == ElementKind::Connection) connections.push_back(element_json(e));
    else elements.push_back(element_json(e));
    if (e.kind == ElementKind::Graph) {
      json nodes = json::array();
      for (const auto& [node, graph] : s.graph_membership)
        if (graph == id) nodes.push_back(term(node));
      graphs.push_back({{"id", term(id)}, {"nodes", nodes}});
    }
  }
  json fills = json::array();
  for (const auto& f : s.grid_fills)
    fills.push_back({{"grid", term(f.grid)}, {"element", term(f.element)}, {"row", f.row}, {"col", f.col}});
  json constraints = json::array();
  for (const auto& c : s.relative_constraints)
    constraints.push_back({{"relation", relation_name(c.relation)}, {"a", term(c.a)}, {"b", term(c.b)}});
  json positions = json::array();
  for (const auto& [id, p] : s.positions) positions.push_back({{"id", term(id)}, {"x", p.x}, {"y", p.y}, {"z", p.z}});
  json values = json::object();
  for (const auto& [grid, vs] : s.possible_grid_values) {
    json list = json::array();
    for (const auto& v : vs) list.push_back(term(v));
    values[grid.str()] = list;
  }
  json creatable = json::array();
  for (const auto& c : s.creatable) creatable.push_back(term(c));

  json j = {{"elements", elements},       {"gridFills", fills},           {"connections", connections},
            {"graphs", graphs},           {"constraints", constraints},   {"positions", positions},
            {"possibleGridValues", values}, {"creatable", creatable}};
  if (layout) j["layout"] = layout_to_json(*layout);
  return j;
}

Scene scene_from_json(const json& j) {
  if (!j.is_object()) throw Error("scene json: expected an object");
  Scene s;
  try {
    for (const char* key : {"elements", "connections"})
      if (j.contains(key))
        for (const auto& e : j.at(key)) {
          Element el = element_from(e);
          s.elements.emplace(el.id, std::move(el));
        }
    if (j.contains("graphs"))
      for (const auto& g : j.at("graphs")) {
        Term gid = to_term(g.at("id"));
        for (const auto& n : g.at("nodes")) s.graph_membership.emplace(to_term(n), gid);
      }
    if (j.contains("gridFills"))
      for (const auto& f : j.at("gridFills"))
        s.grid_fills.insert({to_term(f.at("grid")), to_term(f.at("element")), num(f, "row"), num(f, "col")});
    if (j.contains("constraints"))
      for (const auto& c : j.at("constraints")) {
        std::string rel = c.at("relation").get<std::string>();
        bool found = false;
        for (auto r : {Relation::Left, Relation::Right, Relation::Above, Relation::Below, Relation::InFrontOf})
          if (rel == relation_name(r)) {
            s.relative_constraints.insert({r, to_term(c.at("a")), to_term(c.at("b"))});
            found = true;
          }
        if (!found) throw Error("scene json: unknown relation " + rel);
      }
    if (j.contains("positions"))
      for (const auto& p : j.at("positions"))
        s.positions[to_term(p.at("id"))] = Position{num(p, "x"), num(p, "y"), num(p, "z")};
    if (j.contains("possibleGridValues"))
      for (const auto& [grid, vs] : j.at("possibleGridValues").items())
        for (const auto& v : vs) s.possible_grid_values[parse_term(grid)].insert(to_term(v));
    if (j.contains("creatable"))
      for (const auto& c : j.at("creatable")) s.creatable.insert(to_term(c));
  } catch (const json::exception& e) {
    throw Error(std::string("scene json: ") + e.what());
  }
  return s;
}

}  // namespace kara
