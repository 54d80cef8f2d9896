#include "kara/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace kara {

std::string format_number(double value) {
  double r = std::round(value * 100.0) / 100.0;
  if (r == 0) r = 0;  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", r);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string N(double v) { return format_number(v); }

std::string attr(const char* name, const std::string& value) { return std::string(" ") + name + "=\"" + escape(value) + "\""; }

std::string colour(const std::optional<Term>& t, const char* fallback) { return t ? t->text() : fallback; }

enum Layer { kConnections = 0, kShapes = 1, kLabels = 2 };

struct Item {
  std::int64_t z;
  int layer;
  Term id;
  std::size_t sub;
  std::string markup;
};

// Decorations with a marker definition; anything else is drawn without one.
bool known_deco(const std::string& d) { return d == "arrow" || d == "circle" || d == "diamond"; }

std::string marker_def(const std::string& deco, bool start) {
  std::string id = "kara-" + deco + (start ? "-start" : "-end");
  std::string head = "<marker id=\"" + id +
                     "\" viewBox=\"0 0 10 10\" refX=\"" + (start ? "0" : "10") +
                     "\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">";
  std::string body;
  if (deco == "arrow")
    body = start ? "<path d=\"M 10 0 L 0 5 L 10 10 z\"/>" : "<path d=\"M 0 0 L 10 5 L 0 10 z\"/>";
  else if (deco == "circle")
    body = "<circle cx=\"5\" cy=\"5\" r=\"4\"/>";
  else
    body = "<path d=\"M 0 5 L 5 0 L 10 5 L 5 10 z\"/>";
  return head + body + "</marker>";
}

class Renderer {
 public:
  Renderer(const Scene& scene, const LayoutResult& layout) : s_(scene), l_(layout) {}

  std::string run() {
    auto templates = s_.grid_templates();
    auto labels = s_.label_texts();
    for (const auto& [id, e] : s_.elements) {
      if (e.hidden) continue;
      auto c = l_.coords.find(id);
      if (c == l_.coords.end()) continue;
      if (e.kind == ElementKind::Connection) {
        connection(e, c->second);
      } else if (e.kind == ElementKind::Text && labels.contains(id)) {
        if (!host_hidden(id)) add(c->second.z, kLabels, id, 0, shape(e, c->second.x, c->second.y, size(id)));
      } else if (e.kind != ElementKind::Graph && e.kind != ElementKind::Grid && !templates.contains(id)) {
        add(c->second.z, kShapes, id, 0, shape(e, c->second.x, c->second.y, size(id)));
      }
    }
    std::size_t n = 0;
    for (const auto& cell : l_.cells) {
      ++n;
      const Element* grid = s_.find(cell.fill.grid);
      const Element* content = s_.find(cell.fill.element);
      if (!grid || !content || grid->hidden || content->hidden) continue;
      auto gc = l_.coords.find(cell.fill.grid);
      if (gc == l_.coords.end()) continue;
      add(gc->second.z, kShapes, cell.fill.grid, n, shape(*content, cell.x, cell.y, {cell.width, cell.height}));
    }
    std::stable_sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
      if (a.z != b.z) return a.z < b.z;
      if (a.layer != b.layer) return a.layer < b.layer;
      if (a.id != b.id) return a.id < b.id;
      return a.sub < b.sub;
    });

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\""
        << attr("width", N(l_.width)) << attr("height", N(l_.height))
        << attr("viewBox", "0 0 " + N(l_.width) + " " + N(l_.height));
    if (items_.empty()) {
      out << "/>\n";
      return out.str();
    }
    out << ">\n";
    if (!markers_.empty()) {
      out << "<defs>\n";
      for (const auto& [deco, start] : markers_) out << marker_def(deco, start) << "\n";
      out << "</defs>\n";
    }
    for (const auto& item : items_) out << item.markup << "\n";
    out << "</svg>\n";
    return out.str();
  }

 private:
  Size size(const Term& id) const {
    auto it = l_.sizes.find(id);
    return it == l_.sizes.end() ? Size{} : it->second;
  }

  bool host_hidden(const Term& label) const {
    for (const auto& [id, e] : s_.elements)
      if (e.label == label && e.hidden) return true;
    return false;
  }

  void add(std::int64_t z, int layer, const Term& id, std::size_t sub, std::string markup) {
    if (!markup.empty()) items_.push_back({z, layer, id, sub, std::move(markup)});
  }

  std::string shape(const Element& e, double x, double y, Size sz) const {
    const Style& st = e.style;
    std::string fill = attr("fill", colour(st.background, kDefaultBackground));
    std::string stroke = attr("stroke", colour(st.color, kDefaultColor));
    switch (e.kind) {
      case ElementKind::Rect:
        return "<rect" + attr("x", N(x)) + attr("y", N(y)) + attr("width", N(sz.width)) + attr("height", N(sz.height)) +
               fill + stroke + "/>";
      case ElementKind::Ellipse:
        return "<ellipse" + attr("cx", N(x + sz.width / 2)) + attr("cy", N(y + sz.height / 2)) +
               attr("rx", N(sz.width / 2)) + attr("ry", N(sz.height / 2)) + fill + stroke + "/>";
      case ElementKind::Polygon: {
        const auto& pts = std::get<PolygonGeom>(e.geometry).points;
        std::int64_t minx = 0, miny = 0, maxx = 0, maxy = 0;
        for (const auto& p : pts) {
          minx = std::min(minx, p.x);
          miny = std::min(miny, p.y);
          maxx = std::max(maxx, p.x);
          maxy = std::max(maxy, p.y);
        }
        double sx = maxx > minx ? sz.width / static_cast<double>(maxx - minx) : 1;
        double sy = maxy > miny ? sz.height / static_cast<double>(maxy - miny) : 1;
        std::string points;
        for (const auto& p : pts) {
          if (!points.empty()) points += ' ';
          points += N(x + static_cast<double>(p.x - minx) * sx) + "," + N(y + static_cast<double>(p.y - miny) * sy);
        }
        return "<polygon" + attr("points", points) + fill + stroke + "/>";
      }
      case ElementKind::Image:
        return "<image" + attr("x", N(x)) + attr("y", N(y)) + attr("width", N(sz.width)) + attr("height", N(sz.height)) +
               attr("xlink:href", std::get<ImageGeom>(e.geometry).path.text()) + "/>";
      case ElementKind::Line: {
        const auto& g = std::get<LineGeom>(e.geometry);
        return "<line" + attr("x1", N(static_cast<double>(g.x1))) + attr("y1", N(static_cast<double>(g.y1))) +
               attr("x2", N(static_cast<double>(g.x2))) + attr("y2", N(static_cast<double>(g.y2))) + stroke + "/>";
      }
      case ElementKind::Text: {
        std::string font = attr("font-family", st.font_family ? st.font_family->text() : kDefaultFontFamily);
        std::int64_t fs = st.font_size && st.font_size->is_int() ? st.font_size->int_value() : kDefaultFontSize;
        font += attr("font-size", std::to_string(fs));
        if (st.font_style) {
          auto style = st.font_style->text();
          if (style == "bold") font += attr("font-weight", "bold");
          if (style == "italic") font += attr("font-style", "italic");
        }
        return "<text" + attr("x", N(x + sz.width / 2)) + attr("y", N(y + sz.height / 2)) +
               attr("text-anchor", "middle") + attr("dominant-baseline", "central") +
               attr("fill", colour(st.color, kDefaultColor)) + font + ">" +
               escape(std::get<TextGeom>(e.geometry).text.text()) + "</text>";
      }
      case ElementKind::Grid:
      case ElementKind::Graph:
      case ElementKind::Connection: break;
    }
    return {};
  }

  // Point where the ray from the box centre towards (tx, ty) leaves the box.
  static std::pair<double, double> clip(const Coord& c, Size sz, double tx, double ty) {
    double cx = c.x + sz.width / 2, cy = c.y + sz.height / 2;
    double dx = tx - cx, dy = ty - cy;
    double t = 1;
    if (dx != 0) t = std::min(t, sz.width / 2 / std::abs(dx));
    if (dy != 0) t = std::min(t, sz.height / 2 / std::abs(dy));
    return {cx + dx * t, cy + dy * t};
  }

  void connection(const Element& e, const Coord& at) {
    const auto& g = std::get<ConnectionGeom>(e.geometry);
    auto a = l_.coords.find(g.source), b = l_.coords.find(g.target);
    if (a == l_.coords.end() || b == l_.coords.end()) return;
    const Element* src = s_.find(g.source);
    const Element* dst = s_.find(g.target);
    if ((src && src->hidden) || (dst && dst->hidden)) return;
    Size sa = size(g.source), sb = size(g.target);
    double acx = a->second.x + sa.width / 2, acy = a->second.y + sa.height / 2;
    double bcx = b->second.x + sb.width / 2, bcy = b->second.y + sb.height / 2;
    auto [x1, y1] = clip(a->second, sa, bcx, bcy);
    auto [x2, y2] = clip(b->second, sb, acx, acy);
    std::string markup = "<path" + attr("d", "M " + N(x1) + " " + N(y1) + " L " + N(x2) + " " + N(y2)) +
                         attr("fill", "none") + attr("stroke", colour(e.style.color, kDefaultColor));
    if (g.source_deco && known_deco(g.source_deco->text())) {
      markers_.insert({g.source_deco->text(), true});
      markup += attr("marker-start", "url(#kara-" + g.source_deco->text() + "-start)");
    }
    if (g.target_deco && known_deco(g.target_deco->text())) {
      markers_.insert({g.target_deco->text(), false});
      markup += attr("marker-end", "url(#kara-" + g.target_deco->text() + "-end)");
    }
    add(at.z, kConnections, e.id, 0, markup + "/>");
  }

  const Scene& s_;
  const LayoutResult& l_;
  std::vector<Item> items_;
  std::set<std::pair<std::string, bool>> markers_;
};

}  // namespace

std::string render_svg(const Scene& scene, const LayoutResult& layout) { return Renderer(scene, layout).run(); }

}  // namespace kara
