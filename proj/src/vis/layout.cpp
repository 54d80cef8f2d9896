#include "kara/layout.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace kara {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // std::uniform_real_distribution is implementation defined; this is not.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

double font_size(const Element& e) {
  if (e.style.font_size && e.style.font_size->is_int()) return static_cast<double>(e.style.font_size->int_value());
  return kDefaultFontSize;
}


}  // namespace

Size element_size(const Scene&, const Element& e, const LayoutOptions& options) {
  switch (e.kind) {
    case ElementKind::Ellipse:
    case ElementKind::Rect: {
      const auto& g = std::get<BoxGeom>(e.geometry);
      return {static_cast<double>(g.width), static_cast<double>(g.height)};
    }
    case ElementKind::Polygon: {
      const auto& g = std::get<PolygonGeom>(e.geometry);
      std::int64_t minx = 0, miny = 0, maxx = 0, maxy = 0;
      for (const auto& p : g.points) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
        maxx = std::max(maxx, p.x);
        maxy = std::max(maxy, p.y);
      }
      return {static_cast<double>(maxx - minx), static_cast<double>(maxy - miny)};
    }
    case ElementKind::Image:
      if (e.scale) return {static_cast<double>(e.scale->second), static_cast<double>(e.scale->first)};
      return {options.default_image_size, options.default_image_size};
    case ElementKind::Line: {
      const auto& g = std::get<LineGeom>(e.geometry);
      return {static_cast<double>(std::llabs(g.x2 - g.x1)), static_cast<double>(std::llabs(g.y2 - g.y1))};
    }
    case ElementKind::Grid: {
      const auto& g = std::get<GridGeom>(e.geometry);
      return {static_cast<double>(g.width), static_cast<double>(g.height)};
    }
    case ElementKind::Text: {
      double fs = font_size(e);
      auto text = std::get<TextGeom>(e.geometry).text.text();
      return {0.6 * fs * static_cast<double>(text.size()), fs};
    }
    case ElementKind::Graph:
    case ElementKind::Connection: return {0, 0};
  }
  return {0, 0};
}

namespace {

class Layouter {
 public:
  Layouter(const Scene& scene, std::uint64_t seed, const LayoutOptions& options)
      : s_(scene), opt_(options), rng_(seed) {}

  LayoutResult run() {
    templates_ = s_.grid_templates();
    labels_ = s_.label_texts();
    for (const auto& [id, e] : s_.elements) sizes_[id] = element_size(s_, e, opt_);

    place_fixed();
    place_graphs();
    place_free();
    enforce_constraints();
    place_dependents();
    place_cells();
    finish();
    return std::move(out_);
  }

 private:
  bool standalone(const Element& e) const {
    if (e.kind == ElementKind::Graph || e.kind == ElementKind::Connection) return false;
    if (templates_.contains(e.id)) return false;
    if (e.kind == ElementKind::Text && labels_.contains(e.id)) return false;
    return true;
  }

  bool fixed(const Term& id) const { return fixed_.contains(id); }

  void place_fixed() {
    for (const auto& [id, e] : s_.elements) {
      if (!standalone(e)) continue;
      if (e.kind == ElementKind::Line) {
        const auto& g = std::get<LineGeom>(e.geometry);
        out_.coords[id] = {static_cast<double>(std::min(g.x1, g.x2)), static_cast<double>(std::min(g.y1, g.y2)), g.z};
        fixed_.insert(id);
      } else if (auto it = s_.positions.find(id); it != s_.positions.end()) {
        out_.coords[id] = {static_cast<double>(it->second.x), static_cast<double>(it->second.y), it->second.z};
        fixed_.insert(id);
      }
    }
  }

  // Fruchterman-Reingold on the members of each graph; fixed members act as anchors.
  void place_graphs() {
    double offset_x = 0;
    for (const auto& [gid, g] : s_.elements) {
      if (g.kind != ElementKind::Graph) continue;
      std::vector<Term> nodes;
      for (const auto& [node, graph] : s_.graph_membership) {
        const Element* e = s_.find(node);
        if (graph != gid || !e || !standalone(*e) || (out_.coords.contains(node) && !fixed(node))) continue;
        if (std::find(nodes.begin(), nodes.end(), node) == nodes.end()) nodes.push_back(node);
      }
      if (nodes.empty()) continue;
      const std::size_t m = nodes.size();
      double side = 120.0 * std::ceil(std::sqrt(static_cast<double>(m))) + 60.0;
      double aw = std::min(opt_.canvas_width - offset_x, side);
      double ah = std::min(opt_.canvas_height, side);
      aw = std::max(aw, 60.0);
      double k = std::sqrt(aw * ah / static_cast<double>(m));

      std::map<Term, std::size_t> index;
      for (std::size_t i = 0; i < m; ++i) index[nodes[i]] = i;
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (const Element* c : s_.connections()) {
        const auto& cg = std::get<ConnectionGeom>(c->geometry);
        auto a = index.find(cg.source), b = index.find(cg.target);
        if (a != index.end() && b != index.end() && a->second != b->second) edges.emplace_back(a->second, b->second);
      }

      std::vector<double> px(m), py(m);
      std::vector<bool> anchor(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        const Size& sz = sizes_.at(nodes[i]);
        if (fixed(nodes[i])) {
          anchor[i] = true;
          const Coord& c = out_.coords.at(nodes[i]);
          px[i] = c.x + sz.width / 2;
          py[i] = c.y + sz.height / 2;
        } else {
          px[i] = offset_x + sz.width / 2 + rng_.unit() * std::max(0.0, aw - sz.width);
          py[i] = sz.height / 2 + rng_.unit() * std::max(0.0, ah - sz.height);
        }
      }
      const int iters = std::max(1, opt_.force_iterations);
      const double t0 = aw / 10.0;
      std::vector<double> dx(m), dy(m);
      for (int it = 0; it < iters; ++it) {
        std::fill(dx.begin(), dx.end(), 0.0);
        std::fill(dy.begin(), dy.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            double ddx = px[i] - px[j], ddy = py[i] - py[j];
            double d = std::hypot(ddx, ddy);
            if (d < 0.01) {
              ddx = 0.01 * static_cast<double>(j - i);
              ddy = 0.01;
              d = std::hypot(ddx, ddy);
            }
            double f = k * k / d;
            dx[i] += ddx / d * f;
            dy[i] += ddy / d * f;
            dx[j] -= ddx / d * f;
            dy[j] -= ddy / d * f;
          }
        }
        for (auto [a, b] : edges) {
          double ddx = px[a] - px[b], ddy = py[a] - py[b];
          double d = std::max(std::hypot(ddx, ddy), 0.01);
          double f = d * d / k;
          dx[a] -= ddx / d * f;
          dy[a] -= ddy / d * f;
          dx[b] += ddx / d * f;
          dy[b] += ddy / d * f;
        }
        double t = t0 * (1.0 - static_cast<double>(it) / iters);
        for (std::size_t i = 0; i < m; ++i) {
          if (anchor[i]) continue;
          double len = std::hypot(dx[i], dy[i]);
          if (len > 0) {
            double step = std::min(len, t);
            px[i] += dx[i] / len * step;
            py[i] += dy[i] / len * step;
          }
          const Size& sz = sizes_.at(nodes[i]);
          px[i] = std::clamp(px[i], offset_x + sz.width / 2, std::max(offset_x + sz.width / 2, offset_x + aw - sz.width / 2));
          py[i] = std::clamp(py[i], sz.height / 2, std::max(sz.height / 2, ah - sz.height / 2));
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (anchor[i]) continue;
        const Size& sz = sizes_.at(nodes[i]);
        out_.coords[nodes[i]] = {px[i] - sz.width / 2, py[i] - sz.height / 2, 0};
      }
      offset_x += aw;
    }
  }

  void place_free() {
    for (const auto& [id, e] : s_.elements) {
      if (!standalone(e) || out_.coords.contains(id)) continue;
      const Size& sz = sizes_.at(id);
      double x = rng_.unit() * std::max(0.0, opt_.canvas_width - sz.width);
      double y = rng_.unit() * std::max(0.0, opt_.canvas_height - sz.height);
      out_.coords[id] = {x, y, 0};
    }
  }

  void enforce_constraints() {
    // Each edge (a, b) demands value(a) < value(b) on its axis.
    std::map<int, std::vector<std::pair<Term, Term>>> edges;
    for (const auto& c : s_.relative_constraints) {
      if (!out_.coords.contains(c.a) || !out_.coords.contains(c.b)) {
        out_.diagnostics.push_back(std::string("vis") + relation_name(c.relation) + "(" + c.a.str() + "," + c.b.str() +
                                   ") ignored: element is not placed on its own");
        continue;
      }
      switch (c.relation) {
        case Relation::Left: edges[0].emplace_back(c.a, c.b); break;
        case Relation::Right: edges[0].emplace_back(c.b, c.a); break;
        case Relation::Above: edges[1].emplace_back(c.a, c.b); break;
        case Relation::Below: edges[1].emplace_back(c.b, c.a); break;
        case Relation::InFrontOf: edges[2].emplace_back(c.b, c.a); break;
      }
    }
    for (auto& [axis, list] : edges) solve_axis(axis, list);
  }

  double get(const Term& id, int axis) const {
    const Coord& c = out_.coords.at(id);
    return axis == 0 ? c.x : axis == 1 ? c.y : static_cast<double>(c.z);
  }

  void set(const Term& id, int axis, double v) {
    Coord& c = out_.coords.at(id);
    if (axis == 0) c.x = v;
    else if (axis == 1) c.y = v;
    else c.z = static_cast<std::int64_t>(std::llround(v));
  }

  double sep(const Term& a, int axis) const {
    if (axis == 2) return 1;
    const Size& sz = sizes_.at(a);
    return (axis == 0 ? sz.width : sz.height) + opt_.gap;
  }

  static const char* axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }

  void solve_axis(int axis, const std::vector<std::pair<Term, Term>>& edges) {
    std::map<Term, std::vector<Term>> succ, pred;
    std::set<Term> nodes;
    for (const auto& [a, b] : edges) {
      succ[a].push_back(b);
      pred[b].push_back(a);
      nodes.insert(a);
      nodes.insert(b);
    }
    check_cycles(axis, nodes, succ);

    // Kahn's algorithm, smallest id first.
    std::map<Term, std::size_t> indeg;
    for (const auto& n : nodes) indeg[n] = pred[n].size();
    std::set<Term> ready;
    for (const auto& [n, d] : indeg)
      if (d == 0) ready.insert(n);
    std::vector<Term> order;
    while (!ready.empty()) {
      Term n = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(n);
      for (const auto& s : succ[n])
        if (--indeg[s] == 0) ready.insert(s);
    }

    // Latest admissible value of every movable node, from fixed successors.
    std::map<Term, double> upper;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Term& n = *it;
      if (fixed(n)) {
        upper[n] = get(n, axis);
        continue;
      }
      double u = kInf;
      for (const auto& s : succ[n]) u = std::min(u, upper.at(s) - sep(n, axis));
      upper[n] = u;
    }
    for (const auto& n : order) {
      double lower = -kInf;
      for (const auto& p : pred[n]) {
        if (fixed(p) && fixed(n)) {
          if (!(get(p, axis) < get(n, axis)))
            throw LayoutError(LayoutError::Kind::Unsatisfiable,
                              std::string("constraint between fixed elements ") + p.str() + " and " + n.str() +
                                  " does not hold on " + axis_name(axis),
                              {p, n});
          continue;
        }
        lower = std::max(lower, get(p, axis) + sep(p, axis));
      }
      if (fixed(n)) {
        if (lower > get(n, axis) + 1e-9)
          throw LayoutError(LayoutError::Kind::Unsatisfiable,
                            "cannot place predecessors of fixed element " + n.str() + " on " + axis_name(axis), {n});
        continue;
      }
      double u = upper.at(n);
      if (lower > u + 1e-9)
        throw LayoutError(LayoutError::Kind::Unsatisfiable,
                          "no room for " + n.str() + " between its constraints on " + axis_name(axis), {n});
      double v = std::max(std::min(get(n, axis), u), lower);
      set(n, axis, v);
    }
  }

  void check_cycles(int axis, const std::set<Term>& nodes, std::map<Term, std::vector<Term>>& succ) {
    std::map<Term, int> index, low;
    std::vector<Term> stack;
    std::set<Term> on_stack;
    int counter = 0;
    std::function<void(const Term&)> visit = [&](const Term& v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      for (const auto& w : succ[v]) {
        if (!index.contains(w)) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.contains(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] != index[v]) return;
      std::vector<Term> comp;
      while (true) {
        Term w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
        if (w == v) break;
      }
      bool self = std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
      if (comp.size() > 1 || self) {
        std::sort(comp.begin(), comp.end());
        std::string names;
        for (const auto& t : comp) names += (names.empty() ? "" : ", ") + t.str();
        throw LayoutError(LayoutError::Kind::Cycle,
                          std::string("contradictory relative constraints on ") + axis_name(axis) + ": cycle through " +
                              names,
                          comp);
      }
    };
    for (const auto& n : nodes)
      if (!index.contains(n)) visit(n);
  }

  Coord centre(const Term& id) const {
    const Coord& c = out_.coords.at(id);
    const Size& sz = sizes_.at(id);
    return {c.x + sz.width / 2, c.y + sz.height / 2, c.z};
  }

  // Connections, labels and graph containers follow the elements they refer to.
  void place_dependents() {
    for (const Element* c : s_.connections()) {
      const auto& g = std::get<ConnectionGeom>(c->geometry);
      if (!out_.coords.contains(g.source) || !out_.coords.contains(g.target)) {
        out_.diagnostics.push_back("connection " + c->id.str() + " has an endpoint that is not placed");
        continue;
      }
      Coord a = centre(g.source), b = centre(g.target);
      out_.coords[c->id] = {(a.x + b.x) / 2, (a.y + b.y) / 2, std::min(a.z, b.z)};
    }
    for (const auto& [id, e] : s_.elements) {
      if (!e.label || !out_.coords.contains(id) || templates_.contains(*e.label)) continue;
      const Element* text = s_.find(*e.label);
      if (!text || text->kind != ElementKind::Text) continue;
      Coord host = e.kind == ElementKind::Connection ? out_.coords.at(id) : centre(id);
      const Size& sz = sizes_.at(*e.label);
      out_.coords[*e.label] = {host.x - sz.width / 2, host.y - sz.height / 2, host.z};
    }
    for (const auto& [gid, g] : s_.elements) {
      if (g.kind != ElementKind::Graph) continue;
      double x = kInf, y = kInf;
      for (const auto& [node, graph] : s_.graph_membership) {
        if (graph != gid || !out_.coords.contains(node)) continue;
        x = std::min(x, out_.coords.at(node).x);
        y = std::min(y, out_.coords.at(node).y);
      }
      out_.coords[gid] = {std::isfinite(x) ? x : 0, std::isfinite(y) ? y : 0, 0};
    }
  }

  void place_cells() {
    for (const auto& f : s_.grid_fills) {
      const Element* grid = s_.find(f.grid);
      const Element* content = s_.find(f.element);
      if (!grid || !content || !out_.coords.contains(f.grid)) continue;
      const auto& g = std::get<GridGeom>(grid->geometry);
      if (g.rows <= 0 || g.cols <= 0) continue;
      if (f.row < 1 || f.row > g.rows || f.col < 1 || f.col > g.cols) {
        out_.diagnostics.push_back("grid fill " + f.element.str() + " at (" + std::to_string(f.row) + "," +
                                   std::to_string(f.col) + ") is outside grid " + f.grid.str());
        continue;
      }
      const Coord& gc = out_.coords.at(f.grid);
      double cw = (static_cast<double>(g.width) - opt_.grid_padding) / static_cast<double>(g.cols);
      double ch = (static_cast<double>(g.height) - opt_.grid_padding) / static_cast<double>(g.rows);
      double ox = gc.x + opt_.grid_padding + static_cast<double>(f.col - 1) * cw;
      double oy = gc.y + opt_.grid_padding + static_cast<double>(f.row - 1) * ch;
      Size sz = sizes_.at(f.element);
      double w = std::min(sz.width, cw), h = std::min(sz.height, ch);
      out_.cells.push_back({f, ox + (cw - w) / 2, oy + (ch - h) / 2, w, h});
    }
  }

  void finish() {
    out_.width = opt_.canvas_width;
    out_.height = opt_.canvas_height;
    for (const auto& [id, c] : out_.coords) {
      const Size& sz = sizes_.at(id);
      out_.sizes[id] = sz;
      double right = c.x + sz.width, bottom = c.y + sz.height;
      if (c.x < 0 || c.y < 0 || right > opt_.canvas_width || bottom > opt_.canvas_height)
        out_.diagnostics.push_back("element " + id.str() + " extends beyond the canvas");
      out_.width = std::max(out_.width, right);
      out_.height = std::max(out_.height, bottom);
    }
    for (const auto& cell : out_.cells) {
      out_.width = std::max(out_.width, cell.x + cell.width);
      out_.height = std::max(out_.height, cell.y + cell.height);
    }
  }

  const Scene& s_;
  const LayoutOptions& opt_;
  Rng rng_;
  std::set<Term> templates_;
  std::set<Term> labels_;
  std::set<Term> fixed_;
  std::map<Term, Size> sizes_;
  LayoutResult out_;
};

}  // namespace

LayoutResult layout(const Scene& scene, std::uint64_t seed, const LayoutOptions& options) {
  return Layouter(scene, seed, options).run();
}

}  // namespace kara
