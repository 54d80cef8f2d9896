#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kara/interpretation.hpp"
#include "kara/vis.hpp"

namespace kara {

enum class ElementKind { Ellipse, Rect, Polygon, Image, Line, Grid, Graph, Text, Connection };

const char* kind_name(ElementKind k);
std::optional<ElementKind> kind_from_name(std::string_view name);

struct BoxGeom {
  std::int64_t height = 0;
  std::int64_t width = 0;
  friend bool operator==(const BoxGeom&, const BoxGeom&) = default;
};

struct PolygonPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t order = 0;
  friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

struct PolygonGeom {
  /// Sorted by order.
  std::vector<PolygonPoint> points;
  friend bool operator==(const PolygonGeom&, const PolygonGeom&) = default;
};

struct ImageGeom {
  Term path;
  friend bool operator==(const ImageGeom&, const ImageGeom&) = default;
};

struct LineGeom {
  std::int64_t x1 = 0, y1 = 0, x2 = 0, y2 = 0, z = 0;
  friend bool operator==(const LineGeom&, const LineGeom&) = default;
};

struct GridGeom {
  std::int64_t rows = 0, cols = 0, height = 0, width = 0;
  friend bool operator==(const GridGeom&, const GridGeom&) = default;
};

struct GraphGeom {
  friend bool operator==(const GraphGeom&, const GraphGeom&) = default;
};

struct TextGeom {
  Term text;
  friend bool operator==(const TextGeom&, const TextGeom&) = default;
};

struct ConnectionGeom {
  Term source;
  Term target;
  std::optional<Term> source_deco;
  std::optional<Term> target_deco;
  friend bool operator==(const ConnectionGeom&, const ConnectionGeom&) = default;
};

/// Ellipse and Rect share BoxGeom.
using Geometry = std::variant<BoxGeom, PolygonGeom, ImageGeom, LineGeom, GridGeom, GraphGeom, TextGeom, ConnectionGeom>;

struct Style {
  std::optional<Term> color;
  std::optional<Term> background;
  std::optional<Term> font_family;
  std::optional<Term> font_size;
  std::optional<Term> font_style;
  friend bool operator==(const Style&, const Style&) = default;
};

inline constexpr const char* kDefaultColor = "black";
inline constexpr const char* kDefaultBackground = "white";
inline constexpr const char* kDefaultFontFamily = "sans-serif";
inline constexpr int kDefaultFontSize = 12;

struct Affordances {
  bool deletable = false;
  std::set<Term> changeable;
  friend bool operator==(const Affordances&, const Affordances&) = default;
};

struct Element {
  Term id;
  ElementKind kind = ElementKind::Rect;
  Geometry geometry;
  Style style;
  bool hidden = false;
  std::optional<Term> label;
  /// visscale (height, width).
  std::optional<std::pair<std::int64_t, std::int64_t>> scale;
  Affordances affordances;

  friend bool operator==(const Element&, const Element&) = default;
};

struct Position {
  std::int64_t x = 0, y = 0, z = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct GridFill {
  Term grid;
  Term element;
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend auto operator<=>(const GridFill&, const GridFill&) = default;
};

enum class Relation { Left, Right, Above, Below, InFrontOf };

const char* relation_name(Relation r);

struct RelativeConstraint {
  Relation relation;
  Term a;
  Term b;
  friend auto operator<=>(const RelativeConstraint&, const RelativeConstraint&) = default;
};

struct Scene {
  std::map<Term, Element> elements;
  std::set<GridFill> grid_fills;
  /// (node, graph)
  std::set<std::pair<Term, Term>> graph_membership;
  std::map<Term, std::set<Term>> possible_grid_values;
  std::map<Term, Position> positions;
  std::set<RelativeConstraint> relative_constraints;
  /// viscreatable ids; they need not exist yet.
  std::set<Term> creatable;

  const Element* find(const Term& id) const;
  /// Elements referenced by grid fills or possible grid values: drawn only in cells.
  std::set<Term> grid_templates() const;
  /// Text elements serving as a label of some element.
  std::set<Term> label_texts() const;
  std::vector<const Element*> connections() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Builds a scene from catalogued atoms (other atoms are ignored). Atoms that
/// validation flags are skipped where they cannot be represented; in strict
/// mode any diagnostic raises VisValidationError instead.
Scene build_scene(const Interpretation& vis, bool strict = false);

/// Inverse of build_scene on valid inputs.
Interpretation scene_to_vis(const Scene& scene);

/// Vis atoms of the generic hypergraph view of an arbitrary interpretation:
/// a node per distinct argument term, a junction per literal labelled with
/// its predicate, connections to the argument nodes labelled with positions.
Interpretation generic_vis(const Interpretation& interpretation);
Scene generic_scene(const Interpretation& interpretation);

/// Colour used in the generic view for the i-th distinct predicate.
std::string generic_palette_color(std::size_t index);

/// Identifier terms of the generic view.
Term generic_node_id(const Term& individual);
Term generic_edge_id(std::size_t literal_index);

}  // namespace kara
