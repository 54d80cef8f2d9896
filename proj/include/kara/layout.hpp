#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kara/scene.hpp"

namespace kara {

struct LayoutOptions {
  double canvas_width = 800;
  double canvas_height = 600;
  /// Minimum distance between the boxes of relatively constrained elements.
  double gap = 10;
  int force_iterations = 300;
  /// Offset of the first grid cell from the grid's top-left corner.
  double grid_padding = 5;
  double default_image_size = 32;
};

/// Top-left corner of an element's bounding box, plus its depth.
struct Coord {
  double x = 0;
  double y = 0;
  std::int64_t z = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

struct Size {
  double width = 0;
  double height = 0;
  friend bool operator==(const Size&, const Size&) = default;
};

/// Placement of one grid fill: the template element drawn inside a cell.
struct CellPlacement {
  GridFill fill;
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;
  friend bool operator==(const CellPlacement&, const CellPlacement&) = default;
};

struct LayoutResult {
  std::map<Term, Coord> coords;
  /// Bounding box size of every element in coords.
  std::map<Term, Size> sizes;
  std::vector<CellPlacement> cells;
  std::vector<std::string> diagnostics;
  /// Drawing extent: the canvas, grown to the bounding box of the content.
  double width = 0;
  double height = 0;

  friend bool operator==(const LayoutResult&, const LayoutResult&) = default;
};

class LayoutError : public Error {
 public:
  enum class Kind { Cycle, Unsatisfiable };
  LayoutError(Kind kind, const std::string& message, std::vector<Term> members)
      : Error(message), kind_(kind), members_(std::move(members)) {}
  Kind kind() const { return kind_; }
  /// Cycle members, or the two fixed elements of an unsatisfiable constraint.
  const std::vector<Term>& members() const { return members_; }

 private:
  Kind kind_;
  std::vector<Term> members_;
};

/// Bounding box size of an element (grid templates and labels included).
Size element_size(const Scene& scene, const Element& e, const LayoutOptions& options = {});

/// Assigns coordinates: fixed positions and lines as given, graph members by
/// a seeded force-directed layout, other free elements pseudo-randomly, then
/// relative constraints are enforced per axis. Labels are centred on their
/// host, grid contents on their cell. Deterministic for equal scene and seed.
LayoutResult layout(const Scene& scene, std::uint64_t seed, const LayoutOptions& options = {});

}  // namespace kara
