#include <array>

#include "kara/vis.hpp"

namespace kara {
namespace {

using C = VisCategory;

constexpr std::array<VisPredicate, 31> kCatalog{{
    {"visellipse", 3, C::Element},
    {"visrect", 3, C::Element},
    {"vispolygon", 4, C::Element},
    {"visimage", 2, C::Element},
    {"visline", 6, C::Element},
    {"visgrid", 5, C::Grid},
    {"visgraph", 1, C::Graph},
    {"vistext", 2, C::Element},
    {"vislabel", 2, C::Property},
    {"visisnode", 2, C::Graph},
    {"visscale", 3, C::Property},
    {"visposition", 4, C::LayoutHint},
    {"visfontfamily", 2, C::Property},
    {"visfontsize", 2, C::Property},
    {"visfontstyle", 2, C::Property},
    {"viscolor", 2, C::Property},
    {"visbackgroundcolor", 2, C::Property},
    {"visfillgrid", 4, C::Grid},
    {"visconnect", 3, C::Element},
    {"vissourcedeco", 2, C::Property},
    {"vistargetdeco", 2, C::Property},
    {"visleft", 2, C::LayoutHint},
    {"visright", 2, C::LayoutHint},
    {"visabove", 2, C::LayoutHint},
    {"visbelow", 2, C::LayoutHint},
    {"visinfrontof", 2, C::LayoutHint},
    {"vishide", 1, C::Property},
    {"visdeletable", 1, C::EditAffordance},
    {"viscreatable", 1, C::EditAffordance},
    {"vischangable", 2, C::EditAffordance},
    {"vispossiblegridvalues", 2, C::EditAffordance},
}};

}  // namespace

const char* category_name(VisCategory c) {
  switch (c) {
    case C::Element: return "element";
    case C::Property: return "property";
    case C::LayoutHint: return "layout-hint";
    case C::Grid: return "grid";
    case C::Graph: return "graph";
    case C::EditAffordance: return "edit-affordance";
  }
  return "?";
}

std::span<const VisPredicate> vis_catalog() { return kCatalog; }

const VisPredicate* find_vis_predicate(std::string_view name, std::size_t arity) {
  for (const auto& p : kCatalog)
    if (p.name == name && p.arity == arity) return &p;
  return nullptr;
}

std::set<Predicate> vis_predicates() {
  std::set<Predicate> out;
  for (const auto& p : kCatalog) out.insert(p.predicate());
  return out;
}

bool is_vis_predicate(const Predicate& p) { return find_vis_predicate(p.name, p.arity) != nullptr; }

Interpretation project_vis(const Interpretation& answer_set) {
  Interpretation out;
  for (const auto& a : answer_set)
    if (!a.strong_neg && find_vis_predicate(a.predicate, a.arity())) out.insert(a);
  return out;
}

}  // namespace kara
