#include <array>
#include <map>

#include "kara/scene.hpp"

namespace kara {
namespace {

constexpr std::array<const char*, 10> kPalette{
    "steelblue", "darkorange", "forestgreen", "crimson", "mediumpurple",
    "saddlebrown", "hotpink", "gray", "olive", "darkcyan",
};

const Term kGraph = Term::symbol("kara_generic");

Term id(const char* functor, std::vector<Term> args) { return Term::function(functor, std::move(args)); }

Term idx(std::size_t i) { return Term::integer(static_cast<std::int64_t>(i)); }

}  // namespace

std::string generic_palette_color(std::size_t index) { return kPalette[index % kPalette.size()]; }

Term generic_node_id(const Term& individual) { return id("kara_node", {individual}); }

Term generic_edge_id(std::size_t literal_index) { return id("kara_edge", {idx(literal_index)}); }

Interpretation generic_vis(const Interpretation& interpretation) {
  Interpretation out;
  auto add = [&](const char* pred, std::vector<Term> args) { out.insert(Atom(pred, std::move(args))); };
  if (interpretation.empty()) return out;
  add("visgraph", {kGraph});

  std::set<Term> individuals;
  for (const auto& lit : interpretation) individuals.insert(lit.args.begin(), lit.args.end());
  for (const auto& t : individuals) {
    Term node = generic_node_id(t);
    Term label = id("kara_node_label", {t});
    add("visellipse", {node, Term::integer(30), Term::integer(30)});
    add("visisnode", {node, kGraph});
    add("vislabel", {node, label});
    add("vistext", {label, t});
  }

  std::map<std::string, std::size_t> colours;
  std::size_t i = 0;
  for (const auto& lit : interpretation) {
    ++i;
    std::string pred = (lit.strong_neg ? "-" : "") + lit.predicate;
    auto [it, added] = colours.emplace(pred, colours.size());
    Term colour = Term::symbol(generic_palette_color(it->second));
    Term edge = generic_edge_id(i);
    Term edge_label = id("kara_edge_label", {idx(i)});
    add("visellipse", {edge, Term::integer(8), Term::integer(8)});
    add("visisnode", {edge, kGraph});
    add("visbackgroundcolor", {edge, colour});
    add("viscolor", {edge, colour});
    add("vislabel", {edge, edge_label});
    add("vistext", {edge_label, Term::string(pred)});
    add("viscolor", {edge_label, colour});
    for (std::size_t k = 0; k < lit.args.size(); ++k) {
      Term conn = id("kara_arg", {idx(i), idx(k + 1)});
      Term conn_label = id("kara_arg_label", {idx(i), idx(k + 1)});
      add("visconnect", {conn, edge, generic_node_id(lit.args[k])});
      add("viscolor", {conn, colour});
      add("vislabel", {conn, conn_label});
      add("vistext", {conn_label, idx(k + 1)});
    }
  }
  return out;
}

Scene generic_scene(const Interpretation& interpretation) { return build_scene(generic_vis(interpretation)); }

}  // namespace kara
