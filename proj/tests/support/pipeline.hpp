#pragma once

#include <string>

#include "kara/parser.hpp"
#include "kara/solver.hpp"
#include "kara/vis.hpp"
#include "support/corpus.hpp"

namespace kara::test {

inline Interpretation corpus_facts(const std::string& name) {
  return parse_interpretation(read_corpus(name + "/facts.lp"));
}

/// Unique answer set of corpus/<name>/vis.lp over corpus/<name>/facts.lp.
inline Interpretation corpus_answer(const std::string& name) {
  auto models = solve(parse_program(read_corpus(name + "/vis.lp")), corpus_facts(name));
  if (models.size() != 1) throw std::runtime_error(name + ": expected one answer set");
  return models.front();
}

inline Interpretation corpus_vis(const std::string& name) { return project_vis(corpus_answer(name)); }

// I'_v of the maze with the fill at (row, col) replaced by `value`.
inline Interpretation maze_edit(std::int64_t row, std::int64_t col, const std::string& value) {
  auto vis = project_vis(corpus_answer("maze"));
  Interpretation out;
  for (const auto& a : vis) {
    if (a.predicate == "visfillgrid" && a.args[2].int_value() == row && a.args[3].int_value() == col)
      out.insert(Atom("visfillgrid", {a.args[0], Term::symbol(value), a.args[2], a.args[3]}));
    else
      out.insert(a);
  }
  return out;
}

}  // namespace kara::test
