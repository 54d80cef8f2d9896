#pragma once

#include <random>
#include <string>
#include <vector>

#include "kara/program.hpp"

namespace kara::test {

// Random ground normal program over at most `max_atoms` propositional atoms,
// some of them strongly negated.
inline Program random_program(std::mt19937& rng, int max_atoms) {
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  int n = natoms(rng);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    bool neg = i > 0 && rng() % 6 == 0;
    atoms.emplace_back(neg ? atoms[i - 1].predicate : "a" + std::to_string(i), std::vector<Term>{}, neg);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> nrules(1, 2 * n + 2);
  std::uniform_int_distribution<int> blen(0, 2);
  Program p;
  int rules = nrules(rng);
  for (int r = 0; r < rules; ++r) {
    Rule rule;
    if (rng() % 8 != 0) rule.head.push_back(atoms[pick(rng)]);
    int np = blen(rng), nn = blen(rng);
    for (int k = 0; k < np; ++k) rule.pos.push_back(atoms[pick(rng)]);
    for (int k = 0; k < nn; ++k) rule.naf.push_back(atoms[pick(rng)]);
    if (rule.head.empty() && rule.pos.empty() && rule.naf.empty()) continue;
    p.rules.push_back(std::move(rule));
  }
  return p;
}

}  // namespace kara::test
