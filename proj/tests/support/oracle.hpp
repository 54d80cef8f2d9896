#pragma once

// Brute-force reference semantics used as test oracles. Deliberately naive
// and independent of the library's solver and semantics code.

#include <algorithm>
#include <set>
#include <vector>

#include "kara/program.hpp"

namespace kara::test {

inline bool holds(const Rule& r, const std::set<Atom>& m) {
  for (const auto& a : r.pos)
    if (!m.contains(a)) return false;
  for (const auto& a : r.naf)
    if (m.contains(a)) return false;
  return true;
}

// Least model of the reduct P^S by naive iteration.
inline std::set<Atom> reduct_least_model(const Program& p, const std::set<Atom>& s) {
  std::set<Atom> m;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : p.rules) {
      if (r.head.empty()) continue;
      bool blocked = std::any_of(r.naf.begin(), r.naf.end(), [&](const Atom& a) { return s.contains(a); });
      if (blocked) continue;
      bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](const Atom& a) { return m.contains(a); });
      if (body && m.insert(r.head.front()).second) changed = true;
    }
  }
  return m;
}

inline bool brute_is_answer_set(const Program& p, const std::set<Atom>& s) {
  for (const auto& a : s)
    if (s.contains(a.complement())) return false;
  for (const auto& r : p.rules)
    if (r.head.empty() && holds(r, s)) return false;
  return reduct_least_model(p, s) == s;
}

// All answer sets of a ground normal program by subset enumeration over the
// head atoms (atoms heading no rule cannot be in an answer set).
inline std::set<std::set<Atom>> brute_answer_sets(const Program& p) {
  std::set<Atom> heads;
  for (const auto& r : p.rules)
    for (const auto& h : r.head) heads.insert(h);
  std::vector<Atom> atoms(heads.begin(), heads.end());
  std::set<std::set<Atom>> out;
  for (unsigned long mask = 0; mask < (1UL << atoms.size()); ++mask) {
    std::set<Atom> s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1UL << i)) s.insert(atoms[i]);
    if (brute_is_answer_set(p, s)) out.insert(s);
  }
  return out;
}

}  // namespace kara::test
