#include "kara/semantics.hpp"

#include <map>

namespace kara {
namespace {

std::set<Atom> least_model_set(const Program& positive) {
  // Counter-based forward chaining over atom ids.
  std::map<Atom, int> ids;
  std::vector<const Atom*> atoms;
  auto id = [&](const Atom& a) {
    auto [it, added] = ids.emplace(a, static_cast<int>(atoms.size()));
    if (added) atoms.push_back(&it->first);
    return it->second;
  };
  std::vector<int> remaining;
  std::vector<int> heads;
  std::vector<std::vector<int>> watch;
  std::vector<int> queue;
  std::vector<char> derived;
  auto mark = [&](int a) {
    if (static_cast<std::size_t>(a) >= derived.size()) derived.resize(a + 1, 0);
    if (derived[a]) return;
    derived[a] = 1;
    queue.push_back(a);
  };
  for (const auto& r : positive.rules) {
    if (r.head.empty()) continue;
    int h = id(r.head.front());
    std::set<int> body;
    for (const auto& a : r.pos) body.insert(id(a));
    int idx = static_cast<int>(heads.size());
    heads.push_back(h);
    remaining.push_back(static_cast<int>(body.size()));
    if (watch.size() < atoms.size()) watch.resize(atoms.size());
    for (int b : body) watch[b].push_back(idx);
    if (body.empty()) mark(h);
  }
  watch.resize(atoms.size());
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int r : watch[queue[q]])
      if (--remaining[r] == 0) mark(heads[r]);
  std::set<Atom> out;
  for (int a : queue) out.insert(*atoms[a]);
  return out;
}

bool body_true(const Rule& r, const std::set<Atom>& model) {
  for (const auto& a : r.pos)
    if (!model.contains(a)) return false;
  for (const auto& a : r.naf)
    if (model.contains(a)) return false;
  return true;
}

}  // namespace

Program reduct(const Program& ground, const Interpretation& candidate) {
  Program out;
  for (const auto& r : ground.rules) {
    bool blocked = false;
    for (const auto& a : r.naf)
      if (candidate.contains(a)) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    Rule p = r;
    p.naf.clear();
    out.rules.push_back(std::move(p));
  }
  return out;
}

Interpretation least_model(const Program& positive) {
  Interpretation out;
  for (const auto& a : least_model_set(positive)) out.insert(a);
  return out;
}

bool is_answer_set(const Program& ground, const Interpretation& candidate) {
  for (const auto& r : ground.rules)
    if (r.is_disjunctive()) throw UnsupportedProgramError("disjunctive rule: " + r.str());
  for (const auto& r : ground.rules)
    if (r.is_constraint() && body_true(r, candidate.atoms())) return false;
  return least_model_set(reduct(ground, candidate)) == candidate.atoms();
}

}  // namespace kara
