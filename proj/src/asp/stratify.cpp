#include "kara/stratify.hpp"

#include <algorithm>
#include <functional>

namespace kara {

std::string SignedPredicate::str() const { return (strong_neg ? "-" : "") + pred.str(); }

Stratification stratify(const Program& program, const std::set<Predicate>& ignored) {
  std::map<SignedPredicate, int> ids;
  std::vector<SignedPredicate> nodes;
  auto id = [&](const Atom& a) {
    SignedPredicate sp{a.signature(), a.strong_neg};
    auto [it, added] = ids.emplace(sp, static_cast<int>(nodes.size()));
    if (added) nodes.push_back(sp);
    return it->second;
  };
  struct Edge {
    int from;
    int to;
    int weight;
  };
  std::vector<Edge> edges;
  for (const auto& r : program.rules) {
    std::vector<int> heads;
    for (const auto& h : r.head) heads.push_back(id(h));
    for (const auto& a : r.pos) {
      int b = id(a);
      for (int h : heads) edges.push_back({b, h, 0});
    }
    for (const auto& a : r.naf) {
      int b = id(a);
      if (ignored.contains(a.signature())) continue;
      for (int h : heads) edges.push_back({b, h, 1});
    }
  }

  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> succ(n);
  for (const auto& e : edges) succ[e.from].push_back(e.to);

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, comps = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  Stratification out;
  for (const auto& e : edges) {
    if (e.weight == 1 && comp[e.from] == comp[e.to]) {
      out.stratified = false;
      for (int v = 0; v < n; ++v)
        if (comp[v] == comp[e.from]) out.cycle.push_back(nodes[v]);
      std::sort(out.cycle.begin(), out.cycle.end());
      return out;
    }
  }

  std::vector<int> level(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      if (level[e.to] < level[e.from] + e.weight) {
        level[e.to] = level[e.from] + e.weight;
        changed = true;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    out.stratum[nodes[v]] = level[v];
    out.strata_count = std::max(out.strata_count, level[v] + 1);
  }
  return out;
}

}  // namespace kara
