#include "kara/solver.hpp"

#include <algorithm>
#include <map>

#include "kara/stratify.hpp"

namespace kara {
namespace {

struct GroundRule {
  int head = -1;  // -1: constraint
  std::vector<int> pos;
  std::vector<int> naf;
};

enum class BodyState { False, Open, True };

constexpr signed char kUnknown = -1;

// Compact ground program over atom ids. Atoms that head no rule are false in
// every answer set and are simplified away.
struct Compiled {
  std::vector<Atom> atoms;  // sorted
  std::vector<GroundRule> rules;
  std::vector<std::vector<int>> body_occ;
  std::vector<std::vector<int>> head_occ;
  std::vector<int> complement;

  explicit Compiled(const Program& ground) {
    std::set<Atom> heads;
    for (const auto& r : ground.rules)
      for (const auto& h : r.head) heads.insert(h);
    atoms.assign(heads.begin(), heads.end());
    std::map<Atom, int> ids;
    for (std::size_t i = 0; i < atoms.size(); ++i) ids.emplace(atoms[i], static_cast<int>(i));

    for (const auto& r : ground.rules) {
      GroundRule g;
      bool dead = false;
      for (const auto& a : r.pos) {
        auto it = ids.find(a);
        if (it == ids.end()) {
          dead = true;
          break;
        }
        g.pos.push_back(it->second);
      }
      if (dead) continue;
      for (const auto& a : r.naf) {
        auto it = ids.find(a);
        if (it != ids.end()) g.naf.push_back(it->second);
      }
      std::sort(g.pos.begin(), g.pos.end());
      g.pos.erase(std::unique(g.pos.begin(), g.pos.end()), g.pos.end());
      std::sort(g.naf.begin(), g.naf.end());
      g.naf.erase(std::unique(g.naf.begin(), g.naf.end()), g.naf.end());
      // A body with p and not p can never hold.
      bool clash = false;
      for (int p : g.pos)
        if (std::binary_search(g.naf.begin(), g.naf.end(), p)) clash = true;
      if (clash) continue;
      g.head = r.head.empty() ? -1 : ids.at(r.head.front());
      rules.push_back(std::move(g));
    }

    body_occ.resize(atoms.size());
    head_occ.resize(atoms.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& g = rules[i];
      if (g.head >= 0) head_occ[g.head].push_back(static_cast<int>(i));
      for (int a : g.pos) body_occ[a].push_back(static_cast<int>(i));
      for (int a : g.naf) body_occ[a].push_back(static_cast<int>(i));
    }
    complement.assign(atoms.size(), -1);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      auto it = ids.find(atoms[i].complement());
      if (it != ids.end()) complement[i] = it->second;
    }
  }
};

class Search {
 public:
  Search(const Compiled& c, const SolveOptions& options) : c_(c), options_(options) {
    val_.assign(c.atoms.size(), kUnknown);
    for (std::size_t i = 0; i < c.atoms.size(); ++i)
      prefer_true_.push_back(options.prefer && options.prefer->contains(c.atoms[i]));
  }

  std::vector<Interpretation> run() {
    bool ok = true;
    for (std::size_t r = 0; r < c_.rules.size() && ok; ++r) ok = check_rule(static_cast<int>(r));
    for (std::size_t a = 0; a < c_.atoms.size() && ok; ++a) ok = check_support(static_cast<int>(a));
    if (ok) search();
    return std::move(models_);
  }

 private:
  bool done() const { return options_.limit != 0 && models_.size() >= options_.limit; }

  bool assign(int atom, bool value) {
    signed char v = value ? 1 : 0;
    if (val_[atom] != kUnknown) return val_[atom] == v;
    val_[atom] = v;
    trail_.push_back(atom);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = kUnknown;
      trail_.pop_back();
    }
    head_ = mark;
  }

  // Literal value: 1 true, 0 false, -1 unknown. Naf literals are inverted.
  signed char lit(int atom, bool negated) const {
    signed char v = val_[atom];
    if (v == kUnknown || !negated) return v;
    return static_cast<signed char>(1 - v);
  }

  BodyState body(const GroundRule& g, int* open_count, int* open_atom, bool* open_negated) const {
    int open = 0;
    for (int a : g.pos) {
      auto v = lit(a, false);
      if (v == 0) return BodyState::False;
      if (v == kUnknown) {
        ++open;
        *open_atom = a;
        *open_negated = false;
      }
    }
    for (int a : g.naf) {
      auto v = lit(a, true);
      if (v == 0) return BodyState::False;
      if (v == kUnknown) {
        ++open;
        *open_atom = a;
        *open_negated = true;
      }
    }
    *open_count = open;
    return open == 0 ? BodyState::True : BodyState::Open;
  }

  bool check_rule(int r) {
    const GroundRule& g = c_.rules[r];
    int open = 0, atom = -1;
    bool negated = false;
    auto state = body(g, &open, &atom, &negated);
    if (state == BodyState::True) return g.head >= 0 && assign(g.head, true);
    if (state == BodyState::Open && open == 1 && (g.head < 0 || val_[g.head] == 0))
      return assign(atom, negated);
    return true;
  }

  bool check_support(int a) {
    int supports = 0, last = -1;
    for (int r : c_.head_occ[a]) {
      int open = 0, atom = -1;
      bool negated = false;
      if (body(c_.rules[r], &open, &atom, &negated) != BodyState::False) {
        ++supports;
        last = r;
        if (supports > 1) break;
      }
    }
    if (supports == 0) return assign(a, false);
    if (supports == 1 && val_[a] == 1) {
      const GroundRule& g = c_.rules[last];
      for (int p : g.pos)
        if (!assign(p, true)) return false;
      for (int n : g.naf)
        if (!assign(n, false)) return false;
    }
    return true;
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      int a = trail_[head_++];
      if (val_[a] == 1 && c_.complement[a] >= 0 && !assign(c_.complement[a], false)) return false;
      for (int r : c_.body_occ[a]) {
        if (!check_rule(r)) return false;
        int h = c_.rules[r].head;
        if (h >= 0 && !check_support(h)) return false;
      }
      for (int r : c_.head_occ[a])
        if (!check_rule(r)) return false;
      if (!check_support(a)) return false;
    }
    return true;
  }

  // Total assignment: the true atoms must be the least model of the reduct.
  bool stable() const {
    std::vector<int> remaining(c_.rules.size(), 0);
    std::vector<char> derived(c_.atoms.size(), 0);
    std::vector<int> queue;
    for (std::size_t r = 0; r < c_.rules.size(); ++r) {
      const auto& g = c_.rules[r];
      if (g.head < 0) continue;
      bool blocked = false;
      for (int n : g.naf)
        if (val_[n] == 1) blocked = true;
      if (blocked) {
        remaining[r] = -1;
        continue;
      }
      remaining[r] = static_cast<int>(g.pos.size());
      if (g.pos.empty() && !derived[g.head]) {
        derived[g.head] = 1;
        queue.push_back(g.head);
      }
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int r : c_.body_occ[queue[q]]) {
        const auto& g = c_.rules[r];
        if (g.head < 0 || remaining[r] < 0) continue;
        if (!std::binary_search(g.pos.begin(), g.pos.end(), queue[q])) continue;
        if (--remaining[r] == 0 && !derived[g.head]) {
          derived[g.head] = 1;
          queue.push_back(g.head);
        }
      }
    }
    for (std::size_t a = 0; a < c_.atoms.size(); ++a)
      if ((val_[a] == 1) != (derived[a] == 1)) return false;
    return true;
  }

  void search() {
    if (!propagate()) return;
    while (next_ < val_.size() && val_[next_] != kUnknown) ++next_;
    if (next_ == val_.size()) {
      if (stable()) {
        Interpretation m;
        for (std::size_t a = 0; a < c_.atoms.size(); ++a)
          if (val_[a] == 1) m.insert(c_.atoms[a]);
        models_.push_back(std::move(m));
      }
      return;
    }
    int atom = static_cast<int>(next_);
    std::size_t saved_next = next_;
    std::size_t mark = trail_.size();
    bool first = prefer_true_[atom];
    for (bool value : {first, !first}) {
      assign(atom, value);
      search();
      undo(mark);
      next_ = saved_next;
      if (done()) return;
    }
  }

  const Compiled& c_;
  const SolveOptions& options_;
  std::vector<signed char> val_;
  std::vector<char> prefer_true_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  std::size_t next_ = 0;
  std::vector<Interpretation> models_;
};

// Stratified programs have at most one answer set, computed stratum by stratum.
std::vector<Interpretation> solve_stratified(const Program& ground, const Stratification& s) {
  std::map<int, std::vector<const Rule*>> by_stratum;
  for (const auto& r : ground.rules) {
    if (r.head.empty()) continue;
    const auto& h = r.head.front();
    by_stratum[s.stratum.at({h.signature(), h.strong_neg})].push_back(&r);
  }
  std::set<Atom> model;
  for (const auto& [level, rules] : by_stratum) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const Rule* r : rules) {
        if (model.contains(r->head.front())) continue;
        bool fire = std::all_of(r->pos.begin(), r->pos.end(), [&](const Atom& a) { return model.contains(a); }) &&
                    std::none_of(r->naf.begin(), r->naf.end(), [&](const Atom& a) { return model.contains(a); });
        if (fire) {
          model.insert(r->head.front());
          changed = true;
        }
      }
    }
  }
  for (const auto& r : ground.rules) {
    if (!r.head.empty()) continue;
    bool violated = std::all_of(r.pos.begin(), r.pos.end(), [&](const Atom& a) { return model.contains(a); }) &&
                    std::none_of(r.naf.begin(), r.naf.end(), [&](const Atom& a) { return model.contains(a); });
    if (violated) return {};
  }
  Interpretation out;
  for (const auto& a : model) {
    if (model.contains(a.complement())) return {};
    out.insert(a);
  }
  return {out};
}

}  // namespace

std::vector<Interpretation> solve_ground(const Program& ground, const SolveOptions& options) {
  for (const auto& r : ground.rules)
    if (r.is_disjunctive())
      throw UnsupportedProgramError("the built-in solver does not handle disjunctive heads: " + r.str());
  auto strat = stratify(ground);
  if (strat.stratified) return solve_stratified(ground, strat);
  Compiled compiled(ground);
  return Search(compiled, options).run();
}

std::vector<Interpretation> solve(const Program& program, const Interpretation& input,
                                  const SolveOptions& options) {
  return solve_ground(ground(program, input, options.ground), options);
}

}  // namespace kara
