#include "kara/grounder.hpp"

#include <map>
#include <unordered_set>

namespace kara {
namespace {

using Binding = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Binding& b, const std::string& var) {
  for (const auto& [name, value] : b)
    if (name == var) return &value;
  return nullptr;
}

Term substitute(const Term& t, const Binding& b) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Term* v = lookup(b, t.name());
      return v ? *v : t;
    }
    case Term::Kind::Func: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, b));
      return Term::function(t.name(), std::move(args));
    }
    case Term::Kind::Arith: return Term::arith(t.op(), substitute(t.lhs(), b), substitute(t.rhs(), b));
    default: return t;
  }
}

struct Linear {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

// t as a*var + b, where var is the only variable left in t.
std::optional<Linear> linear(const Term& t, const std::string& var) {
  switch (t.kind()) {
    case Term::Kind::Int: return Linear{0, t.int_value()};
    case Term::Kind::Var:
      if (t.name() == var) return Linear{1, 0};
      return std::nullopt;
    case Term::Kind::Arith: {
      auto l = linear(t.lhs(), var);
      auto r = linear(t.rhs(), var);
      if (!l || !r) return std::nullopt;
      switch (t.op()) {
        case ArithOp::Add: return Linear{l->a + r->a, l->b + r->b};
        case ArithOp::Sub: return Linear{l->a - r->a, l->b - r->b};
        case ArithOp::Mul:
          if (l->a == 0) return Linear{l->b * r->a, l->b * r->b};
          if (r->a == 0) return Linear{l->a * r->b, l->b * r->b};
          return std::nullopt;
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    std::size_t h = std::hash<std::string>{}(a.predicate) ^ (a.strong_neg ? 0x5bd1e995 : 0);
    for (const auto& t : a.args) h = h * 31 + t.hash();
    return h;
  }
};

struct Relation {
  std::vector<Atom> atoms;
  // Bounds of the current round: [0, old_end) old, [old_end, delta_end) new.
  std::size_t old_end = 0;
  std::size_t delta_end = 0;
};

struct Pending {
  Term pattern;
  Term value;
};

class Grounder {
 public:
  Grounder(const GroundOptions& options) : options_(options) {}

  Program run(const Program& program, const Interpretation& input) {
    for (const auto& a : input) add_fact(a);
    std::vector<const Rule*> rules;
    for (const auto& r : program.rules) {
      if (r.is_fact()) {
        Binding none;
        auto a = instantiate(r.head.front(), none, r);
        if (a) add_fact(*a);
      } else {
        rules.push_back(&r);
        for (const auto& a : r.pos) relation(a);
      }
    }
    flush();

    bool first = true;
    while (true) {
      bool any_delta = false;
      for (auto& [key, rel] : relations_) {
        rel.old_end = rel.delta_end;
        rel.delta_end = rel.atoms.size();
        any_delta = any_delta || rel.delta_end > rel.old_end;
      }
      if (!any_delta && !first) break;
      for (const Rule* r : rules) {
        if (r->pos.empty()) {
          if (first) {
            Binding b;
            emit(*r, b);
          }
          continue;
        }
        for (std::size_t i = 0; i < r->pos.size(); ++i) {
          Relation& rel = relation(r->pos[i]);
          if (rel.delta_end == rel.old_end) continue;
          Binding b;
          std::vector<Pending> deferred;
          std::vector<std::size_t> order{i};
          for (std::size_t j = 0; j < r->pos.size(); ++j)
            if (j != i) order.push_back(j);
          join(*r, order, 0, i, b, deferred);
        }
      }
      first = false;
      flush();
    }
    return std::move(out_);
  }

 private:
  using Key = std::pair<std::string, std::pair<std::size_t, bool>>;

  Relation& relation(const Atom& a) {
    return relations_[Key{a.predicate, {a.args.size(), a.strong_neg}}];
  }

  void add_fact(const Atom& a) {
    Rule f = Rule::fact(a);
    if (emitted_.insert(f).second) out_.rules.push_back(std::move(f));
    note_atom(a);
  }

  void note_atom(const Atom& a) {
    if (known_.contains(a)) return;
    if (known_.size() >= options_.max_atoms)
      throw GroundingError("grounding exceeds " + std::to_string(options_.max_atoms) + " atoms");
    known_.insert(a);
    pending_.push_back(a);
  }

  // New atoms become visible only in the next round.
  void flush() {
    for (auto& a : pending_) relation(a).atoms.push_back(std::move(a));
    pending_.clear();
  }

  bool unify(const Term& p, const Term& g, Binding& b, std::vector<Pending>& deferred) {
    switch (p.kind()) {
      case Term::Kind::Var: {
        if (const Term* v = lookup(b, p.name())) return *v == g;
        b.emplace_back(p.name(), g);
        return true;
      }
      case Term::Kind::Func: {
        if (g.kind() != Term::Kind::Func || g.name() != p.name() || g.args().size() != p.args().size())
          return false;
        for (std::size_t i = 0; i < p.args().size(); ++i)
          if (!unify(p.args()[i], g.args()[i], b, deferred)) return false;
        return true;
      }
      case Term::Kind::Arith: deferred.push_back({p, g}); return true;
      default: return p == g;
    }
  }

  // Settles deferred arithmetic arguments that became ground or linear in a
  // single unbound variable. Unsettled ones stay in `deferred`.
  bool settle(Binding& b, std::vector<Pending>& deferred) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < deferred.size(); ++i) {
        Term s = substitute(deferred[i].pattern, b);
        const Term& value = deferred[i].value;
        auto vars = s.vars();
        if (vars.empty()) {
          auto v = evaluate(s);
          if (!v || *v != value) return false;
        } else if (vars.size() == 1) {
          if (!value.is_int()) return false;
          auto lin = linear(s, *vars.begin());
          if (!lin) continue;
          std::int64_t rest = value.int_value() - lin->b;
          if (lin->a == 0) {
            if (rest != 0) return false;
            continue;
          }
          if (rest % lin->a != 0) return false;
          b.emplace_back(*vars.begin(), Term::integer(rest / lin->a));
        } else {
          continue;
        }
        deferred.erase(deferred.begin() + static_cast<std::ptrdiff_t>(i));
        progress = true;
        break;
      }
    }
    return true;
  }

  void join(const Rule& r, const std::vector<std::size_t>& order, std::size_t k, std::size_t delta_pos,
            Binding& b, std::vector<Pending>& deferred) {
    if (k == order.size()) {
      if (!deferred.empty())
        throw GroundingError("cannot bind variables of " + deferred.front().pattern.str() + " in rule " +
                             r.str());
      emit(r, b);
      return;
    }
    std::size_t idx = order[k];
    const Atom& pattern = r.pos[idx];
    Relation& rel = relation(pattern);
    std::size_t lo = 0;
    std::size_t hi = rel.delta_end;
    if (idx == delta_pos) lo = rel.old_end;
    else if (idx < delta_pos) hi = rel.old_end;

    for (std::size_t n = lo; n < hi; ++n) {
      std::size_t bsize = b.size();
      auto saved = deferred;
      // The vector may not grow during a round, so this reference is stable.
      const Atom& g = rel.atoms[n];
      bool ok = true;
      for (std::size_t i = 0; i < pattern.args.size() && ok; ++i)
        ok = unify(pattern.args[i], g.args[i], b, deferred);
      if (ok) ok = settle(b, deferred);
      if (ok) join(r, order, k + 1, delta_pos, b, deferred);
      b.resize(bsize);
      deferred = std::move(saved);
    }
  }

  // Ground copy of `a` with arithmetic folded; nullopt when the instance is
  // discarded because of undefined arithmetic.
  std::optional<Atom> instantiate(const Atom& a, const Binding& b, const Rule& r) {
    Atom out(a.predicate, {}, a.strong_neg);
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
      auto v = evaluate(substitute(t, b));
      if (!v) {
        if (options_.discard_undefined_arithmetic) return std::nullopt;
        throw GroundingError("undefined arithmetic in " + substitute(t, b).str() + " (rule " + r.str() + ")");
      }
      if (v->depth() > options_.max_term_depth)
        throw GroundingError("term depth bound " + std::to_string(options_.max_term_depth) +
                             " exceeded by " + v->str());
      out.args.push_back(std::move(*v));
    }
    return out;
  }

  void emit(const Rule& r, const Binding& b) {
    for (const auto& c : r.builtins) {
      auto l = evaluate(substitute(c.lhs, b));
      auto rr = evaluate(substitute(c.rhs, b));
      if (!l || !rr) {
        if (options_.discard_undefined_arithmetic) return;
        throw GroundingError("undefined arithmetic in " + substitute(c.lhs, b).str() + cmp_symbol(c.op) +
                             substitute(c.rhs, b).str() + " (rule " + r.str() + ")");
      }
      if (!c.holds_ground(*l, *rr)) return;
    }
    Rule g;
    g.loc = r.loc;
    for (const auto* src : {&r.head, &r.pos, &r.naf}) {
      auto& dst = src == &r.head ? g.head : src == &r.pos ? g.pos : g.naf;
      for (const auto& a : *src) {
        auto ga = instantiate(a, b, r);
        if (!ga) return;
        dst.push_back(std::move(*ga));
      }
    }
    if (!emitted_.insert(g).second) return;
    for (const auto& h : g.head) note_atom(h);
    out_.rules.push_back(std::move(g));
  }

  const GroundOptions& options_;
  std::map<Key, Relation> relations_;
  std::unordered_set<Atom, AtomHash> known_;
  std::vector<Atom> pending_;
  std::set<Rule> emitted_;
  Program out_;
};

}  // namespace

Program ground(const Program& program, const Interpretation& input, const GroundOptions& options) {
  return Grounder(options).run(program, input);
}

}  // namespace kara
