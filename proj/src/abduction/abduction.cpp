#include "kara/abduction.hpp"

#include <algorithm>

#include "kara/solver.hpp"
#include "kara/vis.hpp"

namespace kara {

std::string primed(const std::string& predicate) { return predicate + kPrimeSuffix; }

namespace {

bool is_vis(const Atom& a) { return !a.strong_neg && is_vis_predicate(a.signature()); }

Atom prime(const Atom& a) { return Atom(primed(a.predicate), a.args, a.strong_neg); }

std::vector<Term> fresh_vars(std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Term::variable("X" + std::to_string(i)));
  return out;
}

Atom unary(const char* pred, Term t) { return Atom(pred, {std::move(t)}); }

void push_unique(Program& p, std::set<Rule>& seen, Rule r) {
  if (seen.insert(r).second) p.rules.push_back(std::move(r));
}

void check_fresh_names(const Program& v, const Interpretation& edited) {
  auto check = [](const std::string& name) {
    if (name == kDomPredicate || name == kNonrecdomPredicate ||
        (name.size() > std::string_view(kPrimeSuffix).size() && name.ends_with(kPrimeSuffix)))
      throw AbductionError("predicate " + name + " collides with a reserved name of the abduction program");
  };
  for (const auto& p : v.predicates()) check(p.name);
  for (const auto& a : edited) check(a.predicate);
}

}  // namespace

std::set<Predicate> default_integrity_predicates() {
  auto out = vis_predicates();
  out.erase({"visposition", 4});
  out.erase({"visscale", 3});
  return out;
}

std::set<Predicate> abducible_predicates(const Program& v) {
  std::set<Predicate> heads, bodies;
  for (const auto& r : v.rules) {
    for (const auto& a : r.head) heads.insert(a.signature());
    for (const auto& a : r.pos) bodies.insert(a.signature());
    for (const auto& a : r.naf) bodies.insert(a.signature());
  }
  std::set<Predicate> out;
  for (const auto& p : bodies)
    if (!heads.contains(p) && !is_vis_predicate(p)) out.insert(p);
  return out;
}

PredicateSets default_predicate_sets(const Program& v) { return {abducible_predicates(v), default_integrity_predicates()}; }

Program build_dom(const Interpretation& edited, const Program& v) {
  Program out;
  std::set<Rule> seen;
  std::set<Predicate> used;
  for (const auto& r : v.rules) {
    for (const auto& head : r.head) {
      if (!is_vis(head)) continue;
      std::set<std::string> head_vars;
      head.collect_vars(head_vars);
      for (const auto& body : r.pos) {
        if (is_vis_predicate(body.signature())) continue;
        for (const auto& t : body.args) {
          auto vars = t.vars();
          if (vars.empty()) continue;
          bool subset = std::includes(head_vars.begin(), head_vars.end(), vars.begin(), vars.end());
          bool shares = std::any_of(vars.begin(), vars.end(), [&](const std::string& x) { return head_vars.contains(x); });
          if (subset) {
            Rule rule;
            rule.head = {unary(kNonrecdomPredicate, t)};
            rule.pos = {prime(head)};
            push_unique(out, seen, std::move(rule));
          }
          if (shares) {
            Rule rule;
            rule.head = {unary(kDomPredicate, t)};
            rule.pos = {prime(head)};
            for (const auto& x : vars)
              if (!head_vars.contains(x)) rule.pos.push_back(unary(kNonrecdomPredicate, Term::variable(x)));
            push_unique(out, seen, std::move(rule));
          }
          if (subset || shares) used.insert(head.signature());
        }
      }
    }
  }
  Rule closure;
  closure.head = {unary(kDomPredicate, Term::variable("X"))};
  closure.pos = {unary(kNonrecdomPredicate, Term::variable("X"))};
  push_unique(out, seen, std::move(closure));
  for (const auto& a : edited)
    if (used.contains(a.signature()) && !a.strong_neg) push_unique(out, seen, Rule::fact(prime(a)));
  return out;
}

std::set<Term> derive_domain(const Interpretation& edited, const Program& v) {
  SolveOptions options;
  options.ground.discard_undefined_arithmetic = true;
  auto models = solve(build_dom(edited, v), {}, options);
  std::set<Term> out;
  if (models.empty()) return out;
  for (const auto& a : models.front())
    if (a.predicate == kDomPredicate && a.arity() == 1) out.insert(a.args[0]);
  return out;
}

Program build_guess(const std::set<Predicate>& abducibles) {
  Program out;
  for (const auto& p : abducibles) {
    auto xs = fresh_vars(p.arity);
    Atom pos(p.name, xs), neg(p.name, xs, true);
    std::vector<Atom> doms;
    for (const auto& x : xs) doms.push_back(unary(kDomPredicate, x));
    Rule a, b;
    a.head = {pos};
    a.naf = {neg};
    a.pos = doms;
    b.head = {neg};
    b.naf = {pos};
    b.pos = doms;
    out.rules.push_back(std::move(a));
    out.rules.push_back(std::move(b));
  }
  return out;
}

Program build_check(const Interpretation& edited, const std::set<Predicate>& integrity, const CheckOptions& options) {
  Program out;
  std::set<Predicate> present;
  for (const auto& a : edited) {
    if (a.strong_neg || !integrity.contains(a.signature())) continue;
    out.rules.push_back(Rule::constraint({}, {a}));
    out.rules.push_back(Rule::fact(prime(a)));
    present.insert(a.signature());
  }
  for (const auto& p : integrity) {
    if (!present.contains(p) && !options.constrain_absent_integrity) continue;
    auto xs = fresh_vars(p.arity);
    out.rules.push_back(Rule::constraint({Atom(p.name, xs)}, {Atom(primed(p.name), xs)}));
  }
  return out;
}

Program AbductionProgram::combined() const {
  Program out;
  std::set<Rule> seen;
  for (const Program* part : {&dom, &guess, &vis, &check})
    for (const auto& r : part->rules) push_unique(out, seen, r);
  return out;
}

std::string AbductionProgram::str() const {
  return "% domain\n" + dom.str() + "% guess\n" + guess.str() + "% visualisation program\n" + vis.str() +
         "% check\n" + check.str();
}

AbductionProgram build_abduction_program(const Interpretation& edited, const Program& v, const PredicateSets& sets,
                                         const DomainOverride& domain, const CheckOptions& check) {
  check_fresh_names(v, edited);
  for (const auto& p : sets.integrity)
    if (!is_vis_predicate(p)) throw AbductionError("integrity predicate " + p.str() + " is not a visualisation predicate");
  std::set<Predicate> abducibles = sets.abducibles;
  abducibles.insert(domain.extra_abducibles.begin(), domain.extra_abducibles.end());
  for (const auto& p : abducibles)
    if (is_vis_predicate(p)) throw AbductionError("abducible predicate " + p.str() + " is a visualisation predicate");

  AbductionProgram out;
  out.dom = build_dom(edited, v);
  for (const auto& t : domain.extra_terms) {
    if (!t.is_ground()) throw AbductionError("domain term " + t.str() + " is not ground");
    out.dom.rules.push_back(Rule::fact(unary(kDomPredicate, t)));
  }
  out.guess = build_guess(abducibles);
  out.vis = v;
  out.check = build_check(edited, sets.integrity, check);
  return out;
}

AbductionResult abduce(const Interpretation& edited, const Program& v, const AbductionOptions& options) {
  AbductionResult result;
  result.sets = options.sets ? *options.sets : default_predicate_sets(v);
  result.sets.abducibles.insert(options.domain.extra_abducibles.begin(), options.domain.extra_abducibles.end());
  result.program = build_abduction_program(edited, v, result.sets, options.domain, options.check);

  SolveOptions solve;
  solve.limit = options.all ? 0 : 1;
  // Guessed abducibles range over mixed domains; instances like 20*s1 are
  // simply not applicable.
  solve.ground.discard_undefined_arithmetic = true;
  solve.prefer = options.prefer;
  auto models = solve_with(options.solver, result.program.combined(), {}, solve);
  if (!options.all && models.size() > 1) models.resize(1);
  if (models.empty()) return result;

  for (const auto& m : models) {
    Interpretation projected;
    for (const auto& a : m)
      if (!a.strong_neg && result.sets.abducibles.contains(a.signature())) projected.insert(a);
    result.alternatives.push_back(std::move(projected));
  }
  for (const auto& a : models.front())
    if (a.predicate == kDomPredicate && a.arity() == 1 && !a.strong_neg) result.domain.insert(a.args[0]);
  result.interpretation = result.alternatives.front();
  if (!options.all) result.alternatives.clear();
  return result;
}

bool verify_roundtrip(const Interpretation& candidate, const Program& v, const Interpretation& edited,
                      const std::set<Predicate>& integrity, const SolverConfig& solver) {
  auto models = solve_with(solver, v, candidate);
  if (models.empty()) return false;
  auto expected = edited.restrict_to(integrity);
  return std::all_of(models.begin(), models.end(),
                     [&](const Interpretation& m) { return m.restrict_to(integrity) == expected; });
}

}  // namespace kara
