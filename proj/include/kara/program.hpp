#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kara/errors.hpp"
#include "kara/term.hpp"

namespace kara {

/// Predicate name plus arity; strong negation is not part of the key.
struct Predicate {
  std::string name;
  std::size_t arity = 0;

  /// Parses "name/arity".
  static Predicate parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const Predicate&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  bool strong_neg = false;

  Atom() = default;
  Atom(std::string pred, std::vector<Term> arguments, bool negated = false)
      : predicate(std::move(pred)), args(std::move(arguments)), strong_neg(negated) {}

  Predicate signature() const { return {predicate, args.size()}; }
  std::size_t arity() const { return args.size(); }
  bool is_ground() const;
  void collect_vars(std::set<std::string>& out) const;
  /// The atom with the opposite strong-negation sign.
  Atom complement() const;
  std::string str() const;

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }
};

enum class CmpOp : std::uint8_t { Lt, Le, Gt, Ge, Eq, Ne };

const char* cmp_symbol(CmpOp op);

struct Comparison {
  CmpOp op = CmpOp::Eq;
  Term lhs;
  Term rhs;

  /// Both sides must be ground and evaluable.
  bool holds_ground(const Term& l, const Term& r) const;
  std::string str() const;

  friend std::strong_ordering operator<=>(const Comparison&, const Comparison&) = default;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// head :- pos, not naf, builtins.  An empty head is a constraint; more than
/// one head atom is a disjunction.
struct Rule {
  std::vector<Atom> head;
  std::vector<Atom> pos;
  std::vector<Atom> naf;
  std::vector<Comparison> builtins;
  SourceLocation loc;

  bool is_constraint() const { return head.empty(); }
  bool is_disjunctive() const { return head.size() > 1; }
  bool is_fact() const { return head.size() == 1 && pos.empty() && naf.empty() && builtins.empty(); }
  bool is_ground() const;
  std::set<std::string> vars() const;
  std::string str() const;

  static Rule fact(Atom a);
  static Rule constraint(std::vector<Atom> pos, std::vector<Atom> naf);

  // Source locations do not take part in rule identity.
  friend std::strong_ordering operator<=>(const Rule& a, const Rule& b);
  friend bool operator==(const Rule& a, const Rule& b) { return (a <=> b) == 0; }
};

struct Program {
  std::vector<Rule> rules;

  void append(const Program& other);
  /// Predicates occurring anywhere (heads and bodies).
  std::set<Predicate> predicates() const;
  /// Dialect text, one rule per line.
  std::string str() const;

  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace kara
