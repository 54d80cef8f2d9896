#include "kara/program.hpp"

#include <charconv>

namespace kara {

ParseError::ParseError(const std::string& message, SourceLocation loc)
    : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message), loc_(loc) {}

UnsafeRuleError::UnsafeRuleError(std::string variable, SourceLocation loc)
    : ParseError("unsafe rule: variable " + variable + " does not occur in the positive body", loc),
      variable_(std::move(variable)) {}

Predicate Predicate::parse(std::string_view text) {
  auto slash = text.rfind('/');
  if (slash == std::string_view::npos || slash == 0)
    throw Error("predicate must be written name/arity: " + std::string(text));
  Predicate p;
  p.name = std::string(text.substr(0, slash));
  auto digits = text.substr(slash + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p.arity);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw Error("bad arity in predicate " + std::string(text));
  return p;
}

std::string Predicate::str() const { return name + "/" + std::to_string(arity); }

bool Atom::is_ground() const {
  for (const auto& a : args)
    if (!a.is_ground()) return false;
  return true;
}

void Atom::collect_vars(std::set<std::string>& out) const {
  for (const auto& a : args) a.collect_vars(out);
}

Atom Atom::complement() const {
  Atom c = *this;
  c.strong_neg = !strong_neg;
  return c;
}

std::string Atom::str() const {
  std::string out = strong_neg ? "-" : "";
  out += predicate;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += args[i].str();
    }
    out += ')';
  }
  return out;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate.compare(b.predicate) <=> 0; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  if (auto c = a.strong_neg <=> b.strong_neg; c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

const char* cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool Comparison::holds_ground(const Term& l, const Term& r) const {
  auto c = l <=> r;
  switch (op) {
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Gt: return c > 0;
    case CmpOp::Ge: return c >= 0;
    case CmpOp::Eq: return c == 0;
    case CmpOp::Ne: return c != 0;
  }
  return false;
}

std::string Comparison::str() const {
  return lhs.str() + cmp_symbol(op) + rhs.str();
}

bool Rule::is_ground() const {
  auto ground = [](const std::vector<Atom>& atoms) {
    for (const auto& a : atoms)
      if (!a.is_ground()) return false;
    return true;
  };
  if (!ground(head) || !ground(pos) || !ground(naf)) return false;
  for (const auto& b : builtins)
    if (!b.lhs.is_ground() || !b.rhs.is_ground()) return false;
  return true;
}

std::set<std::string> Rule::vars() const {
  std::set<std::string> out;
  for (const auto* atoms : {&head, &pos, &naf})
    for (const auto& a : *atoms) a.collect_vars(out);
  for (const auto& b : builtins) {
    b.lhs.collect_vars(out);
    b.rhs.collect_vars(out);
  }
  return out;
}

std::string Rule::str() const {
  std::string out;
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i) out += " | ";
    out += head[i].str();
  }
  std::vector<std::string> body;
  for (const auto& a : pos) body.push_back(a.str());
  for (const auto& a : naf) body.push_back("not " + a.str());
  for (const auto& b : builtins) body.push_back(b.str());
  if (!body.empty()) {
    out += head.empty() ? ":- " : " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i];
    }
  } else if (head.empty()) {
    out += ":- ";
  }
  return out + ".";
}

Rule Rule::fact(Atom a) {
  Rule r;
  r.head.push_back(std::move(a));
  return r;
}

Rule Rule::constraint(std::vector<Atom> pos, std::vector<Atom> naf) {
  Rule r;
  r.pos = std::move(pos);
  r.naf = std::move(naf);
  return r;
}

std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
  if (auto c = a.head <=> b.head; c != 0) return c;
  if (auto c = a.pos <=> b.pos; c != 0) return c;
  if (auto c = a.naf <=> b.naf; c != 0) return c;
  return a.builtins <=> b.builtins;
}

void Program::append(const Program& other) {
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
}

std::set<Predicate> Program::predicates() const {
  std::set<Predicate> out;
  for (const auto& r : rules)
    for (const auto* atoms : {&r.head, &r.pos, &r.naf})
      for (const auto& a : *atoms) out.insert(a.signature());
  return out;
}

std::string Program::str() const {
  std::string out;
  for (const auto& r : rules) {
    out += r.str();
    out += '\n';
  }
  return out;
}

}  // namespace kara
