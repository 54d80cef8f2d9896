#include "kara/term.hpp"

#include <functional>
#include <limits>

#include "kara/errors.hpp"

namespace kara {

char arith_symbol(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return '+';
    case ArithOp::Sub: return '-';
    case ArithOp::Mul: return '*';
  }
  return '?';
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::Int;
  t.value_ = value;
  return t;
}

Term Term::symbol(std::string name) {
  Term t;
  t.kind_ = Kind::Sym;
  t.name_ = std::move(name);
  return t;
}

Term Term::string(std::string text) {
  Term t;
  t.kind_ = Kind::Str;
  t.name_ = std::move(text);
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::Var;
  t.name_ = std::move(name);
  return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
  if (args.empty()) return symbol(std::move(name));
  Term t;
  t.kind_ = Kind::Func;
  t.name_ = std::move(name);
  t.args_ = std::move(args);
  return t;
}

Term Term::arith(ArithOp op, Term lhs, Term rhs) {
  Term t;
  t.kind_ = Kind::Arith;
  t.op_ = op;
  t.args_.reserve(2);
  t.args_.push_back(std::move(lhs));
  t.args_.push_back(std::move(rhs));
  return t;
}

Term Term::interval(std::int64_t lo, std::int64_t hi) {
  Term t;
  t.kind_ = Kind::Interval;
  t.value_ = lo;
  t.hi_ = hi;
  return t;
}

bool Term::is_ground() const {
  if (kind_ == Kind::Var) return false;
  for (const auto& a : args_)
    if (!a.is_ground()) return false;
  return true;
}

bool Term::contains_interval() const {
  if (kind_ == Kind::Interval) return true;
  for (const auto& a : args_)
    if (a.contains_interval()) return true;
  return false;
}

bool Term::contains_arith() const {
  if (kind_ == Kind::Arith) return true;
  for (const auto& a : args_)
    if (a.contains_arith()) return true;
  return false;
}

int Term::depth() const {
  if (kind_ != Kind::Func) return 0;
  int d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (kind_ == Kind::Var) {
    out.insert(name_);
    return;
  }
  for (const auto& a : args_) a.collect_vars(out);
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

std::string quote_string(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

namespace {

bool is_additive(const Term& t) {
  return t.kind() == Term::Kind::Arith && t.op() != ArithOp::Mul;
}

}  // namespace

std::string Term::str() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(value_);
    case Kind::Sym:
    case Kind::Var: return name_;
    case Kind::Str: return quote_string(name_);
    case Kind::Func: {
      std::string out = name_ + "(";
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) out += ',';
        out += args_[i].str();
      }
      return out + ")";
    }
    case Kind::Arith: {
      std::string l = lhs().str();
      std::string r = rhs().str();
      if (op_ == ArithOp::Mul) {
        if (is_additive(lhs())) l = "(" + l + ")";
        if (is_additive(rhs())) r = "(" + r + ")";
      } else if (is_additive(rhs())) {
        r = "(" + r + ")";
      }
      // A negative literal on the right would read as "X--1".
      if (rhs().is_int() && rhs().int_value() < 0) r = "(" + r + ")";
      return l + arith_symbol(op_) + r;
    }
    case Kind::Interval: return std::to_string(value_) + ".." + std::to_string(hi_);
  }
  return {};
}

std::string Term::text() const {
  return kind_ == Kind::Str ? name_ : str();
}

std::size_t Term::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::int64_t>{}(value_));
  mix(std::hash<std::string>{}(name_));
  for (const auto& a : args_) mix(a.hash());
  return h;
}

namespace {

int kind_rank(Term::Kind k) {
  switch (k) {
    case Term::Kind::Int: return 0;
    case Term::Kind::Sym:
    case Term::Kind::Func: return 1;
    case Term::Kind::Str: return 2;
    case Term::Kind::Var: return 3;
    case Term::Kind::Arith: return 4;
    case Term::Kind::Interval: return 5;
  }
  return 6;
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = kind_rank(a.kind_) <=> kind_rank(b.kind_); c != 0) return c;
  switch (a.kind_) {
    case Term::Kind::Int: return a.value_ <=> b.value_;
    case Term::Kind::Str:
    case Term::Kind::Var: return a.name_.compare(b.name_) <=> 0;
    case Term::Kind::Interval:
      if (auto c = a.value_ <=> b.value_; c != 0) return c;
      return a.hi_ <=> b.hi_;
    case Term::Kind::Arith:
      if (auto c = a.op_ <=> b.op_; c != 0) return c;
      break;
    case Term::Kind::Sym:
    case Term::Kind::Func:
      if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
      if (auto c = a.name_.compare(b.name_) <=> 0; c != 0) return c;
      break;
  }
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::optional<Term> evaluate(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Arith: {
      auto l = evaluate(t.lhs());
      auto r = evaluate(t.rhs());
      if (!l || !r || !l->is_int() || !r->is_int()) return std::nullopt;
      std::int64_t out = 0;
      bool overflow = false;
      switch (t.op()) {
        case ArithOp::Add: overflow = __builtin_add_overflow(l->int_value(), r->int_value(), &out); break;
        case ArithOp::Sub: overflow = __builtin_sub_overflow(l->int_value(), r->int_value(), &out); break;
        case ArithOp::Mul: overflow = __builtin_mul_overflow(l->int_value(), r->int_value(), &out); break;
      }
      if (overflow) throw GroundingError("integer overflow evaluating " + t.str());
      return Term::integer(out);
    }
    case Term::Kind::Func: {
      if (!t.contains_arith()) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) {
        auto v = evaluate(a);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      return Term::function(t.name(), std::move(args));
    }
    default: return t;
  }
}

}  // namespace kara
