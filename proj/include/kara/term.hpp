#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace kara {

enum class ArithOp : std::uint8_t { Add, Sub, Mul };

char arith_symbol(ArithOp op);

/// A term of the dialect: integers, constants, strings, variables, function
/// terms, integer arithmetic and (inside facts only) intervals.
///
/// Terms are plain values. Ordering is total: integers < constants and
/// function terms (by arity, name, then arguments) < strings < variables <
/// arithmetic < intervals. Ground comparisons in rule bodies use this order.
class Term {
 public:
  enum class Kind : std::uint8_t { Int, Sym, Str, Var, Func, Arith, Interval };

  Term() = default;

  static Term integer(std::int64_t value);
  static Term symbol(std::string name);
  static Term string(std::string text);
  static Term variable(std::string name);
  /// A function term; with no arguments this is the constant `name`.
  static Term function(std::string name, std::vector<Term> args);
  static Term arith(ArithOp op, Term lhs, Term rhs);
  static Term interval(std::int64_t lo, std::int64_t hi);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_symbolic() const { return kind_ == Kind::Sym || kind_ == Kind::Func; }

  std::int64_t int_value() const { return value_; }
  /// Constant, variable or functor name; the text of a string term.
  const std::string& name() const { return name_; }
  std::span<const Term> args() const { return args_; }
  ArithOp op() const { return op_; }
  std::int64_t lo() const { return value_; }
  std::int64_t hi() const { return hi_; }
  const Term& lhs() const { return args_[0]; }
  const Term& rhs() const { return args_[1]; }

  bool is_ground() const;
  bool contains_interval() const;
  bool contains_arith() const;
  /// Function nesting depth: constants and numbers have depth 0, f(a) has 1.
  int depth() const;
  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

  /// Dialect syntax; strings are quoted and escaped.
  std::string str() const;
  /// Strings unquoted, everything else as str().
  std::string text() const;

  std::size_t hash() const;

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  Kind kind_ = Kind::Int;
  ArithOp op_ = ArithOp::Add;
  std::int64_t value_ = 0;
  std::int64_t hi_ = 0;
  std::string name_;
  std::vector<Term> args_;
};

std::string quote_string(const std::string& text);

/// Evaluates ground arithmetic. Returns nullopt when an operand is not an
/// integer (undefined arithmetic); throws GroundingError on overflow.
std::optional<Term> evaluate(const Term& ground);

}  // namespace kara
