#include "kara/parser.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <optional>
#include <set>

namespace kara {
namespace {

enum class Tok {
  Ident,
  Var,
  Int,
  String,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  DotDot,
  If,
  Not,
  Minus,
  Plus,
  Star,
  Pipe,
  Cmp,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  CmpOp cmp = CmpOp::Eq;
  SourceLocation loc;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.loc = {line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      // "221b" style constants: digits glued to identifier characters.
      if (pos_ < src_.size() && ident_char(src_[pos_])) {
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
        return t;
      }
      t.kind = Tok::Int;
      t.text = std::string(src_.substr(start, pos_ - start));
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc{}) throw ParseError("integer out of range: " + t.text, t.loc);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      if (std::isupper(static_cast<unsigned char>(c)) || c == '_')
        t.kind = Tok::Var;
      else if (t.text == "not")
        t.kind = Tok::Not;
      else
        t.kind = Tok::Ident;
      return t;
    }
    if (c == '"') {
      advance();
      std::string text;
      while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", t.loc);
        char d = src_[pos_];
        advance();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= src_.size()) throw ParseError("unterminated string", t.loc);
          char e = src_[pos_];
          advance();
          text += e == 'n' ? '\n' : e;
        } else {
          text += d;
        }
      }
      t.kind = Tok::String;
      t.text = std::move(text);
      return t;
    }

    auto two = src_.substr(pos_, 2);
    auto emit = [&](Tok k, std::size_t len, std::string text) {
      for (std::size_t i = 0; i < len; ++i) advance();
      t.kind = k;
      t.text = std::move(text);
      return t;
    };
    auto cmp = [&](CmpOp op, std::size_t len) {
      t.cmp = op;
      return emit(Tok::Cmp, len, std::string(src_.substr(pos_, len)));
    };
    if (two == ":-") return emit(Tok::If, 2, ":-");
    if (two == "..") return emit(Tok::DotDot, 2, "..");
    if (two == "<=") return cmp(CmpOp::Le, 2);
    if (two == ">=") return cmp(CmpOp::Ge, 2);
    if (two == "==") return cmp(CmpOp::Eq, 2);
    if (two == "!=") return cmp(CmpOp::Ne, 2);
    if (two == "<>") return cmp(CmpOp::Ne, 2);
    switch (c) {
      case '(': return emit(Tok::LParen, 1, "(");
      case ')': return emit(Tok::RParen, 1, ")");
      case '{': return emit(Tok::LBrace, 1, "{");
      case '}': return emit(Tok::RBrace, 1, "}");
      case ',': return emit(Tok::Comma, 1, ",");
      case '.': return emit(Tok::Dot, 1, ".");
      case '-': return emit(Tok::Minus, 1, "-");
      case '+': return emit(Tok::Plus, 1, "+");
      case '*': return emit(Tok::Star, 1, "*");
      case '|': return emit(Tok::Pipe, 1, "|");
      case '<': return cmp(CmpOp::Lt, 1);
      case '>': return cmp(CmpOp::Gt, 1);
      case '=': return cmp(CmpOp::Eq, 1);
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.loc);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {
    cur_ = lex_.next();
    peek_ = lex_.next();
  }

  Program program() {
    Program p;
    while (cur_.kind != Tok::End) {
      Rule r = rule();
      expand_intervals(std::move(r), p);
    }
    return p;
  }

  Atom lone_atom() {
    Atom a = atom_literal();
    expect(Tok::End, "end of input");
    return a;
  }

  Term lone_term() {
    Term t = interval_expr();
    expect(Tok::End, "end of input");
    return t;
  }

  std::vector<Atom> atom_list(bool braces) {
    std::vector<Atom> out;
    if (braces) expect(Tok::LBrace, "'{'");
    Tok close = braces ? Tok::RBrace : Tok::End;
    while (cur_.kind != close) {
      out.push_back(atom_literal());
      if (cur_.kind == Tok::Comma) shift();
      else if (braces && cur_.kind != Tok::RBrace) expect(Tok::Comma, "',' or '}'");
    }
    if (braces) {
      shift();
      expect(Tok::End, "end of input after '}'");
    }
    return out;
  }

 private:
  void shift() {
    cur_ = std::move(peek_);
    peek_ = lex_.next();
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string found = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError("expected " + what + ", found " + found, cur_.loc);
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(what);
    shift();
  }

  Rule rule() {
    Rule r;
    r.loc = cur_.loc;
    anon_ = 0;
    if (cur_.kind != Tok::If) {
      r.head.push_back(atom_literal());
      while (cur_.kind == Tok::Pipe) {
        shift();
        r.head.push_back(atom_literal());
      }
    }
    if (cur_.kind == Tok::If) {
      shift();
      if (cur_.kind != Tok::Dot) {
        body_literal(r);
        while (cur_.kind == Tok::Comma) {
          shift();
          body_literal(r);
        }
      }
    }
    expect(Tok::Dot, "'.'");
    check_rule(r);
    return r;
  }

  void body_literal(Rule& r) {
    if (cur_.kind == Tok::Not) {
      shift();
      r.naf.push_back(atom_literal());
      return;
    }
    if (cur_.kind == Tok::Minus && peek_.kind == Tok::Ident) {
      r.pos.push_back(atom_literal());
      return;
    }
    SourceLocation loc = cur_.loc;
    Term lhs = expr();
    if (cur_.kind == Tok::Cmp) {
      CmpOp op = cur_.cmp;
      shift();
      Term rhs = expr();
      r.builtins.push_back({op, std::move(lhs), std::move(rhs)});
      return;
    }
    r.pos.push_back(to_atom(std::move(lhs), false, loc));
  }

  Atom atom_literal() {
    bool neg = false;
    if (cur_.kind == Tok::Minus) {
      neg = true;
      shift();
    }
    SourceLocation loc = cur_.loc;
    if (cur_.kind != Tok::Ident) fail("atom");
    Term t = primary();
    return to_atom(std::move(t), neg, loc);
  }

  static Atom to_atom(Term t, bool neg, SourceLocation loc) {
    if (!t.is_symbolic()) throw ParseError("expected an atom, found term " + t.str(), loc);
    std::vector<Term> args(t.args().begin(), t.args().end());
    return Atom(t.name(), std::move(args), neg);
  }

  Term interval_expr() {
    SourceLocation loc = cur_.loc;
    Term lo = expr();
    if (cur_.kind != Tok::DotDot) return lo;
    shift();
    Term hi = expr();
    auto l = evaluate(lo);
    auto h = evaluate(hi);
    if (!l || !h || !l->is_int() || !h->is_int())
      throw ParseError("interval bounds must be integers", loc);
    return Term::interval(l->int_value(), h->int_value());
  }

  Term expr() {
    Term t = product();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      ArithOp op = cur_.kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      shift();
      t = Term::arith(op, std::move(t), product());
    }
    return t;
  }

  Term product() {
    Term t = unary();
    while (cur_.kind == Tok::Star) {
      shift();
      t = Term::arith(ArithOp::Mul, std::move(t), unary());
    }
    return t;
  }

  Term unary() {
    if (cur_.kind == Tok::Minus) {
      shift();
      if (cur_.kind == Tok::Int) {
        std::int64_t v = -cur_.value;
        shift();
        return Term::integer(v);
      }
      return Term::arith(ArithOp::Sub, Term::integer(0), unary());
    }
    return primary();
  }

  Term primary() {
    switch (cur_.kind) {
      case Tok::Int: {
        auto v = cur_.value;
        shift();
        return Term::integer(v);
      }
      case Tok::String: {
        auto s = cur_.text;
        shift();
        return Term::string(std::move(s));
      }
      case Tok::Var: {
        std::string name = cur_.text;
        shift();
        if (name == "_") name = "_Anon" + std::to_string(++anon_);
        return Term::variable(std::move(name));
      }
      case Tok::Ident: {
        std::string name = cur_.text;
        shift();
        if (cur_.kind != Tok::LParen) return Term::symbol(std::move(name));
        shift();
        std::vector<Term> args;
        if (cur_.kind != Tok::RParen) {
          args.push_back(interval_expr());
          while (cur_.kind == Tok::Comma) {
            shift();
            args.push_back(interval_expr());
          }
        }
        expect(Tok::RParen, "')'");
        return Term::function(std::move(name), std::move(args));
      }
      case Tok::LParen: {
        shift();
        Term t = expr();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: fail("term");
    }
  }

  static bool has_interval(const Rule& r) {
    for (const auto* atoms : {&r.head, &r.pos, &r.naf})
      for (const auto& a : *atoms)
        for (const auto& t : a.args)
          if (t.contains_interval()) return true;
    for (const auto& b : r.builtins)
      if (b.lhs.contains_interval() || b.rhs.contains_interval()) return true;
    return false;
  }

  static void check_rule(const Rule& r) {
    if (has_interval(r) && !(r.is_fact() && r.is_ground()))
      throw ParseError("intervals are only allowed in ground facts", r.loc);
    std::set<std::string> bound;
    for (const auto& a : r.pos) a.collect_vars(bound);
    std::vector<std::string> ordered;
    auto note = [&](const Term& t) {
      for (const auto& v : t.vars())
        if (!bound.contains(v)) ordered.push_back(v);
    };
    for (const auto* atoms : {&r.head, &r.naf})
      for (const auto& a : *atoms)
        for (const auto& t : a.args) note(t);
    for (const auto& b : r.builtins) {
      note(b.lhs);
      note(b.rhs);
    }
    if (!ordered.empty()) throw UnsafeRuleError(ordered.front(), r.loc);
  }

  // Replaces every interval argument of a fact by each of its values.
  static void expand_intervals(Rule r, Program& out) {
    if (!has_interval(r)) {
      out.rules.push_back(std::move(r));
      return;
    }
    std::function<std::vector<Term>(const Term&)> values = [&](const Term& t) -> std::vector<Term> {
      if (t.kind() == Term::Kind::Interval) {
        std::vector<Term> vs;
        for (std::int64_t i = t.lo(); i <= t.hi(); ++i) vs.push_back(Term::integer(i));
        return vs;
      }
      if (t.kind() == Term::Kind::Func && t.contains_interval()) {
        std::vector<std::vector<Term>> per_arg;
        for (const auto& a : t.args()) per_arg.push_back(values(a));
        std::vector<Term> combos;
        std::vector<Term> current;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == per_arg.size()) {
            combos.push_back(Term::function(t.name(), current));
            return;
          }
          for (const auto& v : per_arg[i]) {
            current.push_back(v);
            rec(i + 1);
            current.pop_back();
          }
        };
        rec(0);
        return combos;
      }
      return {t};
    };
    const Atom& head = r.head.front();
    std::vector<std::vector<Term>> per_arg;
    for (const auto& a : head.args) per_arg.push_back(values(a));
    std::vector<Term> current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == per_arg.size()) {
        Rule f = Rule::fact(Atom(head.predicate, current, head.strong_neg));
        f.loc = r.loc;
        out.rules.push_back(std::move(f));
        return;
      }
      for (const auto& v : per_arg[i]) {
        current.push_back(v);
        rec(i + 1);
        current.pop_back();
      }
    };
    rec(0);
  }

  Lexer lex_;
  Token cur_;
  Token peek_;
  int anon_ = 0;
};

Atom ground_atom(const Atom& a, SourceLocation loc) {
  if (!a.is_ground()) throw ParseError("interpretation literal is not ground: " + a.str(), loc);
  Atom out = a;
  for (auto& t : out.args) {
    auto v = evaluate(t);
    if (!v) throw ParseError("undefined arithmetic in " + a.str(), loc);
    t = std::move(*v);
  }
  return out;
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Interpretation parse_interpretation(std::string_view text, InterpretationFormat format) {
  Interpretation out;
  if (format == InterpretationFormat::Facts) {
    for (const auto& r : parse_program(text).rules) {
      if (!r.is_fact()) throw ParseError("interpretation may only contain facts: " + r.str(), r.loc);
      out.insert(ground_atom(r.head.front(), r.loc));
    }
    return out;
  }
  Parser p(text);
  for (const auto& a : p.atom_list(format == InterpretationFormat::DlvBraces))
    out.insert(ground_atom(a, {}));
  return out;
}

Term parse_term(std::string_view text) { return Parser(text).lone_term(); }

Atom parse_atom(std::string_view text) { return Parser(text).lone_atom(); }

}  // namespace kara
