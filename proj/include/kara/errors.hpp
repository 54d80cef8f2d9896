#pragma once

#include <stdexcept>
#include <string>

namespace kara {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceLocation {
  int line = 0;
  int column = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceLocation loc);
  SourceLocation location() const { return loc_; }

 private:
  SourceLocation loc_;
};

/// A variable of a rule does not occur in its positive body.
class UnsafeRuleError : public ParseError {
 public:
  UnsafeRuleError(std::string variable, SourceLocation loc);
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

/// An interpretation would contain both a and -a.
class InconsistentError : public Error {
 public:
  using Error::Error;
};

class GroundingError : public Error {
 public:
  using Error::Error;
};

/// The built-in evaluator refuses the program (disjunctive heads).
class UnsupportedProgramError : public Error {
 public:
  using Error::Error;
};

}  // namespace kara
