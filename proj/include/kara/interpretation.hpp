#pragma once

#include <set>
#include <string>

#include "kara/program.hpp"

namespace kara {

/// A consistent finite set of ground literals. Inserting a literal whose
/// complement is present throws InconsistentError.
class Interpretation {
 public:
  using const_iterator = std::set<Atom>::const_iterator;

  Interpretation() = default;
  Interpretation(std::initializer_list<Atom> atoms);

  void insert(const Atom& atom);
  bool erase(const Atom& atom);
  bool contains(const Atom& atom) const { return atoms_.contains(atom); }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  const std::set<Atom>& atoms() const { return atoms_; }

  /// Atoms whose predicate/arity is in `preds`.
  Interpretation restrict_to(const std::set<Predicate>& preds) const;
  std::size_t count(std::string_view predicate) const;

  /// One fact per line in dialect syntax.
  std::string to_facts() const;
  /// Space separated, as in a clasp witness line.
  std::string str() const;
  Program as_program() const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::set<Atom> atoms_;
};

}  // namespace kara
