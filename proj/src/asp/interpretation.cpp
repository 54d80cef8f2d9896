#include "kara/interpretation.hpp"

namespace kara {

Interpretation::Interpretation(std::initializer_list<Atom> atoms) {
  for (const auto& a : atoms) insert(a);
}

void Interpretation::insert(const Atom& atom) {
  if (!atom.is_ground()) throw Error("interpretation literal is not ground: " + atom.str());
  if (atoms_.contains(atom.complement()))
    throw InconsistentError("inconsistent interpretation: contains both " + atom.str() + " and " +
                            atom.complement().str());
  atoms_.insert(atom);
}

bool Interpretation::erase(const Atom& atom) { return atoms_.erase(atom) > 0; }

Interpretation Interpretation::restrict_to(const std::set<Predicate>& preds) const {
  Interpretation out;
  for (const auto& a : atoms_)
    if (preds.contains(a.signature())) out.atoms_.insert(a);
  return out;
}

std::size_t Interpretation::count(std::string_view predicate) const {
  std::size_t n = 0;
  for (const auto& a : atoms_)
    if (a.predicate == predicate) ++n;
  return n;
}

std::string Interpretation::to_facts() const {
  std::string out;
  for (const auto& a : atoms_) {
    out += a.str();
    out += ".\n";
  }
  return out;
}

std::string Interpretation::str() const {
  std::string out;
  for (const auto& a : atoms_) {
    if (!out.empty()) out += ' ';
    out += a.str();
  }
  return out;
}

Program Interpretation::as_program() const {
  Program p;
  p.rules.reserve(atoms_.size());
  for (const auto& a : atoms_) p.rules.push_back(Rule::fact(a));
  return p;
}

}  // namespace kara
