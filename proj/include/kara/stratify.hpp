#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kara/program.hpp"

namespace kara {

/// Predicate with its strong-negation sign; -p and p are distinct nodes of
/// the dependency graph.
struct SignedPredicate {
  Predicate pred;
  bool strong_neg = false;

  std::string str() const;
  auto operator<=>(const SignedPredicate&) const = default;
};

struct Stratification {
  bool stratified = true;
  /// Stratum of every predicate occurring in the program; predicates without
  /// rules sit in stratum 0.
  std::map<SignedPredicate, int> stratum;
  int strata_count = 0;
  /// Predicates of a negative cycle when not stratified.
  std::vector<SignedPredicate> cycle;
};

/// Predicate-level stratification. Negative dependencies on predicates in
/// `ignored` (the guess predicates, sign-insensitive) are not considered.
Stratification stratify(const Program& program, const std::set<Predicate>& ignored = {});

}  // namespace kara
