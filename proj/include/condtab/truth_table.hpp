#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "condtab/formula.hpp"

namespace condtab {

/// Raised when a propositional-only routine receives a formula containing >.
class NotPropositional : public std::invalid_argument {
 public:
  explicit NotPropositional(const Formula& f)
      : std::invalid_argument("formula contains a conditional: " + f.str()) {}
};

using Assignment = std::map<std::string, bool>;

/// Classical value of a conditional-free formula. Atoms missing from the
/// assignment are false.
bool evaluate(const Formula& f, const Assignment& assignment);

/// Full truth table over `atoms` (in the given order); bit k of the result is
/// the value under the assignment whose i-th atom is bit i of k.
std::vector<std::uint64_t> truth_table(const Formula& f, const std::vector<std::string>& atoms);

/// a and b agree on all assignments to their combined atoms.
bool truth_table_equiv(const Formula& a, const Formula& b);

/// a is a tautology.
bool is_top(const Formula& a);

/// Upper bound on distinct atoms the truth-table routines accept.
inline constexpr std::size_t kMaxTruthTableAtoms = 20;

}  // namespace condtab
