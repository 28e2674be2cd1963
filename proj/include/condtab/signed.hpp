#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "condtab/formula.hpp"

namespace condtab {

enum class Sign : bool { kF = false, kT = true };

inline Sign flip(Sign s) { return s == Sign::kT ? Sign::kF : Sign::kT; }
inline char sign_char(Sign s) { return s == Sign::kT ? 'T' : 'F'; }

struct SignedFormula {
  Sign sign;
  Formula formula;

  static SignedFormula T(Formula f) { return {Sign::kT, std::move(f)}; }
  static SignedFormula F(Formula f) { return {Sign::kF, std::move(f)}; }

  std::string str() const;

  friend bool operator==(const SignedFormula& a, const SignedFormula& b) {
    return a.sign == b.sign && a.formula == b.formula;
  }
  friend bool operator!=(const SignedFormula& a, const SignedFormula& b) { return !(a == b); }
  friend bool operator<(const SignedFormula& a, const SignedFormula& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    return a.formula < b.formula;
  }
};

std::ostream& operator<<(std::ostream& os, const SignedFormula& x);

/// Flips the sign only.
inline SignedFormula conjugate(const SignedFormula& x) { return {flip(x.sign), x.formula}; }

/// Linear rule: every component holds whenever the formula does.
struct Alpha {
  std::vector<SignedFormula> components;  // one or two
};

/// Branching rule: at least one of the two components holds.
struct Beta {
  SignedFormula first;
  SignedFormula second;
};

struct Literal {};

struct TrueConditional {
  Formula antecedent;
  Formula consequent;
};

struct FalseConditional {
  Formula antecedent;
  Formula consequent;
};

using Classification = std::variant<Alpha, Beta, Literal, TrueConditional, FalseConditional>;

/// Uniform alpha/beta notation. Negation is a one-component alpha and the
/// biconditional is read as (A -> B) & (B -> A).
Classification classify(const SignedFormula& x);

inline bool is_alpha(const Classification& c) { return std::holds_alternative<Alpha>(c); }
inline bool is_beta(const Classification& c) { return std::holds_alternative<Beta>(c); }

}  // namespace condtab
