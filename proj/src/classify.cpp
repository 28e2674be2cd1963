#include "condtab/signed.hpp"

namespace condtab {

std::string SignedFormula::str() const {
  std::string s(1, sign_char(sign));
  s += ' ';
  s += formula.str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const SignedFormula& x) { return os << x.str(); }

Classification classify(const SignedFormula& x) {
  const Formula& f = x.formula;
  const bool t = x.sign == Sign::kT;
  switch (f.kind()) {
    case Connective::kAtom:
      return Literal{};
    case Connective::kNot:
      return Alpha{{{flip(x.sign), f.operand()}}};
    case Connective::kAnd:
      if (t) return Alpha{{SignedFormula::T(f.left()), SignedFormula::T(f.right())}};
      return Beta{SignedFormula::F(f.left()), SignedFormula::F(f.right())};
    case Connective::kOr:
      if (t) return Beta{SignedFormula::T(f.left()), SignedFormula::T(f.right())};
      return Alpha{{SignedFormula::F(f.left()), SignedFormula::F(f.right())}};
    case Connective::kImplies:
      if (t) return Beta{SignedFormula::F(f.left()), SignedFormula::T(f.right())};
      return Alpha{{SignedFormula::T(f.left()), SignedFormula::F(f.right())}};
    case Connective::kIff: {
      Formula forward = Formula::Implies(f.left(), f.right());
      Formula backward = Formula::Implies(f.right(), f.left());
      if (t) return Alpha{{SignedFormula::T(forward), SignedFormula::T(backward)}};
      return Beta{SignedFormula::F(forward), SignedFormula::F(backward)};
    }
    case Connective::kCond:
      if (t) return TrueConditional{f.antecedent(), f.consequent()};
      return FalseConditional{f.antecedent(), f.consequent()};
  }
  return Literal{};
}

}  // namespace condtab
