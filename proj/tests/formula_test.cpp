#include <gtest/gtest.h>

#include <random>

#include "condtab/corpus.hpp"
#include "condtab/formula.hpp"
#include "condtab/signed.hpp"
#include "condtab/truth_table.hpp"
#include "oracles.hpp"

using namespace condtab;

namespace {

Formula A() { return Formula::Atom("A"); }
Formula B() { return Formula::Atom("B"); }

}  // namespace

TEST(Parse, Atom) {
  const Formula f = parse("A");
  EXPECT_TRUE(f.is_atom());
  EXPECT_EQ(f.name(), "A");
}

TEST(Parse, TautologicalAntecedentShape) {
  const Formula f = parse("((A | ~A) > B) -> (C > B)");
  ASSERT_EQ(f.kind(), Connective::kImplies);
  EXPECT_EQ(f.left(), Formula::Cond(Formula::Or(A(), Formula::Not(A())), B()));
  EXPECT_EQ(f.right(), Formula::Cond(Formula::Atom("C"), B()));
}

TEST(Parse, ImpossibleAntecedentShape) {
  EXPECT_EQ(parse("(A & ~A) > B"), Formula::Cond(Formula::And(A(), Formula::Not(A())), B()));
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse("A & B | C"), parse("(A & B) | C"));
  EXPECT_EQ(parse("A -> B -> C"), parse("A -> (B -> C)"));
  EXPECT_EQ(parse("~A > B"), parse("(~A) > B"));
}

TEST(Parse, ErrorCarriesPosition) {
  try {
    parse("A & ");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
  EXPECT_THROW(parse("A B"), ParseError);
  EXPECT_THROW(parse("(A"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, RoundTripOnRandomFormulas) {
  std::mt19937_64 rng(7);
  CorpusOptions opts;
  opts.depth_budget = 5;
  for (int k = 0; k < 2000; ++k) {
    const Formula f = random_formula(rng, opts);
    EXPECT_EQ(parse(f.str()), f) << f.str();
  }
}

TEST(Fragment, FlatFormulaIsAccepted) {
  EXPECT_FALSE(check_flat_fragment(parse("((A | ~A) > B) -> (C > B)")));
  EXPECT_FALSE(check_flat_fragment(parse("A > (B > C)")));
}

TEST(Fragment, NestedAntecedentReportsPath) {
  const auto v = check_flat_fragment(parse("(A > B) > C"));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->path, "/antecedent");
  EXPECT_EQ(v->subformula, parse("A > B"));
  const auto deep = check_flat_fragment(parse("D -> ((~(A > B)) > C)"));
  ASSERT_TRUE(deep);
  EXPECT_EQ(deep->path, "/right/antecedent/operand");
}

TEST(Signed, ConjugateFlipsSignOnly) {
  EXPECT_EQ(conjugate(SignedFormula::T(A())), SignedFormula::F(A()));
  const Formula c = parse("A > B");
  EXPECT_EQ(conjugate(SignedFormula::F(c)), SignedFormula::T(c));
  const auto x = SignedFormula::T(parse("A & B"));
  EXPECT_EQ(conjugate(conjugate(x)), x);
}

TEST(Classify, AlphaBetaTable) {
  const auto ta = classify(SignedFormula::T(parse("A & B")));
  ASSERT_TRUE(is_alpha(ta));
  EXPECT_EQ(std::get<Alpha>(ta).components,
            (std::vector{SignedFormula::T(A()), SignedFormula::T(B())}));

  const auto tb = classify(SignedFormula::T(parse("A | B")));
  ASSERT_TRUE(is_beta(tb));
  EXPECT_EQ(std::get<Beta>(tb).first, SignedFormula::T(A()));
  EXPECT_EQ(std::get<Beta>(tb).second, SignedFormula::T(B()));

  const auto fc = classify(SignedFormula::F(parse("A > B")));
  ASSERT_TRUE(std::holds_alternative<FalseConditional>(fc));
  EXPECT_EQ(std::get<FalseConditional>(fc).antecedent, A());
  EXPECT_EQ(std::get<FalseConditional>(fc).consequent, B());
}

TEST(Classify, TotalOverSignAndConnective) {
  const char* texts[] = {"A", "~A", "A & B", "A | B", "A -> B", "A <-> B", "A > B"};
  for (const char* t : texts) {
    for (Sign s : {Sign::kT, Sign::kF}) {
      const auto c = classify({s, parse(t)});
      const bool expected_alpha =
          std::string_view(t) == "~A" || (s == Sign::kT && std::string_view(t) == "A & B") ||
          (s == Sign::kF && (std::string_view(t) == "A | B" || std::string_view(t) == "A -> B")) ||
          (s == Sign::kT && std::string_view(t) == "A <-> B");
      EXPECT_EQ(is_alpha(c), expected_alpha) << sign_char(s) << " " << t;
    }
  }
  EXPECT_TRUE(std::holds_alternative<Literal>(classify(SignedFormula::F(A()))));
  EXPECT_TRUE(std::holds_alternative<TrueConditional>(classify(SignedFormula::T(parse("A > B")))));
}

TEST(Classify, NegationIsOneComponentAlpha) {
  EXPECT_EQ(std::get<Alpha>(classify(SignedFormula::T(parse("~A")))).components,
            std::vector{SignedFormula::F(A())});
  EXPECT_EQ(std::get<Alpha>(classify(SignedFormula::F(parse("~A")))).components,
            std::vector{SignedFormula::T(A())});
}

TEST(TruthTable, Examples) {
  EXPECT_TRUE(truth_table_equiv(parse("~A | B"), parse("A -> B")));
  EXPECT_TRUE(truth_table_equiv(A(), A()));
  EXPECT_FALSE(truth_table_equiv(A(), B()));
  EXPECT_THROW(truth_table_equiv(parse("A > B"), A()), NotPropositional);
}

TEST(TruthTable, IsTop) {
  EXPECT_TRUE(is_top(parse("A | ~A")));
  EXPECT_FALSE(is_top(parse("A & ~A")));
  EXPECT_FALSE(is_top(A()));
  EXPECT_THROW(is_top(parse("A > A")), NotPropositional);
}

TEST(TruthTable, IffDesugaringPreservesTables) {
  std::mt19937_64 rng(11);
  CorpusOptions opts;
  opts.allow_conditionals = false;
  opts.depth_budget = 3;
  for (int k = 0; k < 300; ++k) {
    const Formula a = random_formula(rng, opts);
    const Formula b = random_formula(rng, opts);
    EXPECT_TRUE(truth_table_equiv(Formula::Iff(a, b),
                                  Formula::And(Formula::Implies(a, b), Formula::Implies(b, a))));
  }
}

TEST(TruthTable, IsTopMatchesOracleOverThreeAtoms) {
  // Three atoms at depth 3 is about 2e8 formulas; depth 2 keeps this quick.
  // The acceptance run sweeps two atoms at depth 3.
  const Formula top = parse("D | ~D");
  for_each_propositional({"A", "B", "C"}, 2, [&](const Formula& f) {
    EXPECT_EQ(is_top(f), oracle::tautology(f)) << f.str();
    EXPECT_EQ(is_top(f), truth_table_equiv(f, top)) << f.str();
  });
}

TEST(TruthTable, AgreesWithOracleOnRandomPairs) {
  std::mt19937_64 rng(5);
  CorpusOptions opts;
  opts.allow_conditionals = false;
  for (int k = 0; k < 500; ++k) {
    const Formula a = random_formula(rng, opts);
    const Formula b = random_formula(rng, opts);
    EXPECT_EQ(truth_table_equiv(a, b), oracle::equivalent(a, b)) << a << " / " << b;
  }
}
