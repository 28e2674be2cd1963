#include <gtest/gtest.h>

#include <random>

#include "condtab/label.hpp"
#include "condtab/truth_table.hpp"
#include "generators.hpp"

using namespace condtab;

namespace {

World w(int id, std::optional<Formula> index = std::nullopt) {
  return World::Constant(id, std::move(index));
}
World W(int id, std::optional<Formula> index = std::nullopt) {
  return World::Variable(id, std::move(index));
}
Label L(World a) { return Label(std::move(a)); }
Label L(World h, const Label& b) { return Label::Pair(std::move(h), b); }

Label strip(const Label& l) {
  Label out(World{l.head_at(1).kind, l.head_at(1).id, std::nullopt});
  for (int p = 2; p <= l.length(); ++p) {
    out = Label::Pair(World{l.head_at(p).kind, l.head_at(p).id, std::nullopt}, out);
  }
  return out;
}

}  // namespace

TEST(Label, HeadBodyLength) {
  const Label i = L(W(1), L(w(1)));
  EXPECT_EQ(i.head(), W(1));
  EXPECT_EQ(i.body(), L(w(1)));
  EXPECT_EQ(L(w(1)).length(), 1);
  EXPECT_THROW(L(w(1)).body(), std::out_of_range);
}

TEST(Label, SegmentAndHeadAt) {
  const Label i = L(w(2), L(W(1), L(w(1))));
  EXPECT_EQ(i.segment(2), L(W(1), L(w(1))));
  EXPECT_EQ(i.segment(3), i);
  EXPECT_EQ(i.head_at(3), i.head());
  EXPECT_EQ(i.head_at(1), w(1));
  EXPECT_THROW(i.segment(0), std::out_of_range);
  EXPECT_THROW(i.segment(4), std::out_of_range);
}

TEST(Label, Rendering) {
  EXPECT_EQ(L(W(1, parse("~A | B")), L(w(1))).str(), "(W1^(~A | B), w1)");
  EXPECT_FALSE(L(W(1), L(w(1))).is_ground());
  EXPECT_TRUE(L(w(2), L(w(1))).is_ground());
}

TEST(Countersegment, Examples) {
  const Label w0 = L(w(0));
  EXPECT_EQ(countersegment(L(w(2), L(W(1), L(w(1)))), 1, w0), L(w(2), L(W(1), L(w(0)))));
  EXPECT_EQ(countersegment(L(W(1), L(w(1))), 1, w0), L(W(1), L(w(0))));
  const Label i = L(W(1), L(w(1)));
  EXPECT_THROW(countersegment(i, i.length(), w0), std::out_of_range);
}

TEST(Countersegment, LengthProperty) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    const int len = 2 + static_cast<int>(gen::draw(rng, 4));
    const Label i = gen::random_label(rng, len);
    for (int n = 1; n < len; ++n) {
      EXPECT_EQ(countersegment(i, n, L(w(0))).length(), i.length() - n + 1);
    }
  }
}

TEST(SigmaUnify, LinksVariablesToAtoms) {
  const auto s = sigma_unify(L(w(3), L(W(1), L(w(1)))), L(W(3), L(w(2), L(w(1)))));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->resolve(W(3)), w(3));
  EXPECT_EQ(s->resolve(W(1)), w(2));
}

TEST(SigmaUnify, TrivialAndFailingCases) {
  const auto same = sigma_unify(L(w(1)), L(w(1)));
  ASSERT_TRUE(same);
  EXPECT_TRUE(same->empty());
  EXPECT_FALSE(sigma_unify(L(w(2), L(w(1))), L(w(3), L(w(1)))));
  EXPECT_FALSE(sigma_unify(L(w(1)), L(w(2), L(w(1)))));
}

TEST(SigmaUnify, SharedVariableMustStayConsistent) {
  // W1 cannot stand for both w2 and w3.
  EXPECT_FALSE(sigma_unify(L(W(1), L(W(1), L(w(1)))), L(w(2), L(w(3), L(w(1))))));
  EXPECT_TRUE(sigma_unify(L(W(1), L(W(1), L(w(1)))), L(w(2), L(w(2), L(w(1))))));
}

TEST(SigmaUnify, SymmetricAndIndexBlind) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 1000; ++k) {
    const Label i = gen::random_label(rng, 1 + static_cast<int>(gen::draw(rng, 4)));
    const Label j = gen::neighbour(rng, i);
    const auto ij = sigma_unify(i, j);
    const auto ji = sigma_unify(j, i);
    ASSERT_EQ(ij.has_value(), ji.has_value()) << i << " / " << j;
    EXPECT_EQ(ij.has_value(), sigma_unify(strip(i), strip(j)).has_value());
    if (!ij) continue;
    // Either substitution makes the two labels atomwise equal.
    for (const auto* s : {&*ij, &*ji}) {
      const Label a = s->apply(i);
      const Label b = s->apply(j);
      for (int p = 1; p <= i.length(); ++p) {
        EXPECT_TRUE(a.head_at(p).same_symbol(b.head_at(p))) << i << " / " << j;
      }
    }
  }
}

TEST(SigmaCondUnify, TautologicalIndexOnVariable) {
  EquivRegistry reg;
  const Label i = L(W(1, parse("A | ~A")), L(w(1)));
  const Label j = L(w(2, parse("C")), L(w(1)));
  EXPECT_TRUE(sigma_cond_unify(i, j, reg));
  EXPECT_TRUE(sigma_cond_unify(j, i, reg));
  EXPECT_FALSE(sigma_cond_unify(i, j, reg, UnifyOptions{false}));
}

TEST(SigmaCondUnify, EquivalentIndexes) {
  EquivRegistry reg;
  EXPECT_TRUE(sigma_cond_unify(L(W(1, parse("~A | B")), L(w(1))),
                               L(w(2, parse("A -> B")), L(w(1))), reg));
}

TEST(SigmaCondUnify, RegistryEnablesDistinctIndexes) {
  EquivRegistry reg;
  const Label i = L(W(3, parse("A")), L(w(1)));
  const Label j = L(w(2, parse("B")), L(w(1)));
  EXPECT_FALSE(sigma_cond_unify(i, j, reg));
  EXPECT_TRUE(reg.add(parse("A"), parse("B"), L(w(1))));
  EXPECT_FALSE(reg.add(parse("B"), parse("A"), L(w(1))));
  EXPECT_TRUE(sigma_cond_unify(i, j, reg));
  // The entry only speaks about spheres around w1.
  EXPECT_FALSE(sigma_cond_unify(L(W(3, parse("A")), L(w(4))), L(w(2, parse("B")), L(w(4))), reg));
}

TEST(SigmaCondUnify, ImpliesSigmaUnifyAndIsMonotone) {
  std::mt19937_64 rng(21);
  EquivRegistry reg;
  reg.add(parse("A"), parse("B"), L(w(1)));
  reg.add(parse("C"), parse("A & B"), L(w(1)));
  for (int k = 0; k < 1000; ++k) {
    const Label i = gen::random_label(rng, 1 + static_cast<int>(gen::draw(rng, 4)));
    const Label j = gen::neighbour(rng, i);
    const bool plain = sigma_cond_unify(i, j, EquivRegistry{}).has_value();
    if (plain) {
      EXPECT_TRUE(sigma_unify(i, j));
      EXPECT_TRUE(sigma_cond_unify(i, j, reg)) << i << " / " << j;
    }
  }
}

TEST(Extends, Examples) {
  EXPECT_TRUE(extends_immediately(L(w(2, parse("A")), L(w(1))), L(w(1))));
  EXPECT_TRUE(extends(L(w(2), L(W(1), L(w(1)))), L(w(1))));
  EXPECT_FALSE(extends_immediately(L(w(2), L(W(1), L(w(1)))), L(w(1))));
  EXPECT_FALSE(extends(L(w(1)), L(w(2), L(w(1)))));
  EXPECT_TRUE(extends(L(w(3), L(w(2), L(w(1)))), L(W(5), L(w(1)))));
}

TEST(LabelFactory, FreshIds) {
  LabelFactory f;
  EXPECT_EQ(f.fresh_constant(), L(w(1)));
  EXPECT_NE(f.fresh_constant(), f.fresh_constant());
  const Label v = f.fresh_variable(parse("A"));
  EXPECT_TRUE(v.head().is_variable());
  EXPECT_EQ(v.head().index, parse("A"));
}
