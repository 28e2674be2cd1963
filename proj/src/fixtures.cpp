#include "condtab/fixtures.hpp"

#include <map>

namespace condtab {

namespace {

Label root() { return Label(World::Constant(1)); }

Label at(World head) { return Label::Pair(std::move(head), root()); }

LSFormula ls(Sign s, const std::string& f, Label l) { return {{s, parse(f)}, std::move(l)}; }

class Renamer {
 public:
  Label rename(const Label& l) {
    std::optional<Label> out;
    for (const World& w : l.worlds()) {
      auto& table = w.is_constant() ? constants_ : variables_;
      auto [it, fresh] = table.emplace(w.id, static_cast<int>(table.size()) + 1);
      (void)fresh;
      World r = w;
      r.id = it->second;
      out = out ? Label::Pair(std::move(r), *out) : Label(std::move(r));
    }
    return *out;
  }

 private:
  std::map<int, int> constants_;
  std::map<int, int> variables_;
};

std::string ordered(const LSFormula& a, const LSFormula& b) {
  Renamer r;
  const LSFormula ra{a.signed_formula, r.rename(a.label)};
  const LSFormula rb{b.signed_formula, r.rename(b.label)};
  return ra.str() + "  x  " + rb.str();
}

bool same_entry(const EquivEntry& x, const EquivEntry& y) {
  Renamer rx;
  Renamer ry;
  if (rx.rename(x.base) != ry.rename(y.base)) return false;
  return (index_equivalent(x.a, y.a) && index_equivalent(x.b, y.b)) ||
         (index_equivalent(x.a, y.b) && index_equivalent(x.b, y.a));
}

}  // namespace

std::string canonical_pair(const LSFormula& a, const LSFormula& b) {
  return std::min(ordered(a, b), ordered(b, a));
}

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    const Formula A = Formula::Atom("A");
    const Formula B = Formula::Atom("B");
    std::vector<Fixture> v;
    v.push_back({"tautological-antecedent", "((A | ~A) > B) -> (C > B)",
                 ls(Sign::kT, "B", at(World::Variable(1, parse("A | ~A")))),
                 ls(Sign::kF, "B", at(World::Constant(2, parse("C")))), std::nullopt});
    v.push_back({"impossible-antecedent", "(A & ~A) > B",
                 ls(Sign::kT, "A", at(World::Constant(2, parse("A & ~A")))),
                 ls(Sign::kF, "A", at(World::Constant(2, parse("A & ~A")))), std::nullopt});
    v.push_back({"equivalent-antecedents", "((~A | B) > C) -> ((A -> B) > C)",
                 ls(Sign::kT, "C", at(World::Variable(1, parse("~A | B")))),
                 ls(Sign::kF, "C", at(World::Constant(2, parse("A -> B")))), std::nullopt});
    v.push_back({"sphere-identity", "((A > B) & (B > A)) -> ((A > C) -> (B > C))",
                 ls(Sign::kT, "C", at(World::Variable(3, A))),
                 ls(Sign::kF, "C", at(World::Constant(2, B))), EquivEntry{A, B, root()}});
    return v;
  }();
  return fixtures;
}

FixtureResult replay(const Fixture& fx, const ProverConfig& config) {
  FixtureResult r;
  r.name = fx.name;
  r.expected = canonical_pair(fx.first, fx.second);
  const Verdict v = prove(parse(fx.formula), config);
  r.valid = v.valid();
  if (v.tree.branches.size() != 1 || !v.tree.branches.front().closing) {
    r.actual = v.valid() ? "several branches" : "open";
    r.closing_match = false;
    r.registry_match = !fx.registry;
    return r;
  }
  const BranchRecord& b = v.tree.branches.front();
  r.actual = canonical_pair(b.closing->first.ls(), b.closing->second.ls());
  r.closing_match = r.actual == r.expected;
  if (fx.registry) {
    r.registry_match = false;
    for (const RegistryEvent& e : b.registry) {
      if (same_entry(e.entry, *fx.registry)) r.registry_match = true;
    }
  }
  return r;
}

}  // namespace condtab
