#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "condtab/formula.hpp"

namespace condtab {

enum class WorldKind : std::uint8_t { kConstant, kVariable };

/// Atomic label: a constant world symbol w<id> or a variable W<id>, optionally
/// indexed by a conditional-free formula.
struct World {
  WorldKind kind = WorldKind::kConstant;
  int id = 1;
  std::optional<Formula> index;

  static World Constant(int id, std::optional<Formula> index = std::nullopt) {
    return {WorldKind::kConstant, id, std::move(index)};
  }
  static World Variable(int id, std::optional<Formula> index = std::nullopt) {
    return {WorldKind::kVariable, id, std::move(index)};
  }

  bool is_constant() const { return kind == WorldKind::kConstant; }
  bool is_variable() const { return kind == WorldKind::kVariable; }
  /// Same symbol, ignoring the index.
  bool same_symbol(const World& o) const { return kind == o.kind && id == o.id; }

  std::string str() const;

  friend bool operator==(const World& a, const World& b) {
    return a.kind == b.kind && a.id == b.id && a.index == b.index;
  }
  friend bool operator<(const World& a, const World& b);
};

/// A world path. Stored root-first: worlds()[0] is h^1 (the rightmost symbol)
/// and worlds().back() is the head. Pair(h, b) has length 1 + length(b).
class Label {
 public:
  explicit Label(World atom) : worlds_{std::move(atom)} {}
  static Label Pair(World head, const Label& body);

  int length() const { return static_cast<int>(worlds_.size()); }
  bool is_atomic() const { return worlds_.size() == 1; }
  /// All symbols constant.
  bool is_ground() const;

  const World& head() const { return worlds_.back(); }
  /// Throws std::out_of_range on atomic labels.
  Label body() const;
  /// The segment of length n, 1 <= n <= length(). segment(length()) is the
  /// label itself.
  Label segment(int n) const;
  /// The n-th world symbol counting from the right, 1 <= n <= length().
  const World& head_at(int n) const;

  std::span<const World> worlds() const { return worlds_; }

  /// Same label with the head's index replaced.
  Label with_head_index(std::optional<Formula> index) const;

  std::string str() const;

  friend bool operator==(const Label& a, const Label& b) { return a.worlds_ == b.worlds_; }
  friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
  friend bool operator<(const Label& a, const Label& b) { return a.worlds_ < b.worlds_; }

 private:
  explicit Label(std::vector<World> worlds) : worlds_(std::move(worlds)) {}
  std::vector<World> worlds_;

  friend Label countersegment(const Label& i, int n, const Label& w0);
  friend class Substitution;
};

std::ostream& operator<<(std::ostream& os, const Label& l);

/// c^n(i): i with its length-n tail replaced by w0, i.e.
/// h(i) x (... x (h^{n+1}(i), w0)). Requires 1 <= n < length(i); with an
/// atomic w0 the result has length l(i) - n + 1.
Label countersegment(const Label& i, int n, const Label& w0);

/// Simultaneous linking of variables to atoms. Every variable maps to exactly
/// one atom; applying twice is the same as applying once.
class Substitution {
 public:
  /// The atom `w` stands for after following bindings.
  World resolve(const World& w) const;
  /// Links the two atoms; false when that would identify distinct constants.
  bool link(const World& a, const World& b);
  Label apply(const Label& l) const;

  const std::map<int, World>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

 private:
  std::map<int, World> bindings_;  // variable id -> atom
};

/// sigma unification: equal length and atomwise linking with one consistent
/// substitution. Constants unify only with the same constant; variables with
/// any atom. Indexes are ignored.
std::optional<Substitution> sigma_unify(const Label& i, const Label& j);

/// Sphere-identity facts established inside a proof: the smallest spheres for
/// `a` and `b` coincide around worlds denoted by `base`.
struct EquivEntry {
  Formula a;
  Formula b;
  Label base;
};

class EquivRegistry {
 public:
  /// Returns false when an equal entry (in either order) is already present.
  bool add(Formula a, Formula b, Label base);
  /// Whether (y, z) is registered, up to propositional equivalence of the
  /// formulas and in either order, with a base that sigma-unifies with both
  /// tails.
  bool covers(const Formula& y, const Formula& z, const Label& tail_i, const Label& tail_j) const;

  const std::vector<EquivEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<EquivEntry> entries_;
};

struct UnifyOptions {
  /// Accept a variable whose index is a tautology against any index at the
  /// same position.
  bool top_clause = true;
};

/// Conditional unification: sigma_unify plus, at every aligned position where
/// an index is present, (a) equivalent indexes (truth tables or registry), or
/// (b)/(c) a tautological index on a variable.
std::optional<Substitution> sigma_cond_unify(const Label& i, const Label& j,
                                             const EquivRegistry& reg,
                                             const UnifyOptions& opts = {});

/// Propositional equivalence of two index formulas; structural equality
/// short-circuits, and formulas containing > are only equal to themselves.
bool index_equivalent(const Formula& y, const Formula& z);

/// Some segment of i (b(i), b(b(i)), ...) equals k or sigma-unifies with it.
bool extends(const Label& i, const Label& k);
/// extends(i, k) with b(i) as the witnessing segment.
bool extends_immediately(const Label& i, const Label& k);

/// Issues world symbols with ids never handed out before by this instance.
class LabelFactory {
 public:
  Label fresh_constant(std::optional<Formula> index = std::nullopt) {
    return Label(World::Constant(next_constant_++, std::move(index)));
  }
  Label fresh_variable(std::optional<Formula> index = std::nullopt) {
    return Label(World::Variable(next_variable_++, std::move(index)));
  }

 private:
  int next_constant_ = 1;
  int next_variable_ = 1;
};

}  // namespace condtab
