#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condtab {

enum class Connective : std::uint8_t {
  kAtom,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kCond,  // A > B
};

/// Immutable formula of the conditional language. Copies share structure, so
/// passing by value is cheap.
class Formula {
 public:
  static Formula Atom(std::string name);
  static Formula Not(Formula f);
  static Formula And(Formula l, Formula r);
  static Formula Or(Formula l, Formula r);
  static Formula Implies(Formula l, Formula r);
  static Formula Iff(Formula l, Formula r);
  static Formula Cond(Formula antecedent, Formula consequent);

  Connective kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Connective::kAtom; }
  bool is_conditional() const { return kind() == Connective::kCond; }
  bool is_binary() const { return node_->children.size() == 2; }

  /// Atom name; empty for compound formulas.
  const std::string& name() const { return node_->name; }

  const Formula& operand() const;     // kNot
  const Formula& left() const;        // binary connectives
  const Formula& right() const;       // binary connectives
  const Formula& antecedent() const { return left(); }
  const Formula& consequent() const { return right(); }

  /// True iff no conditional occurs anywhere in the formula.
  bool is_conditional_free() const { return !node_->has_cond; }
  /// Connective depth; atoms have depth 0.
  int depth() const { return node_->depth; }
  /// Number of conditional occurrences.
  int conditional_count() const { return node_->cond_count; }
  /// Maximal nesting of > (A>B has 1; A>(B>C) has 2).
  int conditional_nesting() const { return node_->cond_nesting; }
  std::size_t hash() const { return node_->hash; }

  std::set<std::string> atoms() const;
  void collect_atoms(std::set<std::string>& out) const;

  /// Canonical ASCII rendering with minimal parentheses.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total structural order, used for deterministic containers.
  friend int compare(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) {
    return compare(a, b) < 0;
  }

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t hash = 0;
    int depth = 0;
    int cond_count = 0;
    int cond_nesting = 0;
    bool has_cond = false;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Connective kind, std::string name,
                      std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Binding strength used by both the parser and the printer. Higher binds
/// tighter.
int precedence(Connective c);
bool is_right_associative(Connective c);
std::string_view connective_symbol(Connective c);

bool is_identifier(std::string_view s);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the ASCII grammar: identifiers, ~ & | -> <-> > and parentheses.
/// Throws ParseError carrying the byte offset of the problem.
Formula parse(std::string_view text);

/// Result of the flat-fragment check. `path` names the steps from the root to
/// the offending conditional, e.g. "/right/antecedent".
struct FragmentViolation {
  std::string path;
  Formula subformula;
};

/// nullopt iff no conditional sits inside the antecedent of a conditional;
/// otherwise the first violation in pre-order.
std::optional<FragmentViolation> check_flat_fragment(const Formula& f);

}  // namespace condtab

template <>
struct std::hash<condtab::Formula> {
  std::size_t operator()(const condtab::Formula& f) const noexcept {
    return f.hash();
  }
};
