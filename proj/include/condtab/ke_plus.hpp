#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "condtab/formula.hpp"
#include "condtab/signed.hpp"

namespace condtab::ke {

enum class Origin { kRoot, kAlpha, kBeta, kPB };

/// A tableau node. `premises` holds the ids of the nodes the rule consumed:
/// alpha -> {parent}, beta -> {major, minor}, PB -> {target beta}.
struct Node {
  int id = 0;
  SignedFormula payload;
  Origin origin = Origin::kRoot;
  std::vector<int> premises;
};

enum class BranchKind { kRoot, kBeta, kBetaC };

struct Branch {
  std::vector<Node> nodes;
  BranchKind kind = BranchKind::kRoot;
  bool closed = false;
  std::optional<std::pair<int, int>> closing;  // node ids
  /// Ids of the nodes added by the most recent E-completion round.
  std::vector<int> last_round;

  const Node* find(int id) const;
  /// First node with this payload, or nullptr.
  const Node* find(const SignedFormula& x) const;
  bool contains(const SignedFormula& x) const { return find(x) != nullptr; }
};

/// Reflexive-transitive closure of the premise links inside one branch.
bool depends_on(const Branch& branch, int node, int on);

bool is_analysed(const Node& f, const Branch& branch);
bool is_fulfilled(const Node& f, const Branch& branch);
bool is_E_completed(const Branch& branch);
bool is_completed(const Branch& branch);

struct TraceLine {
  const char* rule;
  std::vector<int> premises;
  int conclusion;  // 0 for a closure
};

struct Tableau {
  /// Final branches, left to right.
  std::vector<Branch> branches;
  std::vector<TraceLine> trace;

  bool all_closed() const;
};

/// Runs the KE+ procedure from the single signed root to quiescence: pick the
/// open, uncompleted branch (beta^C branches first, then the one with most
/// formulas, then leftmost), E-complete it with alpha/beta, close on
/// complementary pairs, and otherwise apply PB with beta_1 / beta_1^C to an
/// unfulfilled beta, preferring betas produced by the last E-completion round.
/// Throws NotPropositional on conditionals.
Tableau expand_signed(const SignedFormula& root);
/// Same procedure, stopping as soon as one branch is completed and open. The
/// remaining branches are returned as they stood.
Tableau expand_until_open(const SignedFormula& root);
/// The procedure started on T a.
Tableau expand(const Formula& a);

/// A signed formula occurring twice in a beta^C branch, one occurrence
/// depending on the branch's beta_i^C root and the other on the beta the PB
/// was applied to.
struct DuplicateWitness {
  std::size_t branch;
  int first;
  int second;
  SignedFormula payload;
};
std::vector<DuplicateWitness> duplicate_witnesses(const Tableau& t);

/// a is a tautology, decided on the KE+ tree for the conjugate F a: every
/// branch closes exactly when a is equivalent to top.
bool detect_tautology(const Formula& a);

/// A partial assignment of truth values to atoms.
using VSet = std::map<std::string, bool>;

/// v-fulfilling sets of T a: atoms give themselves, alphas take unions of
/// their components' sets, betas take v(beta_1) together with
/// v(beta_1^C) joined with v(beta_2). Sets assigning both values to one atom
/// are dropped.
std::set<VSet> v_sets(const Formula& a);
std::set<VSet> v_sets(const SignedFormula& x);

std::string vset_str(const VSet& s);

/// Every total extension of a v-fulfilling set of a satisfies b (checked with
/// b's own v-sets) and vice versa.
bool equivalent(const Formula& a, const Formula& b);

}  // namespace condtab::ke
