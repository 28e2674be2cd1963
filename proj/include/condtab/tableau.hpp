#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "condtab/formula.hpp"
#include "condtab/label.hpp"
#include "condtab/signed.hpp"

namespace condtab {

/// Signed formula at a world label: "A is true/false at the world(s) i".
struct LSFormula {
  SignedFormula signed_formula;
  Label label;

  std::string str() const;

  friend bool operator==(const LSFormula& a, const LSFormula& b) {
    return a.signed_formula == b.signed_formula && a.label == b.label;
  }
  friend bool operator<(const LSFormula& a, const LSFormula& b) {
    if (a.signed_formula != b.signed_formula) return a.signed_formula < b.signed_formula;
    return a.label < b.label;
  }
};

enum class Rule { kRoot, kAlpha, kBeta, kT1, kT2, kF, kPB, kUnfold, kCondEquiv, kPNC };

std::string_view rule_name(Rule r);

struct ProverConfig {
  std::size_t node_budget = 10000;
  bool t2_enabled = true;
  /// Let T>2 use a minor whose index is only registry-equivalent to the
  /// antecedent.
  bool t2_across_registry = false;
  /// Clauses (b)/(c) of conditional unification.
  bool top_clause = true;
};

struct ProofNode {
  int id = 0;      // 1-based creation order over the whole proof
  int parent = 0;  // previous node on the branch; 0 for the root
  LSFormula ls;
  Rule rule = Rule::kRoot;
  std::vector<int> premises;
};

/// One side of a closing pair. Implicit occurrences are the T Y an indexed
/// head world carries for its own index Y; they have node id 0.
struct Occurrence {
  SignedFormula signed_formula;
  Label label;
  int node = 0;

  bool implicit() const { return node == 0; }
  LSFormula ls() const { return {signed_formula, label}; }
};

struct ClosingPair {
  Occurrence first;
  Occurrence second;
  /// Ground label both sides cover when neither side pins a world alone.
  std::optional<Label> witness;
};

struct RegistryEvent {
  EquivEntry entry;
  int premise_a = 0;
  int premise_b = 0;
  int after_node = 0;  // last node on the branch when it was registered
};

/// Shared state of one proof run: fresh symbols, the node log and the budget.
class ProofContext {
 public:
  explicit ProofContext(ProverConfig config = {}) : config_(config) {}

  const ProverConfig& config() const { return config_; }
  LabelFactory& labels() { return labels_; }
  const std::vector<ProofNode>& nodes() const { return nodes_; }
  const ProofNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id - 1)); }
  bool budget_exhausted() const { return nodes_.size() >= config_.node_budget; }

  int record(int parent, LSFormula ls, Rule rule, std::vector<int> premises);
  /// Printed LS-formula of a node, cached for rule-application keys.
  const std::string& key(int id) const { return keys_.at(static_cast<std::size_t>(id - 1)); }

 private:
  ProverConfig config_;
  LabelFactory labels_;
  std::vector<ProofNode> nodes_;
  std::vector<std::string> keys_;
};

/// A branch under construction. Copying a branch forks it (used by PB); the
/// copies keep sharing the ProofContext.
class TableauBranch {
 public:
  explicit TableauBranch(ProofContext& ctx);

  /// Adds x unless the same LS-formula is already on the branch. Returns the id
  /// of the node now carrying x.
  int add(const LSFormula& x, Rule rule, std::vector<int> premises = {});
  const ProofNode& node(int id) const { return ctx_->node(id); }
  std::span<const int> path() const { return path_; }
  std::optional<int> find(const LSFormula& x) const;

  /// SA : X, i^Y -- an explicit S a at `label`, or S = T and the head index of
  /// `label` is a.
  bool holds_at(Sign sign, const Formula& a, const Label& label) const;

  /// T(A>B) at i  =>  T B at (W_n^A, i). Once per formula and label.
  std::optional<int> apply_t_cond_1(int node);
  /// F(A>B) at k  =>  F B at (w_n^A, g) for the ground label g covered by k.
  std::optional<int> apply_f_cond(int node, const Label& ground);
  std::optional<int> apply_f_cond(int node) { return apply_f_cond(node, node_label(node)); }
  /// T(A>B) at i with a minor at i' indexed A that extends i immediately:
  /// T A there gives T B, F B gives F A, both at (h(i'), w0)^A with w0 the
  /// unification of b(i') and i.
  std::vector<int> apply_t_cond_2(int major, const Label& minor_label);
  /// Explicit T Y at a constant-headed ground label indexed Y.
  std::optional<int> unfold_index(const Label& label);
  /// T A at i^B and T B at j^A with variable heads and unifiable bodies
  /// register A and B as sphere-identical over the unified body.
  std::optional<EquivEntry> apply_cond_equiv(int p1, int p2);

  /// A complementary pair whose labels unify under the branch registry and
  /// denote at least one actual world.
  std::optional<ClosingPair> check_closure() const;
  /// Re-checks a pair reported by check_closure against the current registry.
  bool verify_closing_pair(const ClosingPair& pair) const;

  /// g is an instance of k: k unifies with g and every symbol of k is matched
  /// with a constant.
  bool covers(const Label& k, const Label& g) const;

  /// Applies the first applicable non-branching rule in the fixed priority
  /// alpha, unfold, F>, T>1, T>2, cond-equiv, beta. False when none applies.
  bool step();

  struct Cut {
    int beta_node;
    Label at;
    SignedFormula component;  // PB branches on component^C / component
  };
  std::optional<Cut> pb_candidate() const;

  const EquivRegistry& registry() const { return registry_; }
  const std::vector<RegistryEvent>& registry_events() const { return registry_events_; }
  std::vector<Label> labels_in_use() const { return labels_; }
  std::vector<Occurrence> occurrences() const;
  UnifyOptions unify_options() const { return {ctx_->config().top_clause}; }

 private:
  const Label& node_label(int id) const { return node(id).ls.label; }
  void note_label(const Label& l, int introducer);

  bool step_alpha();
  bool step_unfold();
  bool step_f_cond();
  bool step_t_cond_1();
  bool step_t_cond_2();
  bool step_cond_equiv();
  bool step_beta();

  std::optional<ClosingPair> complementary(const Occurrence& a, const Occurrence& b) const;

  ProofContext* ctx_;
  std::vector<int> path_;
  std::map<LSFormula, int> present_;
  std::vector<Label> labels_;  // first-use order
  std::map<Label, int> label_introducer_;
  EquivRegistry registry_;
  std::vector<RegistryEvent> registry_events_;
  std::set<std::string> done_;  // rule-application keys
};

enum class BranchStatus { kClosed, kOpen, kExhausted, kUnexplored };

struct BranchRecord {
  std::vector<int> path;
  BranchStatus status = BranchStatus::kOpen;
  std::optional<ClosingPair> closing;
  std::vector<RegistryEvent> registry;
};

struct ProofTree {
  std::vector<ProofNode> nodes;
  std::vector<BranchRecord> branches;  // left to right
};

struct ResourceReport {
  std::size_t nodes = 0;
  std::size_t node_budget = 0;
  std::size_t closed_branches = 0;
  std::size_t open_branches = 0;
  int max_label_length = 0;
  bool budget_exhausted = false;
};

struct Verdict {
  enum class Kind { kValid, kNotProved };

  explicit Verdict(Formula f) : formula(std::move(f)) {}

  Kind kind = Kind::kNotProved;
  Formula formula;
  ProverConfig config;
  ProofTree tree;
  ResourceReport resources;

  bool valid() const { return kind == Kind::kValid; }
};

class FragmentError : public std::invalid_argument {
 public:
  explicit FragmentError(FragmentViolation v)
      : std::invalid_argument("conditional nested in an antecedent at " + v.path + ": " +
                              v.subformula.str()),
        violation_(std::move(v)) {}
  const FragmentViolation& violation() const { return violation_; }

 private:
  FragmentViolation violation_;
};

/// Starts from F f at w1 and saturates; Valid iff every branch closes.
/// Throws FragmentError outside the flat fragment.
Verdict prove(const Formula& f, const ProverConfig& config = {});

}  // namespace condtab
