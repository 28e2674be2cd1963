#include "condtab/ke_plus.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "condtab/truth_table.hpp"

namespace condtab::ke {

const Node* Branch::find(int id) const {
  // Nodes are appended in increasing id order.
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const Node& n, int v) { return n.id < v; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

const Node* Branch::find(const SignedFormula& x) const {
  for (const Node& n : nodes) {
    if (n.payload == x) return &n;
  }
  return nullptr;
}

bool depends_on(const Branch& branch, int node, int on) {
  // Premises always have smaller ids than their conclusions.
  if (node < on) return false;
  if (node == on) return true;
  const auto pos = [&](int id) -> std::ptrdiff_t {
    const Node* n = branch.find(id);
    return n ? n - branch.nodes.data() : -1;
  };
  const std::ptrdiff_t from = pos(node);
  const std::ptrdiff_t to = pos(on);
  if (from >= 0 && to >= 0 && from - to < 64) {
    // Walk down from `node`, marking reached positions relative to `to`.
    std::uint64_t reached = std::uint64_t{1} << (from - to);
    for (std::ptrdiff_t p = from; p > to; --p) {
      if (!((reached >> (p - to)) & 1U)) continue;
      for (int q : branch.nodes[static_cast<std::size_t>(p)].premises) {
        if (q == on) return true;
        if (q < on) continue;
        const std::ptrdiff_t at = pos(q);
        if (at > to) reached |= std::uint64_t{1} << (at - to);
      }
    }
    return false;
  }
  std::vector<int> stack{node};
  std::vector<int> seen;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    if (cur == on) return true;
    if (cur < on || std::find(seen.begin(), seen.end(), cur) != seen.end()) continue;
    seen.push_back(cur);
    if (const Node* n = branch.find(cur)) {
      for (int p : n->premises) stack.push_back(p);
    }
  }
  return false;
}

bool is_analysed(const Node& f, const Branch& branch) {
  const Classification c = classify(f.payload);
  if (const auto* a = std::get_if<Alpha>(&c)) {
    return std::all_of(a->components.begin(), a->components.end(),
                       [&](const SignedFormula& x) { return branch.contains(x); });
  }
  if (const auto* b = std::get_if<Beta>(&c)) {
    const bool first = !branch.contains(conjugate(b->first)) || branch.contains(b->second);
    const bool second = !branch.contains(conjugate(b->second)) || branch.contains(b->first);
    return first && second;
  }
  return true;
}

bool is_fulfilled(const Node& f, const Branch& branch) {
  const Classification c = classify(f.payload);
  const auto* b = std::get_if<Beta>(&c);
  if (!b) return true;
  for (const Node& n : branch.nodes) {
    if (n.id == f.id) continue;
    if ((n.payload == b->first || n.payload == b->second) && depends_on(branch, n.id, f.id)) {
      return true;
    }
  }
  return false;
}

bool is_E_completed(const Branch& branch) {
  return std::all_of(branch.nodes.begin(), branch.nodes.end(),
                     [&](const Node& n) { return is_analysed(n, branch); });
}

bool is_completed(const Branch& branch) {
  if (!is_E_completed(branch)) return false;
  return std::all_of(branch.nodes.begin(), branch.nodes.end(),
                     [&](const Node& n) { return is_fulfilled(n, branch); });
}

bool Tableau::all_closed() const {
  return std::all_of(branches.begin(), branches.end(), [](const Branch& b) { return b.closed; });
}

namespace {

void require_propositional(const SignedFormula& x) {
  if (!x.formula.is_conditional_free()) throw NotPropositional(x.formula);
}

class Expander {
 public:
  Expander(const SignedFormula& root, bool stop_on_open) : stop_on_open_(stop_on_open) {
    require_propositional(root);
    Branch b;
    cls_.reserve(64);
    trace_.reserve(64);
    b.nodes.reserve(32);
    cls_.push_back(Literal{});  // ids start at 1
    cls_.push_back(classify(root));
    b.nodes.push_back({next_id_++, root, Origin::kRoot, {}});
    Work w{std::move(b), false, {}};
    w.note(root);
    frontier_.push_back(std::move(w));
  }

  Tableau run() {
    while (true) {
      const auto pick = select();
      if (!pick) break;
      Work& w = frontier_[*pick];
      e_complete(w);
      if (w.branch.closed) continue;
      // E-completed here, so completed exactly when no beta is left unfulfilled.
      if (!split(*pick) && stop_on_open_) break;
    }
    Tableau t;
    for (Work& w : frontier_) t.branches.push_back(std::move(w.branch));
    t.trace = std::move(trace_);
    return t;
  }

 private:
  struct Work {
    Branch branch;
    bool done;
    std::vector<int> beta_applied;  // 2 * major id + rule
    std::size_t alpha_cursor = 0;   // nodes before this are alpha-analysed
    std::uint64_t bloom[4] = {0, 0, 0, 0};  // payload hashes on the branch

    static std::size_t bit(const SignedFormula& x) {
      return (x.formula.hash() * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(x.sign)) >> 56;
    }
    void note(const SignedFormula& x) {
      const std::size_t b = bit(x);
      bloom[b >> 6] |= std::uint64_t{1} << (b & 63);
    }
    const Node* find(const SignedFormula& x) const {
      const std::size_t b = bit(x);
      if (!((bloom[b >> 6] >> (b & 63)) & 1U)) return nullptr;
      return branch.find(x);
    }
    bool contains(const SignedFormula& x) const { return find(x) != nullptr; }
  };

  std::optional<std::size_t> select() const {
    std::optional<std::size_t> best;
    auto rank = [&](std::size_t i) {
      const Branch& b = frontier_[i].branch;
      return std::make_pair(b.kind == BranchKind::kBetaC ? 1 : 0, b.nodes.size());
    };
    for (std::size_t i = 0; i < frontier_.size(); ++i) {
      const Work& w = frontier_[i];
      if (w.branch.closed || w.done) continue;
      if (!best || rank(i) > rank(*best)) best = i;
    }
    return best;
  }

  int add(Work& w, SignedFormula x, Origin origin, std::vector<int> premises,
          const char* rule) {
    const int id = next_id_++;
    cls_.push_back(classify(x));
    trace_.push_back({rule, premises, id});
    w.note(x);
    w.branch.nodes.push_back({id, std::move(x), origin, std::move(premises)});
    w.branch.last_round.push_back(id);
    check_closure(w, w.branch.nodes.back());
    return id;
  }

  void check_closure(Work& w, const Node& n) {
    Branch& b = w.branch;
    if (b.closed) return;
    if (const Node* other = w.find(conjugate(n.payload))) {
      b.closed = true;
      b.closing = std::make_pair(other->id, n.id);
      trace_.push_back({"PNC", {other->id, n.id}, 0});
    }
  }

  bool apply_alpha(Work& w) {
    // A branch only grows, so an analysed alpha stays analysed.
    for (std::size_t& i = w.alpha_cursor; i < w.branch.nodes.size(); ++i) {
      const int nid = w.branch.nodes[i].id;
      const auto* a = std::get_if<Alpha>(&cls_[nid]);
      if (!a) continue;
      bool changed = false;
      for (const SignedFormula& comp : a->components) {
        if (w.contains(comp)) continue;
        add(w, comp, Origin::kAlpha, {nid}, "alpha");
        changed = true;
        if (w.branch.closed) return true;
      }
      if (changed) return true;
    }
    return false;
  }

  bool apply_beta(Work& w) {
    for (std::size_t i = 0; i < w.branch.nodes.size(); ++i) {
      const int nid = w.branch.nodes[i].id;
      const auto* b = std::get_if<Beta>(&cls_[nid]);
      if (!b) continue;
      const std::pair<SignedFormula, SignedFormula> rules[2] = {
          {conjugate(b->first), b->second}, {conjugate(b->second), b->first}};
      for (int k = 0; k < 2; ++k) {
        const int key = 2 * nid + k;
        if (std::find(w.beta_applied.begin(), w.beta_applied.end(), key) !=
            w.beta_applied.end()) {
          continue;
        }
        const Node* m = w.find(rules[k].first);
        if (!m) continue;
        w.beta_applied.push_back(key);
        add(w, rules[k].second, Origin::kBeta, {nid, m->id}, "beta");
        return true;
      }
    }
    return false;
  }

  void e_complete(Work& w) {
    w.branch.last_round.clear();
    while (!w.branch.closed) {
      if (apply_alpha(w)) continue;
      if (apply_beta(w)) continue;
      break;
    }
  }

  /// PB on an unfulfilled beta. False when there is none: the branch is
  /// completed and stays open.
  bool split(std::size_t index) {
    Work& w = frontier_[index];
    const Node* target = nullptr;
    auto unfulfilled_beta = [&](const Node& n) {
      const auto* b = std::get_if<Beta>(&cls_[n.id]);
      if (!b) return false;
      if (!w.contains(b->first) && !w.contains(b->second)) return true;
      for (const Node& m : w.branch.nodes) {
        if (m.id != n.id && (m.payload == b->first || m.payload == b->second) &&
            depends_on(w.branch, m.id, n.id)) {
          return false;
        }
      }
      return true;
    };
    for (int id : w.branch.last_round) {
      const Node* n = w.branch.find(id);
      if (n && unfulfilled_beta(*n)) {
        target = n;
        break;
      }
    }
    if (!target) {
      for (const Node& n : w.branch.nodes) {
        if (unfulfilled_beta(n)) {
          target = &n;
          break;
        }
      }
    }
    if (!target) {
      w.done = true;
      return false;
    }
    const int target_id = target->id;
    const Beta b = std::get<Beta>(cls_[target_id]);

    // beta_2^C opens the beta^C branch, beta_2 the beta branch.
    Work keep = w;
    keep.branch.kind =
        w.branch.kind == BranchKind::kBetaC ? BranchKind::kBetaC : BranchKind::kBeta;
    keep.branch.last_round.clear();
    Work& cut = frontier_[index];
    cut.branch.kind = BranchKind::kBetaC;
    cut.branch.last_round.clear();
    add(cut, conjugate(b.second), Origin::kPB, {target_id}, "PB");
    add(keep, b.second, Origin::kPB, {target_id}, "PB");
    frontier_.insert(frontier_.begin() + static_cast<std::ptrdiff_t>(index) + 1, std::move(keep));
    return true;
  }

  bool stop_on_open_;
  std::vector<Classification> cls_;  // by node id
  std::vector<Work> frontier_;
  std::vector<TraceLine> trace_;
  int next_id_ = 1;
};

}  // namespace

Tableau expand_signed(const SignedFormula& root) { return Expander(root, false).run(); }

Tableau expand_until_open(const SignedFormula& root) { return Expander(root, true).run(); }

Tableau expand(const Formula& a) { return expand_signed(SignedFormula::T(a)); }

std::vector<DuplicateWitness> duplicate_witnesses(const Tableau& t) {
  std::vector<DuplicateWitness> out;
  for (std::size_t bi = 0; bi < t.branches.size(); ++bi) {
    const Branch& b = t.branches[bi];
    if (b.kind != BranchKind::kBetaC) continue;
    // PB roots of beta^C branches carry the conjugated component.
    for (const Node& pb : b.nodes) {
      if (pb.origin != Origin::kPB) continue;
      const Node* beta = b.find(pb.premises.front());
      if (!beta) continue;
      const Beta parts = std::get<Beta>(classify(beta->payload));
      if (pb.payload != conjugate(parts.first) && pb.payload != conjugate(parts.second)) continue;
      for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < b.nodes.size(); ++j) {
          const Node& x = b.nodes[i];
          const Node& y = b.nodes[j];
          if (x.payload != y.payload) continue;
          const bool split = (depends_on(b, x.id, pb.id) && y.origin == Origin::kBeta &&
                              std::find(y.premises.begin(), y.premises.end(), beta->id) !=
                                  y.premises.end()) ||
                             (depends_on(b, y.id, pb.id) && x.origin == Origin::kBeta &&
                              std::find(x.premises.begin(), x.premises.end(), beta->id) !=
                                  x.premises.end());
          if (split) out.push_back({bi, x.id, y.id, x.payload});
        }
      }
    }
  }
  return out;
}

bool detect_tautology(const Formula& a) {
  if (!a.is_conditional_free()) throw NotPropositional(a);
  return expand_until_open(SignedFormula::F(a)).all_closed();
}

namespace {

std::set<VSet> join(const std::set<VSet>& xs, const std::set<VSet>& ys) {
  std::set<VSet> out;
  for (const VSet& x : xs) {
    for (const VSet& y : ys) {
      VSet merged = x;
      bool clash = false;
      for (const auto& [atom, value] : y) {
        auto [it, inserted] = merged.emplace(atom, value);
        if (!inserted && it->second != value) {
          clash = true;
          break;
        }
      }
      if (!clash) out.insert(std::move(merged));
    }
  }
  return out;
}

bool extends_some(const VSet& assignment, const std::set<VSet>& sets) {
  for (const VSet& s : sets) {
    bool all = true;
    for (const auto& [atom, value] : s) {
      auto it = assignment.find(atom);
      if (it == assignment.end() || it->second != value) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Every total extension over `atoms` of a set in `from` extends a set in `to`.
bool covered(const std::set<VSet>& from, const std::set<VSet>& to,
             const std::vector<std::string>& atoms) {
  for (const VSet& s : from) {
    std::vector<std::string> free;
    for (const std::string& a : atoms) {
      if (!s.count(a)) free.push_back(a);
    }
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
      VSet total = s;
      for (std::size_t k = 0; k < free.size(); ++k) total[free[k]] = (bits >> k) & 1;
      if (!extends_some(total, to)) return false;
    }
  }
  return true;
}

}  // namespace

std::set<VSet> v_sets(const SignedFormula& x) {
  require_propositional(x);
  const Classification c = classify(x);
  if (std::holds_alternative<Literal>(c)) {
    return {VSet{{x.formula.name(), x.sign == Sign::kT}}};
  }
  if (const auto* a = std::get_if<Alpha>(&c)) {
    std::set<VSet> acc = v_sets(a->components.front());
    for (std::size_t k = 1; k < a->components.size(); ++k) acc = join(acc, v_sets(a->components[k]));
    return acc;
  }
  const Beta& b = std::get<Beta>(c);
  std::set<VSet> out = v_sets(b.first);
  for (VSet s : join(v_sets(conjugate(b.first)), v_sets(b.second))) out.insert(std::move(s));
  return out;
}

std::set<VSet> v_sets(const Formula& a) { return v_sets(SignedFormula::T(a)); }

std::string vset_str(const VSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [atom, value] : s) {
    if (!first) out += ", ";
    first = false;
    out += value ? "T " : "F ";
    out += atom;
  }
  return out + "}";
}

bool equivalent(const Formula& a, const Formula& b) {
  if (!a.is_conditional_free()) throw NotPropositional(a);
  if (!b.is_conditional_free()) throw NotPropositional(b);
  std::set<std::string> names;
  a.collect_atoms(names);
  b.collect_atoms(names);
  const std::vector<std::string> atoms(names.begin(), names.end());
  const auto va = v_sets(a);
  const auto vb = v_sets(b);
  return covered(va, vb, atoms) && covered(vb, va, atoms);
}

}  // namespace condtab::ke
