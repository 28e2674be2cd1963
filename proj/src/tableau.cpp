#include "condtab/tableau.hpp"

#include <algorithm>
#include <utility>

namespace condtab {

std::string LSFormula::str() const { return signed_formula.str() + " : " + label.str(); }

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::kRoot: return "root";
    case Rule::kAlpha: return "alpha";
    case Rule::kBeta: return "beta";
    case Rule::kT1: return "T>1";
    case Rule::kT2: return "T>2";
    case Rule::kF: return "F>";
    case Rule::kPB: return "PB";
    case Rule::kUnfold: return "unfold";
    case Rule::kCondEquiv: return "cond-equiv";
    case Rule::kPNC: return "PNC";
  }
  return "?";
}

int ProofContext::record(int parent, LSFormula ls, Rule rule, std::vector<int> premises) {
  const int id = static_cast<int>(nodes_.size()) + 1;
  keys_.push_back(ls.str());
  nodes_.push_back({id, parent, std::move(ls), rule, std::move(premises)});
  return id;
}

namespace {

bool head_indexed(const Label& l) { return l.head().index.has_value(); }

bool same_index(const Formula& a, const Formula& b) { return index_equivalent(a, b); }

}  // namespace

TableauBranch::TableauBranch(ProofContext& ctx) : ctx_(&ctx) {}

int TableauBranch::add(const LSFormula& x, Rule rule, std::vector<int> premises) {
  if (auto it = present_.find(x); it != present_.end()) return it->second;
  const int parent = path_.empty() ? 0 : path_.back();
  const int id = ctx_->record(parent, x, rule, std::move(premises));
  path_.push_back(id);
  present_.emplace(x, id);
  note_label(x.label, id);
  return id;
}

std::optional<int> TableauBranch::find(const LSFormula& x) const {
  auto it = present_.find(x);
  if (it == present_.end()) return std::nullopt;
  return it->second;
}

void TableauBranch::note_label(const Label& l, int introducer) {
  if (label_introducer_.emplace(l, introducer).second) labels_.push_back(l);
}

bool TableauBranch::holds_at(Sign sign, const Formula& a, const Label& label) const {
  if (present_.count({{sign, a}, label})) return true;
  if (sign != Sign::kT || !head_indexed(label)) return false;
  return same_index(*label.head().index, a);
}

bool TableauBranch::covers(const Label& k, const Label& g) const {
  if (!g.is_ground() || k.length() != g.length()) return false;
  auto s = sigma_cond_unify(k, g, registry_, unify_options());
  return s && s->apply(k).is_ground();
}

std::vector<Occurrence> TableauBranch::occurrences() const {
  std::vector<Occurrence> out;
  out.reserve(path_.size() + labels_.size());
  for (int id : path_) {
    const ProofNode& n = node(id);
    out.push_back({n.ls.signed_formula, n.ls.label, id});
  }
  for (const Label& l : labels_) {
    if (!head_indexed(l)) continue;
    SignedFormula t = SignedFormula::T(*l.head().index);
    if (present_.count({t, l})) continue;
    out.push_back({std::move(t), l, 0});
  }
  return out;
}

// --- rules ---------------------------------------------------------------

std::optional<int> TableauBranch::apply_t_cond_1(int id) {
  const ProofNode& n = node(id);
  const SignedFormula& x = n.ls.signed_formula;
  if (x.sign != Sign::kT || !x.formula.is_conditional()) return std::nullopt;
  if (!done_.insert("T1|" + ctx_->key(id)).second) return std::nullopt;
  const Label at = n.ls.label;
  const Formula a = x.formula.antecedent();
  const Formula b = x.formula.consequent();
  World w = ctx_->labels().fresh_variable(a).head();
  return add({SignedFormula::T(b), Label::Pair(std::move(w), at)}, Rule::kT1, {id});
}

std::optional<int> TableauBranch::apply_f_cond(int id, const Label& ground) {
  const ProofNode& n = node(id);
  const SignedFormula& x = n.ls.signed_formula;
  if (x.sign != Sign::kF || !x.formula.is_conditional()) return std::nullopt;
  if (!ground.is_ground()) return std::nullopt;
  if (n.ls.label != ground && !covers(n.ls.label, ground)) return std::nullopt;
  // Keyed on the formula and the instance: one witness per world.
  if (!done_.insert("F|" + x.formula.str() + "|" + ground.str()).second) return std::nullopt;
  const Formula a = x.formula.antecedent();
  const Formula b = x.formula.consequent();
  World w = ctx_->labels().fresh_constant(a).head();
  return add({SignedFormula::F(b), Label::Pair(std::move(w), ground)}, Rule::kF, {id});
}

std::vector<int> TableauBranch::apply_t_cond_2(int major, const Label& minor) {
  std::vector<int> out;
  const ProofNode& n = node(major);
  const SignedFormula& x = n.ls.signed_formula;
  if (x.sign != Sign::kT || !x.formula.is_conditional()) return out;
  if (!minor.is_ground() || minor.is_atomic() || !head_indexed(minor)) return out;
  const Formula a = x.formula.antecedent();
  const Formula b = x.formula.consequent();
  const Label& i = n.ls.label;
  const Label body = minor.body();
  const Formula& y = *minor.head().index;
  bool index_ok = same_index(y, a);
  if (body.length() != i.length()) return out;
  if (!index_ok && ctx_->config().t2_across_registry) index_ok = registry_.covers(y, a, body, i);
  if (!index_ok) return out;
  if (body != i && !covers(i, body)) return out;
  const std::string key = ctx_->key(major) + "|" + minor.str();
  if (holds_at(Sign::kT, a, minor) && done_.insert("T2t|" + key).second) {
    out.push_back(add({SignedFormula::T(b), minor}, Rule::kT2, {major}));
  }
  if (auto fb = find({SignedFormula::F(b), minor}); fb && done_.insert("T2f|" + key).second) {
    out.push_back(add({SignedFormula::F(a), minor}, Rule::kT2, {major, *fb}));
  }
  return out;
}

std::optional<int> TableauBranch::unfold_index(const Label& label) {
  if (!label.is_ground() || label.is_atomic() || !head_indexed(label)) return std::nullopt;
  const LSFormula x{SignedFormula::T(*label.head().index), label};
  if (present_.count(x)) return std::nullopt;
  std::vector<int> premises;
  if (auto it = label_introducer_.find(label); it != label_introducer_.end()) {
    premises.push_back(it->second);
  }
  return add(x, Rule::kUnfold, std::move(premises));
}

std::optional<EquivEntry> TableauBranch::apply_cond_equiv(int p1, int p2) {
  const ProofNode& n1 = node(p1);
  const ProofNode& n2 = node(p2);
  const Label& i = n1.ls.label;
  const Label& j = n2.ls.label;
  if (n1.ls.signed_formula.sign != Sign::kT || n2.ls.signed_formula.sign != Sign::kT) {
    return std::nullopt;
  }
  if (i.is_atomic() || j.is_atomic() || i.length() != j.length()) return std::nullopt;
  if (!i.head().is_variable() || !j.head().is_variable()) return std::nullopt;
  if (!head_indexed(i) || !head_indexed(j)) return std::nullopt;
  const Formula& b = *i.head().index;  // T a at the b-worlds
  const Formula& a = *j.head().index;  // T b at the a-worlds
  if (same_index(a, b)) return std::nullopt;
  if (!n1.ls.signed_formula.formula.is_conditional_free() ||
      !n2.ls.signed_formula.formula.is_conditional_free()) {
    return std::nullopt;
  }
  if (!same_index(n1.ls.signed_formula.formula, a) ||
      !same_index(n2.ls.signed_formula.formula, b)) {
    return std::nullopt;
  }
  const Label bi = i.body();
  const Label bj = j.body();
  if (!sigma_cond_unify(bi, bj, registry_, unify_options())) return std::nullopt;
  // The identification is only established around actual worlds.
  std::vector<Label> bases;
  if (bi.is_ground() && covers(bj, bi)) bases.push_back(bi);
  if (bj.is_ground() && covers(bi, bj)) bases.push_back(bj);
  for (const Label& g : labels_) {
    if (g.length() == bi.length() && covers(bi, g) && covers(bj, g)) bases.push_back(g);
  }
  std::optional<EquivEntry> first;
  for (const Label& g : bases) {
    if (!registry_.add(b, a, g)) continue;
    EquivEntry e{b, a, g};
    registry_events_.push_back({e, p1, p2, path_.empty() ? 0 : path_.back()});
    if (!first) first = e;
  }
  return first;
}

// --- closure -------------------------------------------------------------

std::optional<ClosingPair> TableauBranch::complementary(const Occurrence& a,
                                                        const Occurrence& b) const {
  if (a.signed_formula.sign == b.signed_formula.sign) return std::nullopt;
  if (a.signed_formula.formula != b.signed_formula.formula) return std::nullopt;
  if (a.label.length() != b.label.length()) return std::nullopt;
  if (!sigma_cond_unify(a.label, b.label, registry_, unify_options())) return std::nullopt;
  if (a.label.is_ground() && covers(b.label, a.label)) return ClosingPair{a, b, std::nullopt};
  if (b.label.is_ground() && covers(a.label, b.label)) return ClosingPair{a, b, std::nullopt};
  for (const Label& g : labels_) {
    if (g.length() == a.label.length() && covers(a.label, g) && covers(b.label, g)) {
      return ClosingPair{a, b, g};
    }
  }
  return std::nullopt;
}

std::optional<ClosingPair> TableauBranch::check_closure() const {
  std::map<Formula, std::pair<std::vector<Occurrence>, std::vector<Occurrence>>> groups;
  for (Occurrence& o : occurrences()) {
    auto& g = groups[o.signed_formula.formula];
    (o.signed_formula.sign == Sign::kT ? g.first : g.second).push_back(std::move(o));
  }
  std::optional<ClosingPair> best;
  int best_key = 0;
  for (const auto& [f, g] : groups) {
    for (const Occurrence& t : g.first) {
      for (const Occurrence& fo : g.second) {
        // Report the pair completed earliest on the branch.
        const int key = std::max(t.node, fo.node);
        if (best && key >= best_key) continue;
        if (auto p = complementary(t, fo)) {
          if (fo.node != 0 && (t.node == 0 || fo.node < t.node)) std::swap(p->first, p->second);
          best = std::move(p);
          best_key = key;
        }
      }
    }
  }
  return best;
}

bool TableauBranch::verify_closing_pair(const ClosingPair& pair) const {
  const auto& a = pair.first;
  const auto& b = pair.second;
  if (a.signed_formula != conjugate(b.signed_formula)) return false;
  if (!holds_at(a.signed_formula.sign, a.signed_formula.formula, a.label)) return false;
  if (!holds_at(b.signed_formula.sign, b.signed_formula.formula, b.label)) return false;
  if (!sigma_cond_unify(a.label, b.label, registry_, unify_options())) return false;
  if (pair.witness) return covers(a.label, *pair.witness) && covers(b.label, *pair.witness);
  return (a.label.is_ground() && covers(b.label, a.label)) ||
         (b.label.is_ground() && covers(a.label, b.label));
}

// --- scheduling ----------------------------------------------------------

bool TableauBranch::step_alpha() {
  for (std::size_t k = 0; k < path_.size(); ++k) {
    const int id = path_[k];
    const ProofNode& n = node(id);
    const Classification c = classify(n.ls.signed_formula);
    const auto* alpha = std::get_if<Alpha>(&c);
    if (!alpha) continue;
    for (const SignedFormula& comp : alpha->components) {
      LSFormula x{comp, n.ls.label};
      if (present_.count(x)) continue;
      add(x, Rule::kAlpha, {id});
      return true;
    }
  }
  return false;
}

bool TableauBranch::step_unfold() {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (unfold_index(labels_[k])) return true;
  }
  return false;
}

bool TableauBranch::step_f_cond() {
  for (std::size_t k = 0; k < path_.size(); ++k) {
    const int id = path_[k];
    const ProofNode& n = node(id);
    const SignedFormula& x = n.ls.signed_formula;
    if (x.sign != Sign::kF || !x.formula.is_conditional()) continue;
    if (n.ls.label.is_ground()) {
      if (apply_f_cond(id, n.ls.label)) return true;
      continue;
    }
    for (std::size_t m = 0; m < labels_.size(); ++m) {
      const Label g = labels_[m];
      if (apply_f_cond(id, g)) return true;
    }
  }
  return false;
}

bool TableauBranch::step_t_cond_1() {
  for (std::size_t k = 0; k < path_.size(); ++k) {
    if (apply_t_cond_1(path_[k])) return true;
  }
  return false;
}

bool TableauBranch::step_t_cond_2() {
  if (!ctx_->config().t2_enabled) return false;
  for (std::size_t k = 0; k < path_.size(); ++k) {
    const int id = path_[k];
    const SignedFormula& x = node(id).ls.signed_formula;
    if (x.sign != Sign::kT || !x.formula.is_conditional()) continue;
    for (std::size_t m = 0; m < labels_.size(); ++m) {
      const Label minor = labels_[m];
      if (!apply_t_cond_2(id, minor).empty()) return true;
    }
  }
  return false;
}

bool TableauBranch::step_cond_equiv() {
  for (std::size_t k = 0; k < path_.size(); ++k) {
    const Label& i = node(path_[k]).ls.label;
    if (i.is_atomic() || !i.head().is_variable() || !head_indexed(i)) continue;
    for (std::size_t m = k + 1; m < path_.size(); ++m) {
      const Label& j = node(path_[m]).ls.label;
      if (j.is_atomic() || !j.head().is_variable() || !head_indexed(j)) continue;
      if (apply_cond_equiv(path_[k], path_[m]) || apply_cond_equiv(path_[m], path_[k])) {
        return true;
      }
    }
  }
  return false;
}

bool TableauBranch::step_beta() {
  const std::vector<Occurrence> occs = occurrences();
  for (std::size_t k = 0; k < path_.size(); ++k) {
    const int id = path_[k];
    const ProofNode& n = node(id);
    const Classification c = classify(n.ls.signed_formula);
    const auto* beta = std::get_if<Beta>(&c);
    if (!beta) continue;
    const Label& at = n.ls.label;
    for (const Occurrence& o : occs) {
      if (o.label.length() != at.length()) continue;
      const SignedFormula* other = nullptr;
      if (o.signed_formula == conjugate(beta->first)) {
        other = &beta->second;
      } else if (o.signed_formula == conjugate(beta->second)) {
        other = &beta->first;
      } else {
        continue;
      }
      auto s = sigma_cond_unify(at, o.label, registry_, unify_options());
      if (!s) continue;
      const Label target = s->apply(at);
      const std::string key =
          "B|" + ctx_->key(id) + "|" + o.signed_formula.str() + "|" + o.label.str();
      if (done_.count(key)) continue;
      done_.insert(key);
      const LSFormula x{*other, target};
      if (present_.count(x)) continue;
      std::vector<int> premises{id};
      if (!o.implicit()) premises.push_back(o.node);
      add(x, Rule::kBeta, std::move(premises));
      return true;
    }
  }
  return false;
}

bool TableauBranch::step() {
  return step_alpha() || step_unfold() || step_f_cond() || step_t_cond_1() || step_t_cond_2() ||
         step_cond_equiv() || step_beta();
}

std::optional<TableauBranch::Cut> TableauBranch::pb_candidate() const {
  const std::vector<Occurrence> occs = occurrences();
  auto holds_somewhere = [&](const SignedFormula& x, const Label& g) {
    for (const Occurrence& o : occs) {
      if (o.signed_formula != x) continue;
      if (o.label == g || covers(o.label, g)) return true;
    }
    return false;
  };
  for (int id : path_) {
    const ProofNode& n = node(id);
    const Classification c = classify(n.ls.signed_formula);
    const auto* beta = std::get_if<Beta>(&c);
    if (!beta) continue;
    std::vector<Label> targets;
    if (n.ls.label.is_ground()) {
      targets.push_back(n.ls.label);
    } else {
      for (const Label& g : labels_) {
        if (covers(n.ls.label, g)) targets.push_back(g);
      }
    }
    for (const Label& g : targets) {
      if (holds_somewhere(beta->first, g) || holds_somewhere(beta->second, g)) continue;
      return Cut{id, g, beta->second};
    }
  }
  return std::nullopt;
}

// --- driver ----------------------------------------------------------------

Verdict prove(const Formula& f, const ProverConfig& config) {
  if (auto v = check_flat_fragment(f)) throw FragmentError(*v);

  ProofContext ctx(config);
  Verdict verdict(f);
  verdict.config = config;

  TableauBranch root(ctx);
  const Label w1 = ctx.labels().fresh_constant();
  root.add({SignedFormula::F(f), w1}, Rule::kRoot);

  // Depth-first, left branch first; stop at the first branch left open.
  std::vector<TableauBranch> pending{root};
  bool failed = false;
  while (!pending.empty()) {
    TableauBranch b = std::move(pending.back());
    pending.pop_back();
    BranchRecord rec;
    if (failed) {
      rec.status = BranchStatus::kUnexplored;
      rec.path.assign(b.path().begin(), b.path().end());
      rec.registry = b.registry_events();
      verdict.tree.branches.push_back(std::move(rec));
      continue;
    }
    for (;;) {
      if (auto pair = b.check_closure()) {
        rec.status = BranchStatus::kClosed;
        rec.closing = std::move(pair);
        break;
      }
      if (ctx.budget_exhausted()) {
        rec.status = BranchStatus::kExhausted;
        break;
      }
      if (b.step()) continue;
      if (auto cut = b.pb_candidate()) {
        TableauBranch left = b;
        TableauBranch right = b;
        left.add({conjugate(cut->component), cut->at}, Rule::kPB, {cut->beta_node});
        right.add({cut->component, cut->at}, Rule::kPB, {cut->beta_node});
        pending.push_back(std::move(right));
        pending.push_back(std::move(left));
        rec.status = BranchStatus::kUnexplored;  // marker: interior, not a leaf
        break;
      }
      rec.status = BranchStatus::kOpen;
      break;
    }
    if (rec.status == BranchStatus::kUnexplored) continue;  // split
    rec.path.assign(b.path().begin(), b.path().end());
    rec.registry = b.registry_events();
    if (rec.status != BranchStatus::kClosed) failed = true;
    verdict.tree.branches.push_back(std::move(rec));
  }

  verdict.tree.nodes = ctx.nodes();
  ResourceReport& r = verdict.resources;
  r.nodes = ctx.nodes().size();
  r.node_budget = config.node_budget;
  for (const BranchRecord& br : verdict.tree.branches) {
    if (br.status == BranchStatus::kClosed) ++r.closed_branches;
    if (br.status == BranchStatus::kOpen) ++r.open_branches;
    if (br.status == BranchStatus::kExhausted) r.budget_exhausted = true;
  }
  for (const ProofNode& n : ctx.nodes()) {
    r.max_label_length = std::max(r.max_label_length, n.ls.label.length());
  }
  verdict.kind = failed ? Verdict::Kind::kNotProved : Verdict::Kind::kValid;
  return verdict;
}

}  // namespace condtab
