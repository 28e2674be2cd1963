#include "condtab/label.hpp"

#include <sstream>
#include <stdexcept>

#include "condtab/truth_table.hpp"

namespace condtab {

bool operator<(const World& a, const World& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.id != b.id) return a.id < b.id;
  if (a.index.has_value() != b.index.has_value()) return !a.index.has_value();
  if (!a.index) return false;
  return *a.index < *b.index;
}

std::string World::str() const {
  std::string s(1, is_constant() ? 'w' : 'W');
  s += std::to_string(id);
  if (index) {
    s += "^(";
    s += index->str();
    s += ')';
  }
  return s;
}

Label Label::Pair(World head, const Label& body) {
  std::vector<World> worlds = body.worlds_;
  worlds.push_back(std::move(head));
  return Label(std::move(worlds));
}

bool Label::is_ground() const {
  for (const World& w : worlds_) {
    if (w.is_variable()) return false;
  }
  return true;
}

Label Label::body() const {
  if (is_atomic()) throw std::out_of_range("atomic label has no body: " + str());
  return Label(std::vector<World>(worlds_.begin(), worlds_.end() - 1));
}

Label Label::segment(int n) const {
  if (n < 1 || n > length()) {
    throw std::out_of_range("segment length " + std::to_string(n) + " out of range for " + str());
  }
  return Label(std::vector<World>(worlds_.begin(), worlds_.begin() + n));
}

const World& Label::head_at(int n) const {
  if (n < 1 || n > length()) {
    throw std::out_of_range("position " + std::to_string(n) + " out of range for " + str());
  }
  return worlds_[static_cast<std::size_t>(n - 1)];
}

Label Label::with_head_index(std::optional<Formula> index) const {
  Label out = *this;
  out.worlds_.back().index = std::move(index);
  return out;
}

std::string Label::str() const {
  // (h, (h', (..., root)))
  std::string s = worlds_.front().str();
  for (std::size_t k = 1; k < worlds_.size(); ++k) {
    s = "(" + worlds_[k].str() + ", " + s + ")";
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Label& l) { return os << l.str(); }

Label countersegment(const Label& i, int n, const Label& w0) {
  if (n < 1 || n >= i.length()) {
    throw std::out_of_range("countersegment " + std::to_string(n) + " out of range for " +
                            i.str());
  }
  std::vector<World> worlds = w0.worlds_;
  worlds.insert(worlds.end(), i.worlds_.begin() + n, i.worlds_.end());
  return Label(std::move(worlds));
}

World Substitution::resolve(const World& w) const {
  World cur = w;
  while (cur.is_variable()) {
    auto it = bindings_.find(cur.id);
    if (it == bindings_.end()) break;
    cur = it->second;
  }
  return cur;
}

bool Substitution::link(const World& a, const World& b) {
  const World ra = resolve(a);
  const World rb = resolve(b);
  if (ra.same_symbol(rb)) return true;
  if (rb.is_variable()) {
    bindings_[rb.id] = ra;
    return true;
  }
  if (ra.is_variable()) {
    bindings_[ra.id] = rb;
    return true;
  }
  return false;
}

Label Substitution::apply(const Label& l) const {
  Label out = l;
  for (World& w : out.worlds_) w = resolve(w);
  return out;
}

std::optional<Substitution> sigma_unify(const Label& i, const Label& j) {
  if (i.length() != j.length()) return std::nullopt;
  Substitution s;
  for (int p = 1; p <= i.length(); ++p) {
    if (!s.link(i.head_at(p), j.head_at(p))) return std::nullopt;
  }
  return s;
}

bool index_equivalent(const Formula& y, const Formula& z) {
  if (y == z) return true;
  if (!y.is_conditional_free() || !z.is_conditional_free()) return false;
  return truth_table_equiv(y, z);
}

bool EquivRegistry::add(Formula a, Formula b, Label base) {
  for (const EquivEntry& e : entries_) {
    if (e.base == base && ((e.a == a && e.b == b) || (e.a == b && e.b == a))) return false;
  }
  entries_.push_back({std::move(a), std::move(b), std::move(base)});
  return true;
}

bool EquivRegistry::covers(const Formula& y, const Formula& z, const Label& tail_i,
                           const Label& tail_j) const {
  for (const EquivEntry& e : entries_) {
    const bool direct = index_equivalent(y, e.a) && index_equivalent(z, e.b);
    const bool swapped = index_equivalent(y, e.b) && index_equivalent(z, e.a);
    if (!direct && !swapped) continue;
    if (sigma_unify(e.base, tail_i) && sigma_unify(e.base, tail_j)) return true;
  }
  return false;
}

std::optional<Substitution> sigma_cond_unify(const Label& i, const Label& j,
                                             const EquivRegistry& reg,
                                             const UnifyOptions& opts) {
  auto subst = sigma_unify(i, j);
  if (!subst) return std::nullopt;
  for (int p = 1; p <= i.length(); ++p) {
    const World& a = i.head_at(p);
    const World& b = j.head_at(p);
    if (!a.index && !b.index) continue;
    if (a.index && b.index) {
      if (index_equivalent(*a.index, *b.index)) continue;
      if (p > 1 && !reg.empty() &&
          reg.covers(*a.index, *b.index, i.segment(p - 1), j.segment(p - 1))) {
        continue;
      }
    }
    if (opts.top_clause) {
      auto top = [](const World& w) {
        return w.is_variable() && w.index && w.index->is_conditional_free() && is_top(*w.index);
      };
      if (top(a) || top(b)) continue;
    }
    return std::nullopt;
  }
  return subst;
}

bool extends(const Label& i, const Label& k) {
  for (int n = i.length() - 1; n >= 1; --n) {
    const Label s = i.segment(n);
    if (s == k || sigma_unify(s, k)) return true;
  }
  return false;
}

bool extends_immediately(const Label& i, const Label& k) {
  if (i.is_atomic()) return false;
  const Label b = i.body();
  return b == k || sigma_unify(b, k).has_value();
}

}  // namespace condtab
