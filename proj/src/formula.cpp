#include "condtab/formula.hpp"

#include <cassert>
#include <functional>
#include <sstream>

namespace condtab {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::Make(Connective kind, std::string name,
                      std::vector<Formula> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->children = std::move(children);

  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  if (kind == Connective::kAtom) h = mix(h, std::hash<std::string>{}(node->name));
  int child_nesting = 0;
  for (const Formula& c : node->children) {
    h = mix(h, c.hash());
    node->depth = std::max(node->depth, c.depth() + 1);
    node->cond_count += c.conditional_count();
    node->has_cond = node->has_cond || !c.is_conditional_free();
    child_nesting = std::max(child_nesting, c.conditional_nesting());
  }
  node->hash = h;
  node->cond_nesting = child_nesting;
  if (kind == Connective::kCond) {
    node->has_cond = true;
    node->cond_count += 1;
    node->cond_nesting = 1 + std::max(node->children[0].conditional_nesting(),
                                      node->children[1].conditional_nesting());
  }
  return Formula(std::move(node));
}

Formula Formula::Atom(std::string name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("not an atom identifier: '" + name + "'");
  }
  return Make(Connective::kAtom, std::move(name), {});
}

Formula Formula::Not(Formula f) { return Make(Connective::kNot, {}, {std::move(f)}); }

Formula Formula::And(Formula l, Formula r) {
  return Make(Connective::kAnd, {}, {std::move(l), std::move(r)});
}

Formula Formula::Or(Formula l, Formula r) {
  return Make(Connective::kOr, {}, {std::move(l), std::move(r)});
}

Formula Formula::Implies(Formula l, Formula r) {
  return Make(Connective::kImplies, {}, {std::move(l), std::move(r)});
}

Formula Formula::Iff(Formula l, Formula r) {
  return Make(Connective::kIff, {}, {std::move(l), std::move(r)});
}

Formula Formula::Cond(Formula antecedent, Formula consequent) {
  return Make(Connective::kCond, {}, {std::move(antecedent), std::move(consequent)});
}

const Formula& Formula::operand() const {
  assert(kind() == Connective::kNot);
  return node_->children[0];
}

const Formula& Formula::left() const {
  assert(is_binary());
  return node_->children[0];
}

const Formula& Formula::right() const {
  assert(is_binary());
  return node_->children[1];
}

void Formula::collect_atoms(std::set<std::string>& out) const {
  if (is_atom()) {
    out.insert(name());
    return;
  }
  for (const Formula& c : node_->children) c.collect_atoms(out);
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.name() == b.name();
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!(ca[i] == cb[i])) return false;
  }
  return true;
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.is_atom()) return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (int c = compare(ca[i], cb[i]); c != 0) return c;
  }
  return 0;
}

int precedence(Connective c) {
  switch (c) {
    case Connective::kIff: return 1;
    case Connective::kImplies: return 2;
    case Connective::kCond: return 3;
    case Connective::kOr: return 4;
    case Connective::kAnd: return 5;
    case Connective::kNot: return 6;
    case Connective::kAtom: return 7;
  }
  return 0;
}

bool is_right_associative(Connective c) {
  return c == Connective::kIff || c == Connective::kImplies || c == Connective::kCond;
}

std::string_view connective_symbol(Connective c) {
  switch (c) {
    case Connective::kNot: return "~";
    case Connective::kAnd: return "&";
    case Connective::kOr: return "|";
    case Connective::kImplies: return "->";
    case Connective::kIff: return "<->";
    case Connective::kCond: return ">";
    case Connective::kAtom: return "";
  }
  return "";
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char ch) { return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z'); };
  auto digit = [](char ch) { return ch >= '0' && ch <= '9'; };
  if (!alpha(s[0])) return false;
  for (char ch : s.substr(1)) {
    if (!alpha(ch) && !digit(ch) && ch != '_') return false;
  }
  return true;
}

namespace {

void print(std::ostream& os, const Formula& f) {
  const Connective k = f.kind();
  if (k == Connective::kAtom) {
    os << f.name();
    return;
  }
  if (k == Connective::kNot) {
    os << '~';
    const bool parens = precedence(f.operand().kind()) < precedence(Connective::kNot);
    if (parens) os << '(';
    print(os, f.operand());
    if (parens) os << ')';
    return;
  }
  const int p = precedence(k);
  const bool right_assoc = is_right_associative(k);
  const int pl = precedence(f.left().kind());
  const int pr = precedence(f.right().kind());
  const bool left_parens = pl < p || (pl == p && right_assoc);
  const bool right_parens = pr < p || (pr == p && !right_assoc);
  if (left_parens) os << '(';
  print(os, f.left());
  if (left_parens) os << ')';
  os << ' ' << connective_symbol(k) << ' ';
  if (right_parens) os << '(';
  print(os, f.right());
  if (right_parens) os << ')';
}

void find_violation(const Formula& f, std::string& path, bool inside_antecedent,
                    std::optional<FragmentViolation>& out) {
  if (out) return;
  if (f.is_conditional() && inside_antecedent) {
    out = FragmentViolation{path.empty() ? "/" : path, f};
    return;
  }
  auto descend = [&](const Formula& child, std::string_view step, bool in_ante) {
    const std::size_t mark = path.size();
    path += '/';
    path += step;
    find_violation(child, path, in_ante, out);
    path.resize(mark);
  };
  switch (f.kind()) {
    case Connective::kAtom:
      return;
    case Connective::kNot:
      descend(f.operand(), "operand", inside_antecedent);
      return;
    case Connective::kCond:
      descend(f.antecedent(), "antecedent", true);
      descend(f.consequent(), "consequent", inside_antecedent);
      return;
    default:
      descend(f.left(), "left", inside_antecedent);
      descend(f.right(), "right", inside_antecedent);
      return;
  }
}

}  // namespace

std::string Formula::str() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(os, f);
  return os;
}

std::optional<FragmentViolation> check_flat_fragment(const Formula& f) {
  std::optional<FragmentViolation> out;
  std::string path;
  find_violation(f, path, false, out);
  return out;
}

}  // namespace condtab
