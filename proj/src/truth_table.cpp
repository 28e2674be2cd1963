#include "condtab/truth_table.hpp"

#include <algorithm>

namespace condtab {

namespace {

void require_propositional(const Formula& f) {
  if (!f.is_conditional_free()) throw NotPropositional(f);
}

using Table = std::vector<std::uint64_t>;

std::size_t table_words(std::size_t n_atoms) {
  return n_atoms <= 6 ? 1 : (std::size_t{1} << (n_atoms - 6));
}

std::uint64_t valid_mask(std::size_t n_atoms) {
  return n_atoms >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (std::size_t{1} << n_atoms)) - 1);
}

Table atom_column(std::size_t index, std::size_t n_atoms) {
  Table t(table_words(n_atoms), 0);
  for (std::size_t w = 0; w < t.size(); ++w) {
    if (index < 6) {
      // Within a word the pattern repeats every 2^(index+1) bits.
      static constexpr std::uint64_t kPatterns[6] = {
          0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
          0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
      t[w] = kPatterns[index];
    } else {
      t[w] = ((w >> (index - 6)) & 1) ? ~std::uint64_t{0} : 0;
    }
  }
  t[0] &= valid_mask(n_atoms);
  return t;
}

Table eval_table(const Formula& f, const std::vector<std::string>& atoms) {
  const std::size_t n = atoms.size();
  switch (f.kind()) {
    case Connective::kAtom: {
      auto it = std::find(atoms.begin(), atoms.end(), f.name());
      if (it == atoms.end()) return Table(table_words(n), 0);
      return atom_column(static_cast<std::size_t>(it - atoms.begin()), n);
    }
    case Connective::kNot: {
      Table t = eval_table(f.operand(), atoms);
      for (auto& w : t) w = ~w;
      if (n < 6) t[0] &= valid_mask(n);
      return t;
    }
    case Connective::kCond:
      throw NotPropositional(f);
    default:
      break;
  }
  Table l = eval_table(f.left(), atoms);
  const Table r = eval_table(f.right(), atoms);
  for (std::size_t i = 0; i < l.size(); ++i) {
    switch (f.kind()) {
      case Connective::kAnd: l[i] &= r[i]; break;
      case Connective::kOr: l[i] |= r[i]; break;
      case Connective::kImplies: l[i] = ~l[i] | r[i]; break;
      case Connective::kIff: l[i] = ~(l[i] ^ r[i]); break;
      default: break;
    }
  }
  if (n < 6) l[0] &= valid_mask(n);
  return l;
}

std::vector<std::string> combined_atoms(const Formula& a, const Formula& b) {
  std::set<std::string> s;
  a.collect_atoms(s);
  b.collect_atoms(s);
  if (s.size() > kMaxTruthTableAtoms) {
    throw std::invalid_argument("too many atoms for a truth table: " + std::to_string(s.size()));
  }
  return {s.begin(), s.end()};
}

}  // namespace

bool evaluate(const Formula& f, const Assignment& assignment) {
  switch (f.kind()) {
    case Connective::kAtom: {
      auto it = assignment.find(f.name());
      return it != assignment.end() && it->second;
    }
    case Connective::kNot: return !evaluate(f.operand(), assignment);
    case Connective::kAnd: return evaluate(f.left(), assignment) && evaluate(f.right(), assignment);
    case Connective::kOr: return evaluate(f.left(), assignment) || evaluate(f.right(), assignment);
    case Connective::kImplies:
      return !evaluate(f.left(), assignment) || evaluate(f.right(), assignment);
    case Connective::kIff: return evaluate(f.left(), assignment) == evaluate(f.right(), assignment);
    case Connective::kCond: throw NotPropositional(f);
  }
  return false;
}

std::vector<std::uint64_t> truth_table(const Formula& f, const std::vector<std::string>& atoms) {
  require_propositional(f);
  if (atoms.size() > kMaxTruthTableAtoms) {
    throw std::invalid_argument("too many atoms for a truth table");
  }
  return eval_table(f, atoms);
}

bool truth_table_equiv(const Formula& a, const Formula& b) {
  require_propositional(a);
  require_propositional(b);
  const auto atoms = combined_atoms(a, b);
  return eval_table(a, atoms) == eval_table(b, atoms);
}

bool is_top(const Formula& a) {
  require_propositional(a);
  const auto atoms = combined_atoms(a, a);
  const Table t = eval_table(a, atoms);
  const std::uint64_t full = valid_mask(atoms.size());
  return std::all_of(t.begin(), t.end(), [&](std::uint64_t w) { return w == full; });
}

}  // namespace condtab
