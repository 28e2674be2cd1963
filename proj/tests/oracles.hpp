#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the Formula type and the model container.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "condtab/formula.hpp"
#include "condtab/sos.hpp"

namespace oracle {

using condtab::Connective;
using condtab::Formula;

inline bool eval_prop(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case Connective::kAtom: return v.at(f.name());
    case Connective::kNot: return !eval_prop(f.operand(), v);
    case Connective::kAnd: return eval_prop(f.left(), v) && eval_prop(f.right(), v);
    case Connective::kOr: return eval_prop(f.left(), v) || eval_prop(f.right(), v);
    case Connective::kImplies: return !eval_prop(f.left(), v) || eval_prop(f.right(), v);
    case Connective::kIff: return eval_prop(f.left(), v) == eval_prop(f.right(), v);
    case Connective::kCond: break;
  }
  throw std::invalid_argument("conditional in propositional oracle");
}

inline void for_each_assignment(const std::set<std::string>& atoms,
                                const std::function<void(const std::map<std::string, bool>&)>& fn) {
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  for (unsigned long bits = 0; bits < (1UL << names.size()); ++bits) {
    std::map<std::string, bool> v;
    for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = (bits >> k) & 1UL;
    fn(v);
  }
}

inline bool tautology(const Formula& f) {
  bool all = true;
  for_each_assignment(f.atoms(), [&](const auto& v) { all = all && eval_prop(f, v); });
  return all;
}

inline bool equivalent(const Formula& a, const Formula& b) {
  std::set<std::string> atoms = a.atoms();
  b.collect_atoms(atoms);
  bool same = true;
  for_each_assignment(atoms, [&](const auto& v) { same = same && eval_prop(a, v) == eval_prop(b, v); });
  return same;
}

/// Direct reading of the truth condition with explicit world sets.
inline bool eval_sos(const condtab::SOSModel& m, const Formula& f, int u) {
  switch (f.kind()) {
    case Connective::kAtom: {
      for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        if (m.atoms[k] == f.name()) return (m.valuation[k] >> u) & 1U;
      }
      throw std::out_of_range(f.name());
    }
    case Connective::kNot: return !eval_sos(m, f.operand(), u);
    case Connective::kAnd: return eval_sos(m, f.left(), u) && eval_sos(m, f.right(), u);
    case Connective::kOr: return eval_sos(m, f.left(), u) || eval_sos(m, f.right(), u);
    case Connective::kImplies: return !eval_sos(m, f.left(), u) || eval_sos(m, f.right(), u);
    case Connective::kIff: return eval_sos(m, f.left(), u) == eval_sos(m, f.right(), u);
    case Connective::kCond: {
      // Spheres as explicit sets; find the least one holding an antecedent world.
      std::vector<std::set<int>> spheres;
      for (auto s : m.spheres[u]) {
        std::set<int> ws;
        for (int w = 0; w < m.size; ++w) {
          if ((s >> w) & 1U) ws.insert(w);
        }
        spheres.push_back(ws);
      }
      const std::set<int>* least = nullptr;
      for (const auto& s : spheres) {
        bool meets = false;
        for (int w : s) meets = meets || eval_sos(m, f.antecedent(), w);
        if (meets && (!least || std::includes(least->begin(), least->end(), s.begin(), s.end()))) {
          least = &s;
        }
      }
      if (!least) return true;
      for (int w : *least) {
        if (eval_sos(m, f.antecedent(), w) && !eval_sos(m, f.consequent(), w)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace oracle
