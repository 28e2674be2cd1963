#include "condtab/corpus.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace condtab {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Formula random_atom(std::mt19937_64& rng, int atom_budget) {
  return Formula::Atom(std::string(1, static_cast<char>('A' + draw(rng, atom_budget))));
}

Formula grow(std::mt19937_64& rng, int depth, bool conditionals, int& cond_left,
             int atom_budget) {
  if (depth == 0 || draw(rng, 4) == 0) return random_atom(rng, atom_budget);
  const int choices = conditionals && cond_left > 0 ? 6 : 5;
  switch (draw(rng, choices)) {
    case 0: return Formula::Not(grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    case 1: {
      Formula l = grow(rng, depth - 1, conditionals, cond_left, atom_budget);
      return Formula::And(l, grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    }
    case 2: {
      Formula l = grow(rng, depth - 1, conditionals, cond_left, atom_budget);
      return Formula::Or(l, grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    }
    case 3: {
      Formula l = grow(rng, depth - 1, conditionals, cond_left, atom_budget);
      return Formula::Implies(l, grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    }
    case 4: {
      Formula l = grow(rng, depth - 1, conditionals, cond_left, atom_budget);
      return Formula::Iff(l, grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    }
    default: {
      --cond_left;
      int none = 0;
      Formula a = grow(rng, depth - 1, false, none, atom_budget);
      return Formula::Cond(a, grow(rng, depth - 1, conditionals, cond_left, atom_budget));
    }
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const CorpusOptions& opts) {
  for (;;) {
    int cond_left = opts.allow_conditionals ? opts.max_conditionals : 0;
    Formula f = grow(rng, opts.depth_budget, opts.allow_conditionals, cond_left, opts.atom_budget);
    if (opts.allow_conditionals && f.conditional_count() < opts.min_conditionals) continue;
    return f;
  }
}

std::vector<Formula> generate_corpus(const CorpusOptions& opts) {
  if (opts.atom_budget < 1 || opts.atom_budget > 26) {
    throw std::invalid_argument("atom budget must be between 1 and 26");
  }
  if (opts.min_conditionals > opts.max_conditionals) {
    throw std::invalid_argument("min_conditionals exceeds max_conditionals");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::size_t attempts = 0;
  while (out.size() < opts.count) {
    if (++attempts > opts.count * 1000 + 10000) {
      throw std::runtime_error("corpus budgets admit too few distinct formulas");
    }
    Formula f = random_formula(rng, opts);
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  return out;
}

std::uint64_t for_each_propositional(const std::vector<std::string>& atoms, int depth,
                                     const std::function<void(const Formula&)>& visit) {
  std::vector<Formula> all;
  std::uint64_t n = 0;
  auto emit = [&](Formula f, bool keep) {
    visit(f);
    ++n;
    if (keep) all.push_back(std::move(f));
  };
  for (const std::string& a : atoms) emit(Formula::Atom(a), depth > 0);
  for (int d = 1; d <= depth; ++d) {
    const bool keep = d < depth;
    const std::size_t known = all.size();
    for (std::size_t k = 0; k < known; ++k) {
      if (all[k].depth() == d - 1) emit(Formula::Not(all[k]), keep);
    }
    for (std::size_t l = 0; l < known; ++l) {
      for (std::size_t r = 0; r < known; ++r) {
        // One side must come from the previous level to reach depth d.
        if (all[l].depth() != d - 1 && all[r].depth() != d - 1) continue;
        emit(Formula::And(all[l], all[r]), keep);
        emit(Formula::Or(all[l], all[r]), keep);
        emit(Formula::Implies(all[l], all[r]), keep);
        emit(Formula::Iff(all[l], all[r]), keep);
      }
    }
  }
  return n;
}

std::vector<Formula> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<Formula> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      out.push_back(parse(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what(), e.position());
    }
  }
  return out;
}

void write_corpus(const std::string& path, const std::vector<Formula>& corpus) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const Formula& f : corpus) out << f.str() << '\n';
}

}  // namespace condtab
