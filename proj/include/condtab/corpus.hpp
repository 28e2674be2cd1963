#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "condtab/formula.hpp"

namespace condtab {

struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t count = 500;
  int atom_budget = 3;   // atoms drawn from A, B, C, ...
  int depth_budget = 4;  // connective depth; atoms have depth 0
  int min_conditionals = 1;
  int max_conditionals = 2;
  bool allow_conditionals = true;
};

/// Distinct random flat formulas within the budgets. Deterministic for a given
/// seed on every platform.
std::vector<Formula> generate_corpus(const CorpusOptions& opts);

/// One random formula; conditional-free when opts.allow_conditionals is false.
Formula random_formula(std::mt19937_64& rng, const CorpusOptions& opts);

/// Visits every conditional-free formula over `atoms` up to the given depth,
/// each exactly once. Formulas of the last level are built on the fly.
/// Returns the number visited.
std::uint64_t for_each_propositional(const std::vector<std::string>& atoms, int depth,
                                     const std::function<void(const Formula&)>& visit);

/// One formula per line; blank lines and lines starting with '#' are skipped.
/// Throws ParseError with the line number in the message.
std::vector<Formula> read_corpus(const std::string& path);
void write_corpus(const std::string& path, const std::vector<Formula>& corpus);

}  // namespace condtab
