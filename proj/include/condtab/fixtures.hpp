#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "condtab/tableau.hpp"

namespace condtab {

/// A worked proof: the formula, the pair its single branch must close on and,
/// optionally, the sphere identity that has to be registered first.
struct Fixture {
  std::string name;
  std::string formula;
  LSFormula first;
  LSFormula second;
  std::optional<EquivEntry> registry;
};

const std::vector<Fixture>& builtin_fixtures();

/// Renames world ids in order of first appearance (constants and variables
/// counted separately, labels read root first) and prints the pair. The
/// smaller of the two orderings is returned, so the result is symmetric.
std::string canonical_pair(const LSFormula& a, const LSFormula& b);

struct FixtureResult {
  std::string name;
  bool valid = false;
  bool closing_match = false;
  bool registry_match = true;
  std::string expected;
  std::string actual;

  bool ok() const { return valid && closing_match && registry_match; }
};

FixtureResult replay(const Fixture& fx, const ProverConfig& config = {});

}  // namespace condtab
