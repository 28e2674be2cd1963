#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "condtab/formula.hpp"
#include "condtab/tableau.hpp"

namespace condtab {

enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // not proved, refuted, or fragment violation
  kExitUsage = 2,
  kExitBudget = 3,
  kExitInconsistent = 4,
};

enum class OutputFormat { kText, kJson };

struct RunConfig {
  std::string command;  // prove | refute | check | fixtures | diff
  std::optional<std::string> formula;
  std::optional<std::string> corpus;
  int max_worlds = 3;
  std::size_t budget = 10000;
  bool t2_enabled = true;
  bool top_clause = true;
  OutputFormat format = OutputFormat::kText;
  std::uint64_t seed = 1;
  std::size_t count = 500;
  unsigned jobs = 0;  // 0: one per hardware thread
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors print to err and return kExitUsage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

enum class Agreement {
  kValidNoCountermodel,   // agree
  kValidRefuted,          // unsound
  kNotProvedRefuted,      // agree
  kNotProvedUndecided,    // no countermodel within the bound
};

std::string_view agreement_name(Agreement a);

struct DiffItem {
  std::size_t index = 0;
  Formula formula;
  bool valid = false;
  bool budget_exhausted = false;
  std::size_t nodes = 0;
  bool refuted = false;
  bool oracle_complete = true;
  int countermodel_worlds = 0;
  double prove_ms = 0;
  double oracle_ms = 0;
  Agreement agreement = Agreement::kNotProvedUndecided;
};

struct DiffReport {
  std::vector<DiffItem> items;  // corpus order
  std::size_t counts[4] = {0, 0, 0, 0};
  double elapsed_s = 0;

  std::size_t count(Agreement a) const { return counts[static_cast<int>(a)]; }
  std::size_t unsound() const { return count(Agreement::kValidRefuted); }
  std::size_t not_proved() const {
    return count(Agreement::kNotProvedRefuted) + count(Agreement::kNotProvedUndecided);
  }
  /// Share of not-proved formulas with a countermodel; 1 when none.
  double refuted_share() const;
};

/// Runs prove and find_countermodel on every formula; items are merged by
/// corpus index, so the report does not depend on `jobs`.
DiffReport run_diff(const std::vector<Formula>& corpus, const ProverConfig& prover,
                    int max_worlds, unsigned jobs = 0);

}  // namespace condtab
