#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "condtab/formula.hpp"

namespace condtab {

/// Bit w is set when world w belongs to the set. Models have at most 16 worlds.
using WorldSet = std::uint32_t;
inline constexpr int kMaxWorlds = 16;

/// Finite system-of-spheres model. Worlds are 0 .. size-1.
struct SOSModel {
  int size = 0;
  std::vector<std::string> atoms;  // sorted
  std::vector<WorldSet> valuation;  // valuation[k]: worlds where atoms[k] is true
  /// spheres[u]: the spheres around u, innermost first, strictly increasing.
  std::vector<std::vector<WorldSet>> spheres;

  WorldSet all() const { return size >= 32 ? ~WorldSet{0} : (WorldSet{1} << size) - 1; }
  WorldSet reach(int u) const { return spheres[u].empty() ? 0 : spheres[u].back(); }
};

/// Optional constraints beyond nesting.
struct SOSConditions {
  bool normal = false;     // every S(u) has a non-empty sphere
  bool universal = false;  // the union of S(u) is W
  bool absolute = false;   // S(u) is the same for all u
  bool centered = false;   // the innermost sphere of S(u) is {u}
};

/// Problems with the model; empty when it is a well-formed SOS model.
std::vector<std::string> validate(const SOSModel& m, const SOSConditions& c = {});

/// Truth set of f. Throws std::out_of_range on atoms outside the model.
WorldSet eval(const SOSModel& m, const Formula& f);
inline bool holds(const SOSModel& m, const Formula& f, int world) {
  return (eval(m, f) >> world) & 1U;
}

/// Position in spheres[u] of the smallest sphere meeting `a`.
std::optional<std::size_t> smallest_sphere(const SOSModel& m, int u, WorldSet a);

/// Every strictly increasing chain of non-empty subsets of n worlds, the empty
/// chain included: 2, 6, 26 chains for n = 1, 2, 3.
const std::vector<std::vector<WorldSet>>& sphere_chains(int n);

/// Number of models with n worlds over k atoms: 2^(n k) * chains(n)^n.
std::uint64_t model_count(int n, int k);

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Visits every model with n worlds over `atoms` until `visit` returns false.
/// Returns the number of models visited. Throws ResourceLimit when the model
/// space exceeds `max_models`.
std::uint64_t enumerate_models(int n, const std::vector<std::string>& atoms,
                               const std::function<bool(const SOSModel&)>& visit,
                               std::uint64_t max_models = 50'000'000);

struct CountermodelResult {
  std::optional<SOSModel> model;  // f is false at world 0
  std::uint64_t models_checked = 0;
  /// Every model up to the bound was covered (always true when a model is
  /// found or the search ran to completion).
  bool complete = true;
  int worlds_searched = 0;
};

/// Smallest countermodel with at most max_worlds worlds, falsifying f at
/// world 0. Worlds are interchangeable, so only world 0 is tried; spheres of
/// other worlds are reduced to one representative per behaviour on the
/// conditionals that get evaluated there.
CountermodelResult find_countermodel(const Formula& f, int max_worlds,
                                     std::uint64_t max_models = 50'000'000);

struct Countermodel {
  SOSModel model;
  int world = 0;
  Formula formula;
};

std::string world_set_str(WorldSet s, int size);
std::string render_model_text(const SOSModel& m);
nlohmann::json model_json(const SOSModel& m);
std::string render_countermodel_text(const Countermodel& c);
nlohmann::json countermodel_json(const Countermodel& c);

}  // namespace condtab
