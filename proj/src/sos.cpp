#include "condtab/sos.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace condtab {

using nlohmann::json;

std::vector<std::string> validate(const SOSModel& m, const SOSConditions& c) {
  std::vector<std::string> issues;
  if (m.size < 1 || m.size > kMaxWorlds) {
    issues.push_back("world count " + std::to_string(m.size) + " out of range");
    return issues;
  }
  if (m.valuation.size() != m.atoms.size()) issues.push_back("valuation size mismatch");
  if (!std::is_sorted(m.atoms.begin(), m.atoms.end())) issues.push_back("atoms not sorted");
  for (const WorldSet v : m.valuation) {
    if (v & ~m.all()) issues.push_back("valuation mentions a world outside W");
  }
  if (static_cast<int>(m.spheres.size()) != m.size) {
    issues.push_back("one sphere system per world required");
    return issues;
  }
  for (int u = 0; u < m.size; ++u) {
    const auto& s = m.spheres[u];
    const std::string at = "S(" + std::to_string(u) + ")";
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == 0) issues.push_back(at + " has an empty sphere");
      if (s[k] & ~m.all()) issues.push_back(at + " mentions a world outside W");
      if (k > 0 && ((s[k - 1] & ~s[k]) != 0 || s[k - 1] == s[k])) {
        issues.push_back(at + " is not strictly nested at position " + std::to_string(k));
      }
    }
    if (c.normal && s.empty()) issues.push_back(at + " is empty but normality is required");
    if (c.universal && m.reach(u) != m.all()) issues.push_back(at + " does not cover W");
    if (c.absolute && s != m.spheres[0]) issues.push_back(at + " differs from S(0)");
    if (c.centered && (s.empty() || s.front() != (WorldSet{1} << u))) {
      issues.push_back(at + " is not centered on " + std::to_string(u));
    }
  }
  return issues;
}

std::optional<std::size_t> smallest_sphere(const SOSModel& m, int u, WorldSet a) {
  const auto& s = m.spheres[u];
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] & a) return k;
  }
  return std::nullopt;
}

WorldSet eval(const SOSModel& m, const Formula& f) {
  switch (f.kind()) {
    case Connective::kAtom: {
      auto it = std::lower_bound(m.atoms.begin(), m.atoms.end(), f.name());
      if (it == m.atoms.end() || *it != f.name()) {
        throw std::out_of_range("atom not in model: " + f.name());
      }
      return m.valuation[static_cast<std::size_t>(it - m.atoms.begin())];
    }
    case Connective::kNot: return m.all() & ~eval(m, f.operand());
    case Connective::kAnd: return eval(m, f.left()) & eval(m, f.right());
    case Connective::kOr: return eval(m, f.left()) | eval(m, f.right());
    case Connective::kImplies: return m.all() & (~eval(m, f.left()) | eval(m, f.right()));
    case Connective::kIff: return m.all() & ~(eval(m, f.left()) ^ eval(m, f.right()));
    case Connective::kCond: {
      const WorldSet a = eval(m, f.antecedent());
      const WorldSet b = eval(m, f.consequent());
      WorldSet out = 0;
      for (int u = 0; u < m.size; ++u) {
        auto k = smallest_sphere(m, u, a);
        // Vacuous when no sphere around u contains an a-world.
        if (!k || (m.spheres[u][*k] & a & ~b) == 0) out |= WorldSet{1} << u;
      }
      return out;
    }
  }
  return 0;
}

namespace {

void extend_chains(WorldSet all, std::vector<WorldSet>& cur,
                   std::vector<std::vector<WorldSet>>& out) {
  out.push_back(cur);
  const WorldSet last = cur.empty() ? 0 : cur.back();
  for (WorldSet s = 1; s <= all; ++s) {
    if ((s & ~all) || (s & last) != last || s == last) continue;
    cur.push_back(s);
    extend_chains(all, cur, out);
    cur.pop_back();
  }
}

constexpr int kMaxChainWorlds = 5;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int k = 0; k < exp; ++k) r = saturating_mul(r, base);
  return r;
}

void set_valuation(SOSModel& m, std::uint64_t bits) {
  for (std::size_t j = 0; j < m.atoms.size(); ++j) {
    m.valuation[j] = static_cast<WorldSet>((bits >> (j * m.size)) & m.all());
  }
}

SOSModel blank_model(int n, const std::vector<std::string>& atoms) {
  SOSModel m;
  m.size = n;
  m.atoms = atoms;
  std::sort(m.atoms.begin(), m.atoms.end());
  m.valuation.assign(m.atoms.size(), 0);
  m.spheres.assign(static_cast<std::size_t>(n), {});
  return m;
}

void collect_inner(const Formula& f, bool inside, std::vector<Formula>& out) {
  if (f.is_conditional()) {
    if (inside && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    collect_inner(f.antecedent(), true, out);
    collect_inner(f.consequent(), true, out);
    return;
  }
  if (f.is_atom()) return;
  if (f.kind() == Connective::kNot) {
    collect_inner(f.operand(), inside, out);
    return;
  }
  collect_inner(f.left(), inside, out);
  collect_inner(f.right(), inside, out);
}

}  // namespace

const std::vector<std::vector<WorldSet>>& sphere_chains(int n) {
  static std::array<std::vector<std::vector<WorldSet>>, kMaxChainWorlds + 1> cache;
  static std::array<std::once_flag, kMaxChainWorlds + 1> once;
  if (n < 0 || n > kMaxChainWorlds) {
    throw ResourceLimit("sphere chains are only enumerated up to " +
                        std::to_string(kMaxChainWorlds) + " worlds");
  }
  std::call_once(once[n], [n] {
    std::vector<WorldSet> cur;
    extend_chains(n == 0 ? 0 : (WorldSet{1} << n) - 1, cur, cache[n]);
  });
  return cache[n];
}

std::uint64_t model_count(int n, int k) {
  const std::uint64_t chains = sphere_chains(n).size();
  return saturating_mul(saturating_pow(2, n * k), saturating_pow(chains, n));
}

std::uint64_t enumerate_models(int n, const std::vector<std::string>& atoms,
                               const std::function<bool(const SOSModel&)>& visit,
                               std::uint64_t max_models) {
  const int k = static_cast<int>(atoms.size());
  const std::uint64_t total = model_count(n, k);
  if (total > max_models || n * k >= 64) {
    throw ResourceLimit("model space of " + std::to_string(total) + " exceeds the limit of " +
                        std::to_string(max_models));
  }
  const auto& chains = sphere_chains(n);
  SOSModel m = blank_model(n, atoms);
  std::uint64_t visited = 0;
  const std::uint64_t valuations = std::uint64_t{1} << (n * k);
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  for (std::uint64_t v = 0; v < valuations; ++v) {
    set_valuation(m, v);
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      for (int u = 0; u < n; ++u) m.spheres[u] = chains[pick[u]];
      ++visited;
      if (!visit(m)) return visited;
      int u = 0;
      while (u < n && ++pick[u] == chains.size()) pick[u++] = 0;
      if (u == n) break;
    }
  }
  return visited;
}

CountermodelResult find_countermodel(const Formula& f, int max_worlds, std::uint64_t max_models) {
  CountermodelResult res;
  std::set<std::string> atom_set = f.atoms();
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::vector<Formula> inner;
  collect_inner(f, false, inner);
  bool shallow = true;
  for (const Formula& c : inner) {
    if (c.conditional_nesting() > 1) shallow = false;
  }
  const int k = static_cast<int>(atoms.size());

  for (int n = 1; n <= max_worlds; ++n) {
    res.worlds_searched = n;
    if (n * k >= 64) {
      res.complete = false;
      return res;
    }
    const auto& chains = sphere_chains(n);
    SOSModel m = blank_model(n, atoms);
    const std::uint64_t valuations = std::uint64_t{1} << (n * k);
    std::vector<std::vector<std::size_t>> reps(static_cast<std::size_t>(n));
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    for (std::uint64_t v = 0; v < valuations; ++v) {
      set_valuation(m, v);
      reps[0].resize(chains.size());
      for (std::size_t c = 0; c < chains.size(); ++c) reps[0][c] = c;
      for (int u = 1; u < n; ++u) {
        auto& r = reps[u];
        r.clear();
        if (!shallow) {
          for (std::size_t c = 0; c < chains.size(); ++c) r.push_back(c);
          continue;
        }
        if (inner.empty()) {
          r.push_back(0);  // the empty chain
          continue;
        }
        // Inner conditionals with conditional-free parts depend on S(u) only.
        std::map<std::vector<bool>, std::size_t> seen;
        for (std::size_t c = 0; c < chains.size(); ++c) {
          m.spheres[u] = chains[c];
          std::vector<bool> key;
          for (const Formula& g : inner) key.push_back(holds(m, g, u));
          if (seen.emplace(std::move(key), c).second) r.push_back(c);
        }
      }
      std::fill(pick.begin(), pick.end(), 0);
      for (;;) {
        for (int u = 0; u < n; ++u) m.spheres[u] = chains[reps[u][pick[u]]];
        if (++res.models_checked > max_models) {
          res.complete = false;
          return res;
        }
        if ((eval(m, f) & 1U) == 0) {
          res.model = m;
          return res;
        }
        int u = 0;
        while (u < n && ++pick[u] == reps[u].size()) pick[u++] = 0;
        if (u == n) break;
      }
    }
  }
  return res;
}

std::string world_set_str(WorldSet s, int size) {
  std::string out = "{";
  bool first = true;
  for (int w = 0; w < size; ++w) {
    if (!((s >> w) & 1U)) continue;
    if (!first) out += ",";
    out += std::to_string(w);
    first = false;
  }
  return out + "}";
}

std::string render_model_text(const SOSModel& m) {
  std::ostringstream os;
  os << "worlds: " << m.size << " (evaluated at 0)\n";
  for (std::size_t j = 0; j < m.atoms.size(); ++j) {
    os << "  " << m.atoms[j] << " true at " << world_set_str(m.valuation[j], m.size) << '\n';
  }
  for (int u = 0; u < m.size; ++u) {
    os << "  S(" << u << "):";
    if (m.spheres[u].empty()) os << " none";
    for (std::size_t k = 0; k < m.spheres[u].size(); ++k) {
      os << (k ? " < " : " ") << world_set_str(m.spheres[u][k], m.size);
    }
    os << '\n';
  }
  return os.str();
}

json model_json(const SOSModel& m) {
  auto set_json = [&](WorldSet s) {
    json a = json::array();
    for (int w = 0; w < m.size; ++w) {
      if ((s >> w) & 1U) a.push_back(w);
    }
    return a;
  };
  json j;
  j["worlds"] = m.size;
  j["evaluation_world"] = 0;
  json val = json::object();
  for (std::size_t k = 0; k < m.atoms.size(); ++k) val[m.atoms[k]] = set_json(m.valuation[k]);
  j["valuation"] = std::move(val);
  json spheres = json::array();
  for (int u = 0; u < m.size; ++u) {
    json chain = json::array();
    for (WorldSet s : m.spheres[u]) chain.push_back(set_json(s));
    spheres.push_back(std::move(chain));
  }
  j["spheres"] = std::move(spheres);
  return j;
}

std::string render_countermodel_text(const Countermodel& c) {
  return c.formula.str() + " is false at world " + std::to_string(c.world) + "\n" +
         render_model_text(c.model);
}

json countermodel_json(const Countermodel& c) {
  json j = model_json(c.model);
  j["evaluation_world"] = c.world;
  j["formula"] = c.formula.str();
  return j;
}

}  // namespace condtab
