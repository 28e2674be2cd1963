#include "condtab/proof_render.hpp"

#include <map>
#include <sstream>

namespace condtab {

using nlohmann::json;

std::string_view status_name(BranchStatus s) {
  switch (s) {
    case BranchStatus::kClosed: return "closed";
    case BranchStatus::kOpen: return "open";
    case BranchStatus::kExhausted: return "exhausted";
    case BranchStatus::kUnexplored: return "unexplored";
  }
  return "?";
}

namespace {

std::string occurrence_text(const Occurrence& o) {
  if (o.implicit()) return "(" + o.ls().str() + ")";
  return std::to_string(o.node);
}

std::string premises_text(const std::vector<int>& ps) {
  std::string s;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(ps[k]);
  }
  return s;
}

class TextRenderer {
 public:
  explicit TextRenderer(const Verdict& v) : v_(v) {
    for (const ProofNode& n : v.tree.nodes) children_[n.parent].push_back(n.id);
    for (const BranchRecord& b : v.tree.branches) {
      if (!b.path.empty()) leaves_[b.path.back()] = &b;
    }
  }

  std::string run() {
    out_ << "formula: " << v_.formula.str() << '\n';
    out_ << "verdict: " << (v_.valid() ? "valid" : "not proved") << '\n';
    for (int root : children_[0]) walk(root, "");
    out_ << "nodes: " << v_.resources.nodes << "/" << v_.resources.node_budget
         << ", closed branches: " << v_.resources.closed_branches;
    if (v_.resources.budget_exhausted) out_ << ", budget exhausted";
    out_ << '\n';
    return out_.str();
  }

 private:
  void line(const ProofNode& n, const std::string& indent) {
    std::string text = std::to_string(n.id) + ". " + n.ls.str();
    out_ << indent << text;
    const std::size_t width = 56;
    const std::size_t used = indent.size() + text.size();
    out_ << std::string(used < width ? width - used : 2, ' ') << rule_name(n.rule);
    if (!n.premises.empty()) out_ << ' ' << premises_text(n.premises);
    out_ << '\n';
  }

  void walk(int id, const std::string& indent) {
    for (;;) {
      line(v_.tree.nodes.at(static_cast<std::size_t>(id - 1)), indent);
      const auto& kids = children_[id];
      if (kids.size() == 1) {
        id = kids.front();
        continue;
      }
      if (kids.empty()) {
        leaf(id, indent);
        return;
      }
      for (int kid : kids) {
        out_ << indent << "|\n";
        walk(kid, indent + "|  ");
      }
      return;
    }
  }

  void leaf(int id, const std::string& indent) {
    auto it = leaves_.find(id);
    if (it == leaves_.end()) return;
    const BranchRecord& b = *it->second;
    for (const RegistryEvent& e : b.registry) {
      out_ << indent << "   cond-equiv " << e.premise_a << "," << e.premise_b << ": "
           << e.entry.a.str() << " ~ " << e.entry.b.str() << " over " << e.entry.base.str()
           << '\n';
    }
    out_ << indent << "   " << status_name(b.status);
    if (b.closing) {
      out_ << " by " << occurrence_text(b.closing->first) << " and "
           << occurrence_text(b.closing->second);
      if (b.closing->witness) out_ << " at " << b.closing->witness->str();
    }
    out_ << '\n';
  }

  const Verdict& v_;
  std::map<int, std::vector<int>> children_;
  std::map<int, const BranchRecord*> leaves_;
  std::ostringstream out_;
};

json occurrence_json(const Occurrence& o) {
  json j;
  j["node"] = o.implicit() ? json(nullptr) : json(o.node);
  j["sign"] = std::string(1, sign_char(o.signed_formula.sign));
  j["formula"] = o.signed_formula.formula.str();
  j["label"] = o.label.str();
  j["label_worlds"] = label_json(o.label);
  return j;
}

}  // namespace

std::string render_text(const Verdict& v) { return TextRenderer(v).run(); }

json label_json(const Label& l) {
  json worlds = json::array();
  for (const World& w : l.worlds()) {
    json jw;
    jw["kind"] = w.is_constant() ? "constant" : "variable";
    jw["id"] = w.id;
    jw["index"] = w.index ? json(w.index->str()) : json(nullptr);
    worlds.push_back(std::move(jw));
  }
  return worlds;
}

json to_json(const Verdict& v) {
  json doc;
  doc["schema_version"] = kProofSchemaVersion;
  doc["formula"] = v.formula.str();
  doc["verdict"] = v.valid() ? "valid" : "not_proved";
  doc["config"] = {{"node_budget", v.config.node_budget},
                   {"t2_enabled", v.config.t2_enabled},
                   {"t2_across_registry", v.config.t2_across_registry},
                   {"top_clause", v.config.top_clause}};
  doc["resources"] = {{"nodes", v.resources.nodes},
                      {"node_budget", v.resources.node_budget},
                      {"closed_branches", v.resources.closed_branches},
                      {"open_branches", v.resources.open_branches},
                      {"max_label_length", v.resources.max_label_length},
                      {"budget_exhausted", v.resources.budget_exhausted}};
  json nodes = json::array();
  for (const ProofNode& n : v.tree.nodes) {
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent},
                     {"sign", std::string(1, sign_char(n.ls.signed_formula.sign))},
                     {"formula", n.ls.signed_formula.formula.str()},
                     {"label", n.ls.label.str()},
                     {"label_worlds", label_json(n.ls.label)},
                     {"rule", rule_name(n.rule)},
                     {"premises", n.premises}});
  }
  doc["nodes"] = std::move(nodes);
  json branches = json::array();
  for (const BranchRecord& b : v.tree.branches) {
    json jb;
    jb["status"] = status_name(b.status);
    jb["path"] = b.path;
    if (b.closing) {
      jb["closing"] = {{"first", occurrence_json(b.closing->first)},
                       {"second", occurrence_json(b.closing->second)},
                       {"witness", b.closing->witness ? json(b.closing->witness->str())
                                                      : json(nullptr)}};
    } else {
      jb["closing"] = nullptr;
    }
    json reg = json::array();
    for (const RegistryEvent& e : b.registry) {
      reg.push_back({{"a", e.entry.a.str()},
                     {"b", e.entry.b.str()},
                     {"base", e.entry.base.str()},
                     {"premises", {e.premise_a, e.premise_b}},
                     {"after_node", e.after_node}});
    }
    jb["registry"] = std::move(reg);
    branches.push_back(std::move(jb));
  }
  doc["branches"] = std::move(branches);
  return doc;
}

}  // namespace condtab
