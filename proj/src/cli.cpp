#include "condtab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "condtab/corpus.hpp"
#include "condtab/fixtures.hpp"
#include "condtab/proof_render.hpp"
#include "condtab/sos.hpp"

namespace condtab {

using nlohmann::json;

std::string_view agreement_name(Agreement a) {
  switch (a) {
    case Agreement::kValidNoCountermodel: return "valid";
    case Agreement::kValidRefuted: return "unsound";
    case Agreement::kNotProvedRefuted: return "refuted";
    case Agreement::kNotProvedUndecided: return "undecided at bound";
  }
  return "?";
}

double DiffReport::refuted_share() const {
  const std::size_t n = not_proved();
  if (n == 0) return 1.0;
  return static_cast<double>(count(Agreement::kNotProvedRefuted)) / static_cast<double>(n);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ProverConfig prover_config(const RunConfig& c) {
  ProverConfig p;
  p.node_budget = c.budget;
  p.t2_enabled = c.t2_enabled;
  p.top_clause = c.top_clause;
  return p;
}

json config_json(const RunConfig& c) {
  json j = {{"command", c.command},
            {"max_worlds", c.max_worlds},
            {"budget", c.budget},
            {"t2_enabled", c.t2_enabled},
            {"top_clause", c.top_clause},
            {"seed", c.seed},
            {"count", c.count}};
  j["formula"] = c.formula ? json(*c.formula) : json(nullptr);
  j["corpus"] = c.corpus ? json(*c.corpus) : json(nullptr);
  return j;
}

json document(const RunConfig& c) {
  return {{"schema_version", kProofSchemaVersion}, {"config", config_json(c)}};
}

DiffItem diff_one(std::size_t index, const Formula& f, const ProverConfig& prover, int max_worlds) {
  DiffItem item{index, f};
  auto t0 = Clock::now();
  const Verdict v = prove(f, prover);
  item.prove_ms = ms_since(t0);
  item.valid = v.valid();
  item.budget_exhausted = v.resources.budget_exhausted;
  item.nodes = v.resources.nodes;
  t0 = Clock::now();
  const CountermodelResult cm = find_countermodel(f, max_worlds);
  item.oracle_ms = ms_since(t0);
  item.refuted = cm.model.has_value();
  item.oracle_complete = cm.complete;
  item.countermodel_worlds = cm.model ? cm.model->size : 0;
  if (item.valid) {
    item.agreement = item.refuted ? Agreement::kValidRefuted : Agreement::kValidNoCountermodel;
  } else {
    item.agreement = item.refuted ? Agreement::kNotProvedRefuted : Agreement::kNotProvedUndecided;
  }
  return item;
}

std::vector<Formula> load_inputs(const RunConfig& c) {
  std::vector<Formula> fs;
  if (c.formula) fs.push_back(parse(*c.formula));
  if (c.corpus) {
    auto more = read_corpus(*c.corpus);
    fs.insert(fs.end(), more.begin(), more.end());
  }
  return fs;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmd_prove(const RunConfig& c, std::ostream& out) {
  const auto inputs = load_inputs(c);
  if (inputs.empty()) throw UsageError("prove needs --formula or --corpus");
  int code = kExitOk;
  json results = json::array();
  for (const Formula& f : inputs) {
    const Verdict v = prove(f, prover_config(c));
    if (v.resources.budget_exhausted) {
      code = kExitBudget;
    } else if (!v.valid() && code == kExitOk) {
      code = kExitNegative;
    }
    if (c.format == OutputFormat::kJson) {
      results.push_back(to_json(v));
    } else {
      out << render_text(v);
      if (inputs.size() > 1) out << '\n';
    }
  }
  if (c.format == OutputFormat::kJson) {
    json doc = document(c);
    doc["results"] = std::move(results);
    out << doc.dump(2) << '\n';
  }
  return code;
}

int cmd_refute(const RunConfig& c, std::ostream& out) {
  const auto inputs = load_inputs(c);
  if (inputs.empty()) throw UsageError("refute needs --formula or --corpus");
  int code = kExitOk;
  json results = json::array();
  for (const Formula& f : inputs) {
    CountermodelResult r;
    bool limited = false;
    try {
      r = find_countermodel(f, c.max_worlds);
      limited = !r.complete;
    } catch (const ResourceLimit&) {
      limited = true;
    }
    if (r.model) {
      code = std::max(code, static_cast<int>(kExitNegative));
    } else if (limited) {
      code = kExitBudget;
    }
    if (c.format == OutputFormat::kJson) {
      json j = {{"formula", f.str()},
                {"max_worlds", c.max_worlds},
                {"models_checked", r.models_checked},
                {"complete", !limited}};
      j["countermodel"] = r.model ? countermodel_json({*r.model, 0, f}) : json(nullptr);
      results.push_back(std::move(j));
    } else if (r.model) {
      out << render_countermodel_text({*r.model, 0, f});
    } else {
      out << f.str() << ": none within bound " << c.max_worlds
          << (limited ? " (search limit reached)" : "") << '\n';
    }
  }
  if (c.format == OutputFormat::kJson) {
    json doc = document(c);
    doc["results"] = std::move(results);
    out << doc.dump(2) << '\n';
  }
  return code;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const auto inputs = load_inputs(c);
  if (inputs.empty()) throw UsageError("check needs --formula or --corpus");
  int code = kExitOk;
  json results = json::array();
  for (const Formula& f : inputs) {
    const auto v = check_flat_fragment(f);
    if (v) code = kExitNegative;
    if (c.format == OutputFormat::kJson) {
      json j = {{"formula", f.str()}, {"flat", !v}};
      j["violation"] = v ? json{{"path", v->path}, {"subformula", v->subformula.str()}}
                         : json(nullptr);
      results.push_back(std::move(j));
    } else if (v) {
      out << f.str() << ": conditional in antecedent at " << v->path << ": "
          << v->subformula.str() << '\n';
    } else {
      out << f.str() << ": ok\n";
    }
  }
  if (c.format == OutputFormat::kJson) {
    json doc = document(c);
    doc["results"] = std::move(results);
    out << doc.dump(2) << '\n';
  }
  return code;
}

int cmd_fixtures(const RunConfig& c, std::ostream& out) {
  int code = kExitOk;
  json results = json::array();
  for (const Fixture& fx : builtin_fixtures()) {
    const FixtureResult r = replay(fx, prover_config(c));
    if (!r.ok()) code = kExitInconsistent;
    if (c.format == OutputFormat::kJson) {
      results.push_back({{"name", r.name},
                         {"formula", fx.formula},
                         {"valid", r.valid},
                         {"closing_match", r.closing_match},
                         {"registry_match", r.registry_match},
                         {"expected", r.expected},
                         {"actual", r.actual}});
    } else {
      out << (r.ok() ? "ok   " : "FAIL ") << r.name << ": " << fx.formula << '\n'
          << "     closes on " << r.actual << '\n';
      if (!r.ok()) out << "     expected  " << r.expected << '\n';
    }
  }
  if (c.format == OutputFormat::kJson) {
    json doc = document(c);
    doc["results"] = std::move(results);
    out << doc.dump(2) << '\n';
  }
  return code;
}

int cmd_diff(const RunConfig& c, std::ostream& out) {
  std::vector<Formula> corpus;
  if (c.corpus || c.formula) {
    corpus = load_inputs(c);
  } else {
    CorpusOptions opts;
    opts.seed = c.seed;
    opts.count = c.count;
    corpus = generate_corpus(opts);
  }
  const DiffReport rep = run_diff(corpus, prover_config(c), c.max_worlds, c.jobs);
  std::size_t exhausted = 0;
  for (const DiffItem& it : rep.items) exhausted += it.budget_exhausted;
  if (c.format == OutputFormat::kJson) {
    json doc = document(c);
    json items = json::array();
    for (const DiffItem& it : rep.items) {
      items.push_back({{"index", it.index},
                       {"formula", it.formula.str()},
                       {"prover", it.valid ? "valid" : "not_proved"},
                       {"budget_exhausted", it.budget_exhausted},
                       {"nodes", it.nodes},
                       {"countermodel_worlds", it.countermodel_worlds},
                       {"oracle_complete", it.oracle_complete},
                       {"agreement", agreement_name(it.agreement)}});
    }
    doc["results"] = std::move(items);
    doc["summary"] = {{"formulas", rep.items.size()},
                      {"valid_no_countermodel", rep.count(Agreement::kValidNoCountermodel)},
                      {"valid_refuted", rep.count(Agreement::kValidRefuted)},
                      {"not_proved_refuted", rep.count(Agreement::kNotProvedRefuted)},
                      {"not_proved_undecided", rep.count(Agreement::kNotProvedUndecided)},
                      {"budget_exhausted", exhausted},
                      {"refuted_share", rep.refuted_share()},
                      {"elapsed_s", rep.elapsed_s}};
    out << doc.dump(2) << '\n';
  } else {
    for (const DiffItem& it : rep.items) {
      if (it.agreement == Agreement::kValidRefuted) {
        out << "UNSOUND #" << it.index << ": " << it.formula.str() << '\n';
      } else if (it.agreement == Agreement::kNotProvedUndecided) {
        out << "undecided at bound #" << it.index << ": " << it.formula.str() << '\n';
      }
    }
    out << "formulas: " << rep.items.size() << ", max worlds " << c.max_worlds << '\n';
    out << std::setw(14) << "" << std::setw(10) << "refuted" << std::setw(16)
        << "no countermodel" << '\n';
    out << std::setw(14) << std::left << "valid" << std::right << std::setw(10)
        << rep.count(Agreement::kValidRefuted) << std::setw(16)
        << rep.count(Agreement::kValidNoCountermodel) << '\n';
    out << std::setw(14) << std::left << "not proved" << std::right << std::setw(10)
        << rep.count(Agreement::kNotProvedRefuted) << std::setw(16)
        << rep.count(Agreement::kNotProvedUndecided) << '\n';
    out << "unsound: " << rep.unsound() << '\n';
    out << "refuted share of not proved: " << std::fixed << std::setprecision(3)
        << rep.refuted_share() << '\n';
    out << "budget exhausted: " << exhausted << '\n';
    out << "elapsed: " << std::setprecision(2) << rep.elapsed_s << " s\n";
  }
  return rep.unsound() > 0 ? kExitInconsistent : kExitOk;
}

}  // namespace

DiffReport run_diff(const std::vector<Formula>& corpus, const ProverConfig& prover,
                    int max_worlds, unsigned jobs) {
  const auto t0 = Clock::now();
  DiffReport rep;
  std::vector<std::optional<DiffItem>> slots(corpus.size());
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, corpus.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < corpus.size(); k = next++) {
      slots[k] = diff_one(k, corpus[k], prover, max_worlds);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& s : slots) {
    ++rep.counts[static_cast<int>(s->agreement)];
    rep.items.push_back(std::move(*s));
  }
  rep.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.budget == 0) throw UsageError("--budget must be positive");
    if (config.max_worlds < 1 || config.max_worlds > 5) {
      throw UsageError("--max-worlds must be between 1 and 5");
    }
    if (config.command == "prove") return cmd_prove(config, out);
    if (config.command == "refute") return cmd_refute(config, out);
    if (config.command == "check") return cmd_check(config, out);
    if (config.command == "fixtures") return cmd_fixtures(config, out);
    if (config.command == "diff") return cmd_diff(config, out);
    throw UsageError("unknown command: " + config.command);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const FragmentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Labelled tableau prover and sphere-model countermodel finder for Lewis' V"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "text";
  bool no_t2 = false;
  bool no_top = false;
  std::string formula;
  std::string corpus;

  auto common = [&](CLI::App* sub, bool inputs) {
    if (inputs) {
      sub->add_option("--formula", formula, "Formula text");
      sub->add_option("--corpus", corpus, "File with one formula per line");
    }
    sub->add_option("--max-worlds", cfg.max_worlds, "Countermodel bound")->check(CLI::Range(1, 5));
    sub->add_option("--budget", cfg.budget, "Node budget per proof")->check(CLI::PositiveNumber);
    sub->add_flag("--no-t2", no_t2, "Disable the second true-conditional rule");
    sub->add_flag("--no-top-clause", no_top,
                  "Do not let a variable indexed by a tautology unify with any index");
    sub->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json", "json-like", "machine"}));
  };
  common(app.add_subcommand("prove", "Prove a formula"), true);
  common(app.add_subcommand("refute", "Search for a countermodel"), true);
  common(app.add_subcommand("check", "Check the flat fragment"), true);
  common(app.add_subcommand("fixtures", "Replay the built-in worked proofs"), false);
  CLI::App* diff = app.add_subcommand("diff", "Compare the prover with the countermodel search");
  common(diff, true);
  diff->add_option("--seed", cfg.seed, "Corpus seed");
  diff->add_option("--count", cfg.count, "Corpus size");
  diff->add_option("--jobs", cfg.jobs, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!formula.empty()) cfg.formula = formula;
  if (!corpus.empty()) cfg.corpus = corpus;
  cfg.t2_enabled = !no_t2;
  cfg.top_clause = !no_top;
  cfg.format = format == "text" ? OutputFormat::kText : OutputFormat::kJson;
  return run(cfg, out, err);
}

}  // namespace condtab
