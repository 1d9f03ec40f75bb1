#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "geodd/cli.hpp"
#include "geodd/error.hpp"
#include "geodd/oracle.hpp"
#include "geodd/proof.hpp"
#include "geodd/render.hpp"

namespace geodd::cli {

namespace {

struct Options {
  std::vector<std::string> rules;
  std::vector<std::string> lemma_files;
  std::vector<std::string> select;
  std::string format = "table";
  std::string out_file;
  std::size_t max_facts = Limits{}.max_facts;
  std::size_t max_firings = Limits{}.max_firings;
  std::int64_t time_budget_ms = Limits{}.time_budget.count();
  bool all_pairs = false;
  bool eqangle_exchange = false;
  bool no_eqtrans = false;
  std::uint64_t seed = 1;

  Limits limits() const {
    Limits l;
    l.max_facts = max_facts;
    l.max_firings = max_firings;
    l.time_budget = std::chrono::milliseconds(time_budget_ms);
    return l;
  }

  EngineConfig config() const {
    EngineConfig c;
    c.all_pairs_enumeration = all_pairs;
    c.eqangle_exchange = eqangle_exchange;
    c.structural_closure = !no_eqtrans;
    return c;
  }
};

void add_rule_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--rules", o.rules,
                  "Rule catalogs (embedded name or .ax file); default: the problem's includes");
  cmd->add_option("--lemma-file", o.lemma_files, "Catalog of lemma rules to add");
  cmd->add_option("--select", o.select, "Keep only these rules (names or labels)")->delimiter(',');
  cmd->add_option("--max-facts", o.max_facts, "Fact limit")->capture_default_str();
  cmd->add_option("--max-firings", o.max_firings, "Rule firing limit")->capture_default_str();
  cmd->add_option("--time-budget", o.time_budget_ms, "Time limit in milliseconds")
      ->capture_default_str();
  cmd->add_flag("--all-pairs", o.all_pairs, "Enumerate transversals over all point pairs");
  cmd->add_flag("--eqangle-exchange", o.eqangle_exchange, "Add the eqangle exchange symmetry");
  cmd->add_flag("--no-eqtrans", o.no_eqtrans, "Do not add the eqangle transitivity rule");
  cmd->add_option("--seed", o.seed, "Seed for sampled models")->capture_default_str();
}

void add_format_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Trace format")
      ->check(CLI::IsMember({"table", "prose", "structured"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_file, "Write the trace to this file");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Session {
  LoadedProblem loaded;
  std::vector<Rule> rules;
  std::string catalog;
};

Session load_session(const std::string& problem_file, const Options& o) {
  auto loader = catalog_loader();
  auto units = load_units(problem_file, loader);
  Session s;
  s.loaded = build_problem(units);
  std::set<std::string> sources;
  if (o.rules.empty()) {
    s.rules = s.loaded.rules;
    for (const auto& u : units)
      if (u.role == fof::Role::Axiom && !u.formula.variables.empty())
        sources.insert(std::filesystem::path(u.origin.file).filename().string());
  } else {
    for (const auto& sel : o.rules) {
      auto more = load_rule_set(sel, loader);
      s.rules.insert(s.rules.end(), more.begin(), more.end());
      sources.insert(sel);
    }
  }
  for (const auto& f : o.lemma_files) {
    auto more = load_lemma_file(f, loader);
    s.rules.insert(s.rules.end(), more.begin(), more.end());
    sources.insert(f);
  }
  std::set<std::string> names;
  for (const auto& r : s.rules)
    if (!names.insert(r.name).second) throw Error(ErrorKind::Semantic, "rule '" + r.name + "' defined twice");
  if (!o.select.empty()) s.rules = select_rules(s.rules, o.select);
  for (const auto& src : sources) s.catalog += (s.catalog.empty() ? "" : ",") + src;
  return s;
}

std::string config_hash(const Options& o, const std::vector<Rule>& rules) {
  std::string key = "all_pairs=" + std::to_string(o.all_pairs) +
                    ";eqangle_exchange=" + std::to_string(o.eqangle_exchange) +
                    ";eqtrans=" + std::to_string(!o.no_eqtrans) +
                    ";max_facts=" + std::to_string(o.max_facts) +
                    ";max_firings=" + std::to_string(o.max_firings) +
                    ";time_budget_ms=" + std::to_string(o.time_budget_ms) + ";rules=";
  for (const auto& r : rules) key += fof::print_unit(r.to_unit()) + "\n";
  return fnv1a_hex(key);
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_file, std::ios::binary);
  if (!f) throw Error(ErrorKind::Input, "cannot write '" + o.out_file + "'");
  f << text;
}

std::string render(const ProofTrace& trace, const std::string& format, const TraceMeta& meta) {
  if (format == "prose") return render_natural(trace, TemplateCatalog::for_rules(meta.rules));
  if (format == "structured") return render_structured(trace, meta);
  return render_table(trace);
}

void report_limit(const Fixpoint& fp, std::ostream& err) {
  if (fp.tripped)
    err << "limit tripped: " << limit_name(*fp.tripped) << " (" << fp.db.size() << " facts, "
        << fp.stats.firings << " firings)\n";
}

// ---------------------------------------------------------------------------

int cmd_prove(const std::string& problem_file, const Options& o, std::ostream& out,
              std::ostream& err) {
  Session s = load_session(problem_file, o);
  ProofResult res = prove(s.loaded.problem, s.rules, o.limits(), o.config());
  report_limit(res.fixpoint, err);
  if (!res.proved) {
    err << "NotProved: " << s.loaded.problem.name << "\n" << res.advice << "\n";
    return res.fixpoint.tripped ? kLimitTripped : kNotProved;
  }
  err << "Proved: " << s.loaded.problem.name << " (" << res.trace->steps.size() << " steps, "
      << res.fixpoint.db.size() << " facts)\n";
  TraceMeta meta{s.catalog, cited_rules(*res.trace, res.fixpoint.rules),
                 config_hash(o, res.fixpoint.rules)};
  emit(render(*res.trace, o.format, meta), o, out);
  return kProved;
}

int cmd_saturate(const std::string& problem_file, const Options& o, std::ostream& out,
                 std::ostream& err) {
  Session s = load_session(problem_file, o);
  Fixpoint fp = saturate(s.loaded.problem.points, s.loaded.problem.hypotheses, s.rules,
                         o.limits(), o.config());
  report_limit(fp, err);
  std::ostringstream text;
  text << "problem: " << s.loaded.problem.name << "\n"
       << "facts: " << fp.db.size() << "\nfirings: " << fp.stats.firings
       << "\niterations: " << fp.stats.iterations
       << "\ninjected trivial facts: " << fp.stats.injected_trivial
       << "\ndropped degenerate conclusions: " << fp.stats.dropped_degenerate
       << "\nexhausted: " << (fp.exhausted ? "yes" : "no") << "\n\nfacts per predicate:\n";
  for (auto p : kAllPreds)
    if (auto n = fp.stats.facts_per_pred[static_cast<std::size_t>(p)])
      text << "  " << pred_name(p) << ": " << n << "\n";
  text << "\nfirings per rule:\n";
  for (std::size_t r = 0; r < fp.rules.size(); ++r)
    text << "  " << fp.rules[r].label() << ": " << fp.stats.firings_per_rule[r] << "\n";
  std::vector<Fact> facts = fp.db.facts();
  std::sort(facts.begin(), facts.end());
  text << "\nfixpoint:\n";
  for (const auto& f : facts) text << "  " << to_string(f, fp.points) << "\n";
  emit(text.str(), o, out);
  return fp.tripped ? kLimitTripped : kProved;
}

struct CheckOptions {
  std::size_t models = 100;
  std::string model_file;
  std::string trace_file;
  double delta = oracle::kDefaultDelta;
  double epsilon = oracle::kDefaultEpsilon;
};

int cmd_check(const std::string& problem_file, const Options& o, const CheckOptions& c,
              std::ostream& out, std::ostream& err) {
  Problem problem;
  std::vector<Fact> facts;
  std::vector<Fact> ndgs;
  int status = kProved;

  if (!c.trace_file.empty()) {
    StructuredTrace st = parse_structured(read_file(c.trace_file));
    const ProofTrace& t = st.trace;
    auto verdict = verify_trace(t, st.meta.rules, Symmetry::get(o.eqangle_exchange));
    out << "trace: " << (verdict ? "valid" : "INVALID: " + verdict.diagnostic) << "\n";
    if (!verdict) status = kNotProved;
    for (const auto& n : t.points) problem.points.intern(n);
    problem.hypotheses = t.hypotheses;
    problem.goals = t.goals;
    facts = t.hypotheses;
    for (const auto& s : t.steps) facts.insert(facts.end(), s.created.begin(), s.created.end());
    ndgs = t.ndgs;
  } else {
    if (problem_file.empty()) throw Error(ErrorKind::Input, "check needs a problem file or --trace");
    Session s = load_session(problem_file, o);
    problem = s.loaded.problem;
    Fixpoint fp = saturate(problem.points, problem.hypotheses, s.rules, o.limits(), o.config());
    report_limit(fp, err);
    facts = fp.db.facts();
    std::set<Fact> all;
    for (const auto& f : fp.db.firings()) all.insert(f.ndgs.begin(), f.ndgs.end());
    ndgs.assign(all.begin(), all.end());
  }

  std::vector<oracle::Model> models;
  if (!c.model_file.empty()) {
    models.push_back(oracle::parse_model(read_file(c.model_file), problem.points, c.model_file));
    out << "model: " << c.model_file << "\n";
  } else {
    auto recipe = oracle::recipe_for(problem, o.seed, c.delta);
    models = oracle::sample_models(recipe, problem.points, c.models);
    out << "models: " << models.size() << " sampled, seeds " << o.seed << ".."
        << o.seed + models.size() - 1 << " (mt19937_64), delta " << c.delta << "\n";
  }
  for (auto& m : models) m.epsilon = c.epsilon;

  // Models must realise the hypotheses and keep every proviso non-degenerate.
  std::vector<oracle::Model> usable;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto bad_hyp = oracle::check_facts(std::span(&models[i], 1), problem.hypotheses);
    if (!bad_hyp.empty()) {
      out << "model " << i << " does not satisfy " << to_string(bad_hyp.front().fact, problem.points)
          << "\n";
      return kInputError;
    }
    bool degenerate = false;
    for (const auto& n : ndgs)
      if (oracle::eval_fact(models[i], n)) degenerate = true;
    if (degenerate)
      out << "model " << i << " skipped: a non-degeneracy condition fails\n";
    else
      usable.push_back(models[i]);
  }

  auto violations = oracle::check_facts(usable, facts);
  out << "facts audited: " << facts.size() << " in " << usable.size() << " models\n";
  for (const auto& v : violations)
    out << "violation: " << to_string(v.fact, problem.points) << " in model " << v.model << "\n";
  out << "violations: " << violations.size() << "\n";
  for (const auto& g : problem.goals) {
    auto bad = oracle::check_facts(usable, std::span(&g, 1));
    out << "goal " << to_string(g, problem.points) << ": false in " << bad.size() << " of "
        << usable.size() << " models\n";
  }
  if (!violations.empty()) status = kNotProved;
  return status;
}

int cmd_render(const std::string& trace_file, const Options& o, std::ostream& out,
               std::ostream& err) {
  StructuredTrace st = parse_structured(read_file(trace_file));
  auto verdict = verify_trace(st.trace, st.meta.rules, Symmetry::get(o.eqangle_exchange));
  if (!verdict) {
    err << "invalid trace: " << verdict.diagnostic << "\n";
    return kInputError;
  }
  emit(render(st.trace, o.format, st.meta), o, out);
  return kProved;
}

int cmd_lemma(const std::string& problem_file, const std::string& name,
              const std::string& catalog_file, const Options& o, std::ostream& out,
              std::ostream& err) {
  Session s = load_session(problem_file, o);
  ProofResult res = prove(s.loaded.problem, s.rules, o.limits(), o.config());
  report_limit(res.fixpoint, err);
  if (!res.proved) {
    err << "NotProved: " << s.loaded.problem.name << "\n" << res.advice << "\n";
    return res.fixpoint.tripped ? kLimitTripped : kNotProved;
  }
  std::vector<Rule> existing = res.fixpoint.rules;
  std::string previous;
  if (std::filesystem::exists(catalog_file)) {
    previous = read_file(catalog_file);
    for (const auto& u : fof::parse_units(previous, catalog_file).units)
      if (u.name == name) throw Error(ErrorKind::Semantic, "rule name '" + name + "' is taken in " + catalog_file);
  }
  Rule lemma = register_lemma(name, s.loaded.problem, *res.trace, existing);
  std::string unit = fof::print_unit(lemma.to_unit());
  std::ofstream f(catalog_file, std::ios::app | std::ios::binary);
  if (!f) throw Error(ErrorKind::Input, "cannot write '" + catalog_file + "'");
  if (!previous.empty() && previous.back() != '\n') f << "\n";
  f << "% lemma proved from " << std::filesystem::path(problem_file).filename().string() << "\n"
    << unit << "\n";
  out << unit << "\n";
  err << "Proved: " << s.loaded.problem.name << "; lemma " << name << " appended to "
      << catalog_file << "\n";
  return kProved;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"geodd: geometry deductive database prover"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default options; flags win");

  Options o;
  CheckOptions check;
  std::string problem, trace_file, lemma_name, append_to;

  auto* prove_cmd = app.add_subcommand("prove", "Saturate and decide the conjecture");
  prove_cmd->add_option("problem", problem, "Problem file (.p)")->required();
  add_rule_options(prove_cmd, o);
  add_format_options(prove_cmd, o);

  auto* sat_cmd = app.add_subcommand("saturate", "Print fixpoint statistics and facts");
  sat_cmd->add_option("problem", problem, "Problem file (.p)")->required();
  add_rule_options(sat_cmd, o);
  sat_cmd->add_option("--out", o.out_file, "Write the report to this file");

  auto* check_cmd = app.add_subcommand("check", "Audit a fixpoint or a trace against numeric models");
  check_cmd->add_option("problem", problem, "Problem file (.p)");
  add_rule_options(check_cmd, o);
  auto* models_opt = check_cmd->add_option("--models", check.models, "Number of sampled models")
                         ->capture_default_str();
  check_cmd->add_option("--model-file", check.model_file, "Coordinates file")->excludes(models_opt);
  check_cmd->add_option("--trace", check.trace_file, "Structured trace to audit instead");
  check_cmd->add_option("--delta", check.delta, "Degeneracy margin")->capture_default_str();
  check_cmd->add_option("--epsilon", check.epsilon, "Relative tolerance")->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "Re-render a structured trace");
  render_cmd->add_option("trace", trace_file, "Structured trace file")->required();
  render_cmd->add_flag("--eqangle-exchange", o.eqangle_exchange, "Verify with the exchange symmetry");
  add_format_options(render_cmd, o);

  auto* lemma_cmd = app.add_subcommand("lemma", "Prove, then append the theorem as a rule");
  lemma_cmd->add_option("problem", problem, "Problem file (.p)")->required();
  lemma_cmd->add_option("--name", lemma_name, "Rule name")->required();
  lemma_cmd->add_option("--append-to", append_to, "Catalog file to append to")->required();
  add_rule_options(lemma_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*prove_cmd) return cmd_prove(problem, o, out, err);
    if (*sat_cmd) return cmd_saturate(problem, o, out, err);
    if (*check_cmd) return cmd_check(problem, o, check, out, err);
    if (*render_cmd) return cmd_render(trace_file, o, out, err);
    if (*lemma_cmd) return cmd_lemma(problem, lemma_name, append_to, o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace geodd::cli
