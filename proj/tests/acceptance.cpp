// One PASS/FAIL line per acceptance criterion, with sub-checks indented
// below it. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>

#include "geodd/cli.hpp"
#include "geodd/oracle.hpp"
#include "geodd/proof.hpp"
#include "geodd/render.hpp"
#include "support.hpp"

using namespace geodd;
using testsupport::data_path;
using testsupport::F;
using testsupport::load;
using testsupport::slurp;

namespace {

// Tolerances and sizes.
constexpr double kMaxSeconds = 1.0;
constexpr std::size_t kModels = 100;
constexpr double kDelta = 1e-3;
constexpr std::size_t kRandomFacts = 10000;
constexpr std::size_t kOraclePairs = 1000;

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  bool check(bool ok, const std::string& what) {
    lines_.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + what);
    ok_ = ok_ && ok;
    return ok;
  }
  void note(const std::string& what) { lines_.push_back("    note  " + what); }

  bool finish(int n) const {
    std::cout << (ok_ ? "PASS " : "FAIL ") << n << ": " << title_ << "\n";
    for (const auto& l : lines_) std::cout << l << "\n";
    return ok_;
  }

 private:
  std::string title_;
  std::vector<std::string> lines_;
  bool ok_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) { return std::to_string(s).substr(0, 5) + " s"; }

bool is_structural(const ProofStep& s) { return s.rule == kTrivialRule || s.rule == eqtrans_rule().name; }

// A row of a table as printed in the source: the rules it names, the facts it
// adds and the facts it cites.
struct TableRow {
  std::vector<std::string> labels;
  std::vector<std::string> facts;
  std::vector<std::string> used;
  std::vector<std::string> ndgs;
};

using PointMap = std::vector<PointId>;

Fact mapped(const Fact& f, const PointMap& pi) {
  Fact g = f;
  for (std::size_t i = 0; i < arity(f.kind); ++i) g.pts[i] = pi[f.pts[i]];
  return canon(g);
}

// Point permutations that fix every hypothesis up to symmetry, identity first.
std::vector<PointMap> automorphisms(const Problem& p) {
  PointMap pi(p.points.size());
  std::iota(pi.begin(), pi.end(), PointId{0});
  std::vector<PointMap> out;
  std::set<Fact> hyps;
  for (const auto& h : p.hypotheses) hyps.insert(canon(h));
  do {
    bool fixes = true;
    for (const auto& h : hyps) fixes = fixes && hyps.count(mapped(h, pi));
    if (fixes) out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

// Whether `fact` follows from `used` by one application of a rule named in
// the row, as judged by the trace checker.
bool one_step(const Problem& p, const std::vector<Rule>& rules, const TableRow& row, const Fact& fact) {
  std::vector<Fact> used, ndgs;
  for (const auto& u : row.used) used.push_back(canon(F(p.points, u)));
  for (const auto& n : row.ndgs) ndgs.push_back(canon(F(p.points, n)));
  for (const auto& r : rules) {
    if (std::find(row.labels.begin(), row.labels.end(), r.label()) == row.labels.end()) continue;
    // Try every subset of the cited facts as the premises.
    for (std::size_t mask = 1; mask < (1u << used.size()); ++mask) {
      ProofTrace t;
      t.points = p.points.names();
      t.hypotheses = used;
      ProofStep s;
      s.rule = r.name;
      s.label = r.label();
      for (std::size_t i = 0; i < used.size(); ++i)
        if (mask & (1u << i)) s.used.push_back(used[i]);
      s.created = {fact};
      for (const auto& ndg_subset : {std::vector<Fact>{}, ndgs}) {
        s.ndgs = ndg_subset;
        t.steps = {s};
        t.goals = {fact};
        t.ndgs = ndg_subset;
        if (verify_trace(t, rules).ok) return true;
      }
    }
  }
  return false;
}

// Matches the derivation against the source table: rows in order, every fact
// of a row created by a step carrying one of the row's labels, after
// relabelling by `pi`. Facts the row's rules cannot produce from the row's
// cited facts in one step are reported and skipped.
bool match_rows(Criterion& c, const Problem& p, const ProofTrace& t, const std::vector<Rule>& rules,
                const std::vector<TableRow>& rows, const PointMap& pi, bool report) {
  std::size_t floor = 0;
  bool all = true;
  for (const auto& row : rows) {
    std::size_t last = floor;
    std::string labels;
    for (const auto& l : row.labels) labels += (labels.empty() ? "" : "/") + l;
    for (const auto& text : row.facts) {
      Fact listed = canon(F(p.points, text));
      Fact want = mapped(listed, pi);
      std::optional<std::size_t> at;
      for (std::size_t i = floor; i < t.steps.size() && !at; ++i) {
        const auto& s = t.steps[i];
        if (is_structural(s)) continue;
        if (std::find(row.labels.begin(), row.labels.end(), s.label) == row.labels.end()) continue;
        if (std::find(s.created.begin(), s.created.end(), want) != s.created.end()) at = i;
      }
      if (at) {
        last = std::max(last, *at);
        if (report) c.check(true, labels + " creates " + text + " as " + t.show(want) + " (step " + std::to_string(*at) + ")");
        continue;
      }
      if (!one_step(p, rules, row, listed)) {
        if (report)
          c.note(text + " is not a one-step " + labels + " consequence of the row's cited facts; not required");
        continue;
      }
      all = false;
      if (report) c.check(false, labels + " creates " + text);
    }
    floor = last;
  }
  return all;
}

bool match_rows_up_to_automorphism(Criterion& c, const Problem& p, const ProofTrace& t,
                                   const std::vector<Rule>& rules, const std::vector<TableRow>& rows) {
  Criterion scratch("");
  for (const auto& pi : automorphisms(p)) {
    if (!match_rows(scratch, p, t, rules, rows, pi, false)) continue;
    std::string name;
    for (std::size_t i = 0; i < pi.size(); ++i)
      if (pi[i] != i) name += p.points.name(static_cast<PointId>(i)) + "->" + p.points.name(pi[i]) + " ";
    c.note("relabelling: " + (name.empty() ? std::string("identity") : name));
    match_rows(c, p, t, rules, rows, pi, true);
    return true;
  }
  match_rows(c, p, t, rules, rows, automorphisms(p).front(), true);
  return false;
}

std::vector<std::string> labels_of(const ProofTrace& t) {
  std::vector<std::string> out;
  for (const auto& s : t.steps)
    if (!is_structural(s)) out.push_back(s.label);
  return out;
}

bool has_label(const ProofTrace& t, const std::string& l) {
  auto ls = labels_of(t);
  return std::find(ls.begin(), ls.end(), l) != ls.end();
}

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

const std::vector<TableRow> kTheorem1Rows = {
    {{"R1a", "R1b"}, {"para(A,B,C,D)", "para(A,D,B,C)"}, {"parallelogram(A,B,C,D)"}, {}},
    {{"D40"}, {"eqangle(A,B,B,C,C,D,D,A)", "eqangle(A,C,B,C,C,A,D,A)"}, {"para(A,B,C,D)", "para(A,D,B,C)"}, {}},
    {{"D58"}, {"simtri(A,B,C,C,D,A)"}, {"eqangle(A,B,B,C,C,D,D,A)", "eqangle(A,C,B,C,C,A,D,A)"}, {"coll(A,B,C)"}},
    {{"D61"}, {"contri(A,B,C,C,D,A)"}, {"simtri(A,B,C,C,D,A)", "cong(A,C,A,C)"}, {"coll(A,B,C)"}},
    {{"R4a", "R4b"}, {"cong(A,B,C,D)", "cong(D,A,B,C)"}, {"contri(A,B,C,C,D,A)"}, {"coll(A,B,C)"}},
};

const std::vector<TableRow> kTheorem2Rows = {
    {{"R5a", "R5b", "R5e", "R5f"},
     {"rightangle(D,A,A,B)", "rightangle(A,B,B,C)", "para(A,B,D,C)", "para(A,D,B,C)"},
     {"rectangle(A,B,C,D)"},
     {}},
    {{"R1"}, {"parallelogram(A,B,C,D)"}, {"para(A,B,D,C)", "para(A,D,B,C)"}, {}},
    {{"theorem1"}, {"cong(A,B,C,D)", "cong(A,D,B,C)"}, {"parallelogram(A,B,C,D)"}, {"coll(A,B,C)"}},
    {{"R8"},
     {"cong(A,C,B,D)"},
     {"rightangle(D,A,A,B)", "rightangle(A,B,B,C)", "cong(A,D,B,C)", "cong(A,B,A,B)"},
     {"coll(A,B,C)"}},
};

struct CliRun {
  int code;
  std::string out, err;
};

CliRun geodd(std::vector<std::string> args) {
  args.insert(args.begin(), "geodd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::set<Fact> bfs_orbit(const Fact& f, const Symmetry& sym) {
  std::set<Fact> seen{f};
  std::deque<Fact> todo{f};
  while (!todo.empty()) {
    Fact cur = todo.front();
    todo.pop_front();
    for (const auto& g : sym.generators(cur.kind)) {
      Fact next = geodd::apply(g, cur);
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion c("Theorem 1 end to end");
  auto t0 = std::chrono::steady_clock::now();
  auto lp = load("theorem1.p");
  auto rules = testsupport::pick(lp.rules, {"R1a", "R1b", "D40", "D58", "D61", "R4a", "R4b", "R4c"});
  auto res = prove(lp.problem, rules);
  double secs = seconds_since(t0);
  c.check(rules.size() == 8, "rule set R1a,R1b,D40,D58,D61,R4a-c plus eqtrans");
  if (!c.check(res.proved, "Proved")) return c.finish(1);
  const auto& t = *res.trace;
  c.note("steps: " + joined(labels_of(t)));
  match_rows_up_to_automorphism(c, lp.problem, t, res.fixpoint.rules, kTheorem1Rows);
  c.check(t.ndgs == std::vector{canon(F(lp.problem.points, "coll(A,B,C)"))}, "ndg set is exactly {~coll(A,B,C)}");
  c.check(secs < kMaxSeconds, "runtime " + fmt_seconds(secs) + " < 1 s");
  return c.finish(1);
}

bool criterion2() {
  Criterion c("Theorem 2 with Theorem 1 as a lemma");
  auto t0 = std::chrono::steady_clock::now();
  auto th1 = load("theorem1.p");
  auto r1 = prove(th1.problem, th1.rules);
  if (!c.check(r1.proved, "Theorem 1 proved")) return c.finish(2);
  auto lemma = register_lemma("theorem1", th1.problem, *r1.trace, th1.rules);
  auto lp = load("theorem2.p");
  auto rules = lp.rules;
  rules.push_back(lemma);
  auto res = prove(lp.problem, rules);
  double secs = seconds_since(t0);
  if (!c.check(res.proved, "Proved")) return c.finish(2);
  const auto& t = *res.trace;
  c.note("steps: " + joined(labels_of(t)));
  bool lemma_step = false;
  for (const auto& s : t.steps) lemma_step = lemma_step || (s.label == "theorem1" && s.origin == Origin::Lemma);
  c.check(lemma_step, "trace applies the lemma theorem1");
  match_rows_up_to_automorphism(c, lp.problem, t, res.fixpoint.rules, kTheorem2Rows);

  // The trivial cong(A,B,A,B), relabelled like the rows, injected for R8.
  bool trivial = false;
  for (const auto& pi : automorphisms(lp.problem)) {
    Fact want = mapped(F(lp.problem.points, "cong(A,B,A,B)"), pi);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      if (s.origin != Origin::TrivialInjected || s.created != std::vector{want}) continue;
      for (std::size_t j = i + 1; j < t.steps.size(); ++j)
        if (t.steps[j].label == "R8" &&
            std::find(t.steps[j].used.begin(), t.steps[j].used.end(), want) != t.steps[j].used.end()) {
          trivial = true;
          c.note("trivial fact " + t.show(want) + " stands for cong(A,B,A,B)");
        }
    }
    if (trivial) break;
  }
  c.check(trivial, "trivial cong(A,B,A,B) (up to relabelling) is trivial-injected and used by R8");
  c.check(verify_trace(t, res.fixpoint.rules).ok, "trace verifies");
  c.check(secs < kMaxSeconds, "runtime " + fmt_seconds(secs) + " < 1 s");
  return c.finish(2);
}

bool criterion3() {
  Criterion c("Theorem 2 inline, along the informal proof");
  auto lp = load("theorem2.p");
  auto res = prove(lp.problem, lp.rules);
  if (!c.check(res.proved, "Proved with the full catalog and no lemma")) return c.finish(3);
  const auto& t = *res.trace;
  c.note("steps: " + joined(labels_of(t)));
  Fact ndg = canon(F(lp.problem.points, "coll(A,B,C)"));
  c.check(std::find(t.ndgs.begin(), t.ndgs.end(), ndg) != t.ndgs.end(), "ndg set contains ~coll(A,B,C)");

  bool r5 = false;
  for (const char* l : {"R5a", "R5b", "R5c", "R5d"}) r5 = r5 || has_label(t, l);
  c.check(r5, "trace uses R5a-d");
  for (const char* l : {"D40", "D58", "D61", "R8"}) c.check(has_label(t, l), std::string("trace uses ") + l);
  c.check(has_label(t, "R4") || has_label(t, "R4a") || has_label(t, "R4b"), "trace uses R4");
  for (const char* l : {"R6", "D9", "R1"}) c.check(has_label(t, l), std::string("trace uses ") + l);

  // Where the informal route stands in the fixpoint.
  auto firings = [&](const std::string& label) {
    for (std::size_t r = 0; r < res.fixpoint.rules.size(); ++r)
      if (res.fixpoint.rules[r].label() == label) return res.fixpoint.stats.firings_per_rule[r];
    return std::size_t{0};
  };
  c.note("in the fixpoint: R6 fires " + std::to_string(firings("R6")) + "x, D9 " + std::to_string(firings("D9")) +
         "x, R1 " + std::to_string(firings("R1")) + "x; parallelogram(A,B,C,D) " +
         (query(res.fixpoint, F(lp.problem.points, "parallelogram(A,B,C,D)")) ? "derived" : "absent"));
  c.note("R5e yields para(A,B,C,D) and para(A,D,B,C) from the rectangle before D9 can, and D40 needs");
  c.note("only those, so the extracted derivation never passes through R6, D9 or R1");
  return c.finish(3);
}

bool criterion4() {
  Criterion c("soundness audit against sampled models");
  for (const char* name : {"theorem1.p", "theorem2.p"}) {
    auto lp = load(name);
    auto fp = saturate(lp.problem.points, lp.problem.hypotheses, lp.rules);
    auto ms = oracle::sample_models(oracle::recipe_for(lp.problem, 1, kDelta), lp.problem.points, kModels);
    c.check(ms.size() == kModels && oracle::check_facts(ms, lp.problem.hypotheses).empty(),
            std::string(name) + ": 100 models (seeds 1..100, delta 1e-3) satisfy the hypotheses");
    auto v = oracle::check_fixpoint(ms, fp);
    c.check(v.empty(), std::string(name) + ": " + std::to_string(fp.db.size()) + " facts, " +
                           std::to_string(v.size()) + " violations at relative tolerance 1e-9");
  }
  auto lp = load("theorem1.p");
  auto fp = saturate(lp.problem.points, lp.problem.hypotheses, lp.rules);
  Fact planted = canon(F(lp.problem.points, "cong(A,B,A,C)"));
  fp.db.insert(planted, fp.db.add_firing({}));
  auto ms = oracle::sample_models(oracle::recipe_for(lp.problem, 1, kDelta), lp.problem.points, kModels);
  std::set<Fact> reported;
  for (const auto& v : oracle::check_fixpoint(ms, fp)) reported.insert(v.fact);
  c.check(reported == std::set<Fact>{planted}, "planted cong(A,B,A,C) is the only fact reported");
  return c.finish(4);
}

bool criterion5() {
  Criterion c("parser corpus");
  std::vector<fof::SourceUnit> corpus;
  for (const char* name : {"geometryDeductiveDatabaseMethod.ax", "theorem1.p", "theorem2.p", "not_a_theorem.p"}) {
    auto units = fof::parse_units(slurp(data_path(name)), name).units;
    corpus.insert(corpus.end(), units.begin(), units.end());
  }
  std::size_t round_trips = 0, compiled = 0, axioms = 0;
  const Rule* d40 = nullptr;
  std::vector<Rule> rules;
  for (const auto& u : corpus) {
    auto again = fof::parse_units(fof::print_unit(u)).units;
    round_trips += again.size() == 1 && again[0] == u;
    if (u.role != fof::Role::Axiom) continue;
    ++axioms;
    try {
      rules.push_back(compile_rule(u));
      ++compiled;
    } catch (const Error&) {
    }
  }
  c.check(corpus.size() >= 20, std::to_string(corpus.size()) + " units parse");
  c.check(round_trips == corpus.size(), std::to_string(round_trips) + " units satisfy parse(print(parse)) = parse");
  c.check(compiled == axioms, std::to_string(compiled) + " of " + std::to_string(axioms) + " rules compile");
  for (const auto& r : rules)
    if (r.label() == "D40") d40 = &r;
  std::vector<std::string> enum_names;
  if (d40)
    for (auto v : d40->enum_vars) enum_names.push_back(d40->vars[v]);
  c.check(enum_names == std::vector<std::string>{"P", "Q"}, "D40 enumeration variables {P,Q}");
  bool d58 = false;
  for (const auto& r : rules) d58 = d58 || (r.label() == "D58" && r.ndg_premises.size() == 1);
  c.check(d58, "D58 has one ndg premise");
  return c.finish(5);
}

bool criterion6() {
  Criterion c("saturation properties");
  for (const char* name : {"theorem1.p", "theorem2.p", "not_a_theorem.p"}) {
    auto lp = load(name);
    auto fp = saturate(lp.problem.points, lp.problem.hypotheses, lp.rules);
    double bound = 0;
    for (auto p : kAllPreds)
      bound += std::pow(static_cast<double>(lp.problem.points.size()), static_cast<double>(arity(p)));
    c.check(fp.exhausted && !fp.tripped, std::string(name) + ": exhausted below the default limits");
    c.check(fp.db.size() <= bound, std::string(name) + ": " + std::to_string(fp.db.size()) + " facts <= " +
                                       std::to_string(static_cast<long long>(bound)));
    auto naive = testsupport::naive_fixpoint(lp, lp.rules);
    c.check(naive == testsupport::fact_set(fp), std::string(name) + ": semi-naive fixpoint equals the naive closure");
  }
  for (const char* name : {"theorem1.p", "theorem2.p"}) {
    auto a = geodd({"prove", data_path(name).string(), "--format", "structured"});
    auto b = geodd({"prove", data_path(name).string(), "--format", "structured"});
    c.check(a.code == 0 && !a.out.empty() && a.out == b.out, std::string(name) + ": structured traces byte-identical");
  }
  return c.finish(6);
}

bool criterion7() {
  Criterion c("canonical forms");
  std::mt19937_64 rng(7);
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto random_fact = [&](std::size_t universe) {
    for (;;) {
      Pred p = kAllPreds[pick(kPredCount)];
      std::vector<PointId> args(arity(p));
      for (auto& a : args) a = static_cast<PointId>(pick(universe));
      Fact f(p, args);
      if (is_valid(f)) return f;
    }
  };
  std::size_t good = 0;
  for (std::size_t i = 0; i < kRandomFacts; ++i) {
    const Symmetry& sym = Symmetry::get(i % 5 == 0);
    Fact f = random_fact(6);
    Fact k = canon(f, sym);
    auto members = bfs_orbit(f, sym);
    bool ok = k == *members.begin() && canon(k, sym) == k;
    for (const auto& v : members) ok = ok && canon(v, sym) == k;
    good += ok;
  }
  c.check(good == kRandomFacts, std::to_string(good) + " of 10000 random facts: idempotent and constant on orbits");

  PointTable pts;
  for (const char* n : {"A", "B", "C", "D"}) pts.intern(n);
  auto t1 = load("theorem1.p");
  auto fp = saturate(t1.problem.points, t1.problem.hypotheses, t1.rules);
  auto true_models = oracle::sample_models(oracle::recipe_for(t1.problem, 500), t1.problem.points, 20);
  oracle::ConstructionRecipe free_points{oracle::RecipeKind::FreePoints, {}, 900, kDelta};
  auto free_models = oracle::sample_models(free_points, pts, 20);
  std::size_t sound = 0;
  for (std::size_t i = 0; i < kOraclePairs; ++i) {
    const Symmetry& sym = Symmetry::get(i % 4 == 3);
    bool from_fixpoint = i % 2 == 0;
    Fact f = from_fixpoint ? fp.db.facts()[pick(fp.db.facts().size())] : random_fact(4);
    const auto& m = from_fixpoint ? true_models[pick(true_models.size())] : free_models[pick(free_models.size())];
    bool verdict = oracle::eval_fact(m, f);
    bool ok = !from_fixpoint || verdict;
    for (const auto& v : orbit(f, sym)) ok = ok && oracle::eval_fact(m, v) == verdict;
    sound += ok;
  }
  c.check(sound == kOraclePairs, std::to_string(sound) + " of 1000 (fact, model) pairs agree across the orbit");
  return c.finish(7);
}

bool criterion8() {
  Criterion c("trace checker");
  std::size_t produced = 0, accepted = 0;
  for (const char* name : {"theorem1.p", "theorem2.p"})
    for (bool all_pairs : {false, true})
      for (bool exchange : {false, true}) {
        auto lp = load(name);
        EngineConfig config;
        config.all_pairs_enumeration = all_pairs;
        config.eqangle_exchange = exchange;
        auto res = prove(lp.problem, lp.rules, {}, config);
        if (!res.proved) continue;
        ++produced;
        accepted += verify_trace(*res.trace, res.fixpoint.rules, res.fixpoint.symmetry()).ok;
      }
  c.check(produced == 8 && accepted == produced,
          std::to_string(accepted) + " of " + std::to_string(produced) + " produced traces accepted");

  auto lp = load("theorem1.p");
  auto res = prove(lp.problem, lp.rules);
  const ProofTrace& good = *res.trace;
  auto step = [&](const std::string& label) {
    for (std::size_t i = 0; i < good.steps.size(); ++i)
      if (good.steps[i].label == label) return i;
    return std::size_t{0};
  };
  auto fact = [&](const char* text) { return canon(F(lp.problem.points, text)); };
  std::vector<std::pair<std::string, std::function<void(ProofTrace&)>>> mutants = {
      {"wrong rule label", [&](ProofTrace& t) { t.steps[step("D58")].rule = "ruleD61"; }},
      {"missing premise", [&](ProofTrace& t) { t.steps[step("D58")].used.pop_back(); }},
      {"reordered dependency", [&](ProofTrace& t) { std::swap(t.steps[step("D40")], t.steps[step("D58")]); }},
      {"forged goal", [&](ProofTrace& t) { t.goals.push_back(fact("cong(A,B,A,C)")); }},
      {"bad ndg", [&](ProofTrace& t) { t.steps[step("D58")].ndgs = {fact("coll(A,B,D)")}; }},
      {"forged conclusion", [&](ProofTrace& t) { t.steps[step("R4a")].created = {fact("cong(A,B,B,C)")}; }},
  };
  for (auto& [what, mutate] : mutants) {
    ProofTrace m = good;
    mutate(m);
    c.check(!verify_trace(m, res.fixpoint.rules).ok, "rejects: " + what);
  }
  return c.finish(8);
}

bool criterion9() {
  Criterion c("incompleteness path");
  auto r = geodd({"prove", data_path("not_a_theorem.p").string()});
  c.check(r.code == 1, "prove exits with status " + std::to_string(r.code) + " (NotProved is 1)");
  c.check(r.err.find("NotProved") != std::string::npos && r.err.find("decision procedure") != std::string::npos,
          "advice names a decision procedure");
  auto lp = load("not_a_theorem.p");
  auto m = oracle::sample_model(oracle::recipe_for(lp.problem, 1, kDelta), lp.problem.points);
  bool hyps = oracle::check_facts(std::vector{m}, lp.problem.hypotheses).empty();
  bool goal_false = false;
  for (const auto& g : lp.problem.goals) goal_false = goal_false || !oracle::eval_fact(m, g);
  c.check(hyps && goal_false, "a sampled model satisfies the hypotheses and refutes the conjecture");
  return c.finish(9);
}

}  // namespace

int main() {
  int failed = 0;
  for (auto criterion : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
                         criterion8, criterion9}) {
    try {
      failed += !criterion();
    } catch (const std::exception& e) {
      std::cout << "FAIL: exception " << e.what() << "\n";
      ++failed;
    }
  }
  std::cout << (9 - failed) << " of 9 criteria pass\n";
  return failed;
}
