#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "geodd/error.hpp"
#include "geodd/proof.hpp"

namespace geodd {

const std::string_view kDecisionProcedureAdvice =
    "The conjecture is not among the facts deduced with the selected rules. The deductive "
    "database method is not complete, so this does not refute it: a decision procedure "
    "(e.g. the area method, Wu's method or Groebner bases) must be used to settle it.";

ProofTrace extract_trace(const Fixpoint& fp, std::span<const Fact> goals) {
  const auto& db = fp.db;
  ProofTrace t;
  t.points = fp.points.names();
  for (auto h : fp.hypotheses) t.hypotheses.push_back(db.fact(h));

  std::vector<FactHandle> stack;
  for (const auto& g : goals) {
    auto h = query(fp, g);
    if (!h) throw Error(ErrorKind::Input, "goal " + to_string(g, fp.points) + " is not derived");
    t.goals.push_back(db.fact(*h));
    stack.push_back(*h);
  }

  std::set<FactHandle> seen;
  std::set<std::uint32_t> firings;
  while (!stack.empty()) {
    FactHandle h = stack.back();
    stack.pop_back();
    if (!seen.insert(h).second) continue;
    std::uint32_t id = db.firing_of(h);
    const Firing& f = db.firing(id);
    if (f.origin == Origin::Hypothesis) continue;
    firings.insert(id);
    for (auto p : f.premises) stack.push_back(p);
  }

  for (auto id : firings) {
    const Firing& f = db.firing(id);
    ProofStep s;
    s.origin = f.origin;
    if (f.origin == Origin::TrivialInjected) {
      s.rule = s.label = std::string(kTrivialRule);
    } else {
      const Rule& r = fp.rules.at(static_cast<std::size_t>(f.rule));
      s.rule = r.name;
      s.label = r.label();
      for (std::size_t i = 0; i < r.vars.size(); ++i)
        if (i < f.subst.size() && f.subst[i] < t.points.size())
          s.substitution.emplace_back(r.vars[i], f.subst[i]);
    }
    for (auto p : f.premises) s.used.push_back(db.fact(p));
    for (auto c : f.created) s.created.push_back(db.fact(c));
    s.ndgs = f.ndgs;
    t.steps.push_back(std::move(s));
  }
  t.ndgs = collect_ndgs(t);
  return t;
}

std::vector<Fact> collect_ndgs(const ProofTrace& trace) {
  std::set<Fact> all;
  for (const auto& s : trace.steps)
    for (const auto& n : s.ndgs)
      if (auto c = try_canon(n)) all.insert(*c);
  return {all.begin(), all.end()};
}

namespace {

std::string variable_for(const std::string& point) {
  std::string v = point;
  v[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
  for (auto& c : v)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return v;
}

}  // namespace

Rule register_lemma(const std::string& name, const Problem& problem, const ProofTrace& trace,
                    std::span<const Rule> existing) {
  for (const auto& r : existing)
    if (r.name == name) throw Error(ErrorKind::Semantic, "rule name '" + name + "' is taken");

  fof::SourceUnit unit;
  unit.name = name;
  unit.role = fof::Role::Axiom;
  std::map<PointId, std::string> var_of;
  std::set<std::string> taken;
  auto term = [&](PointId p) {
    auto it = var_of.find(p);
    if (it == var_of.end()) {
      std::string base = variable_for(trace.points.at(p));
      std::string v = base;
      for (int k = 1; taken.count(v); ++k) v = base + std::to_string(k);
      taken.insert(v);
      unit.formula.variables.push_back(v);
      it = var_of.emplace(p, v).first;
    }
    return fof::Term{fof::Term::Kind::Variable, it->second};
  };
  auto atom = [&](const Fact& f) {
    fof::Atom a{f.kind, {}};
    for (auto p : f.args()) a.args.push_back(term(p));
    return a;
  };
  for (const auto& h : problem.hypotheses) unit.formula.premises.push_back(atom(h));
  for (const auto& n : collect_ndgs(trace)) unit.formula.ndg_premises.push_back(atom(n));
  for (const auto& g : problem.goals) unit.formula.conclusions.push_back(atom(g));
  return compile_rule(unit, RuleSource::Lemma, false);
}

ProofResult prove(const Problem& problem, std::vector<Rule> rules, const Limits& limits,
                  const EngineConfig& config) {
  ProofResult res;
  res.fixpoint = saturate(problem.points, problem.hypotheses, std::move(rules), limits, config);
  res.proved = std::all_of(problem.goals.begin(), problem.goals.end(),
                           [&](const Fact& g) { return query(res.fixpoint, g).has_value(); });
  if (res.proved)
    res.trace = extract_trace(res.fixpoint, problem.goals);
  else
    res.advice = std::string(kDecisionProcedureAdvice);
  return res;
}

}  // namespace geodd
