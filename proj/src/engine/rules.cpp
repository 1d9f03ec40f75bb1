#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "geodd/engine.hpp"
#include "geodd/error.hpp"

namespace geodd {

std::string_view source_name(RuleSource s) {
  switch (s) {
    case RuleSource::Builtin: return "builtin";
    case RuleSource::File: return "file";
    case RuleSource::Lemma: return "lemma";
    case RuleSource::Structural: return "structural";
  }
  return "?";
}

std::string rule_label(std::string_view name) {
  if (name.size() > 4 && name.substr(0, 4) == "rule" &&
      std::isupper(static_cast<unsigned char>(name[4])))
    return std::string(name.substr(4));
  return std::string(name);
}

std::string Rule::label() const { return rule_label(name); }

fof::SourceUnit Rule::to_unit() const {
  fof::SourceUnit u;
  u.name = name;
  u.role = fof::Role::Axiom;
  u.formula.variables = vars;
  auto convert = [this](const std::vector<RuleAtom>& atoms) {
    std::vector<fof::Atom> out;
    for (const auto& a : atoms) {
      fof::Atom fa{a.pred, {}};
      for (auto v : a.args()) fa.args.push_back({fof::Term::Kind::Variable, vars[v]});
      out.push_back(std::move(fa));
    }
    return out;
  };
  u.formula.premises = convert(premises);
  u.formula.ndg_premises = convert(ndg_premises);
  u.formula.conclusions = convert(conclusions);
  return u;
}

Rule compile_rule(const fof::SourceUnit& unit, RuleSource source, bool allow_enumeration) {
  const auto& f = unit.formula;
  auto fail = [&unit](const std::string& msg) -> Rule {
    throw Error(ErrorKind::Semantic, "rule '" + unit.name + "': " + msg, unit.origin);
  };
  if (unit.role != fof::Role::Axiom) return fail("only axioms compile to rules");
  if (f.conclusions.empty()) return fail("empty conclusions");
  if (f.variables.size() > 255) return fail("too many variables");

  Rule r;
  r.name = unit.name;
  r.vars = f.variables;
  r.source = source;
  std::map<std::string, std::uint8_t> index;
  for (std::size_t i = 0; i < f.variables.size(); ++i)
    index[f.variables[i]] = static_cast<std::uint8_t>(i);

  auto convert = [&](const std::vector<fof::Atom>& atoms) {
    std::vector<RuleAtom> out;
    for (const auto& a : atoms) {
      RuleAtom ra;
      ra.pred = a.predicate;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        const auto& t = a.args[i];
        if (!t.is_var()) fail("point constant '" + t.name + "' in a rule");
        ra.vars[i] = index.at(t.name);
      }
      out.push_back(ra);
    }
    return out;
  };
  r.premises = convert(f.premises);
  r.ndg_premises = convert(f.ndg_premises);
  r.conclusions = convert(f.conclusions);

  std::set<std::uint8_t> bound;
  for (const auto& a : r.premises) bound.insert(a.args().begin(), a.args().end());
  std::set<std::uint8_t> needed;
  for (const auto* list : {&r.conclusions, &r.ndg_premises})
    for (const auto& a : *list) needed.insert(a.args().begin(), a.args().end());
  for (auto v : needed)
    if (!bound.count(v)) r.enum_vars.push_back(v);
  if (r.enum_vars.empty()) return r;
  if (!allow_enumeration)
    return fail("variable '" + r.vars[r.enum_vars.front()] + "' is not bound by any premise");

  std::map<std::uint8_t, std::uint8_t> partner;
  std::set<std::uint8_t> enums(r.enum_vars.begin(), r.enum_vars.end());
  for (const auto* list : {&r.conclusions, &r.ndg_premises}) {
    for (const auto& a : *list) {
      if (!has_line_slots(a.pred)) continue;
      for (std::size_t i = 0; i < arity(a.pred); i += 2) {
        std::uint8_t x = a.vars[i], y = a.vars[i + 1];
        bool ex = enums.count(x), ey = enums.count(y);
        if (!ex && !ey) continue;
        if (ex != ey || x == y)
          fail("unbound variable shares a line slot with a bound one");
        for (auto [u, w] : {std::pair{x, y}, std::pair{y, x}}) {
          auto it = partner.find(u);
          if (it != partner.end() && it->second != w)
            fail("unbound variable '" + r.vars[u] + "' occupies different lines");
          partner[u] = w;
        }
      }
    }
  }
  for (auto v : r.enum_vars) {
    auto it = partner.find(v);
    if (it == partner.end())
      fail("unbound variable '" + r.vars[v] + "' is not in a line slot");
    if (v < it->second) r.enum_lines.emplace_back(v, it->second);
  }
  return r;
}

const Rule& eqtrans_rule() {
  static const Rule rule = [] {
    auto parsed = fof::parse_units(
        "fof(eqtrans,axiom,(![A,B,C,D,E,F,G,H,I,J,K,L] :"
        " (eqangle(A,B,C,D,E,F,G,H) & eqangle(E,F,G,H,I,J,K,L)"
        " => eqangle(A,B,C,D,I,J,K,L)) )).",
        "<builtin>");
    return compile_rule(parsed.units.front(), RuleSource::Structural, false);
  }();
  return rule;
}

Fact instantiate(const RuleAtom& atom, std::span<const PointId> subst) {
  Fact f;
  f.kind = atom.pred;
  for (std::size_t i = 0; i < arity(atom.pred); ++i) f.pts[i] = subst[atom.vars[i]];
  return f;
}

LoadedProblem build_problem(const std::vector<fof::SourceUnit>& units) {
  LoadedProblem out;
  const fof::SourceUnit* conjecture = nullptr;
  std::vector<const fof::SourceUnit*> ground;
  for (const auto& u : units) {
    if (u.role == fof::Role::Conjecture) {
      if (conjecture)
        throw Error(ErrorKind::Semantic,
                    "more than one conjecture ('" + conjecture->name + "', '" + u.name + "')",
                    u.origin);
      conjecture = &u;
    } else if (u.formula.premises.empty() && u.formula.ndg_premises.empty() &&
               u.formula.variables.empty()) {
      ground.push_back(&u);
    } else {
      out.rules.push_back(compile_rule(u));
    }
  }
  if (!conjecture) throw Error(ErrorKind::Semantic, "problem has no conjecture");
  if (!conjecture->formula.ndg_premises.empty())
    throw Error(ErrorKind::Semantic, "conjecture may not carry negated premises",
                conjecture->origin);

  Problem& p = out.problem;
  p.name = conjecture->name;
  auto to_fact = [&p](const fof::Atom& a, const SourcePos& pos) {
    Fact f;
    f.kind = a.predicate;
    for (std::size_t i = 0; i < a.args.size(); ++i) f.pts[i] = p.points.intern(a.args[i].name);
    auto c = try_canon(f);
    if (!c) throw Error(ErrorKind::Degenerate, "degenerate atom " + fof::print_atom(a), pos);
    return *c;
  };
  auto add_unique = [](std::vector<Fact>& list, const Fact& f) {
    if (std::find(list.begin(), list.end(), f) == list.end()) list.push_back(f);
  };
  for (const auto* u : ground)
    for (const auto& a : u->formula.conclusions) add_unique(p.hypotheses, to_fact(a, u->origin));
  for (const auto& a : conjecture->formula.premises)
    add_unique(p.hypotheses, to_fact(a, conjecture->origin));
  for (const auto& a : conjecture->formula.conclusions)
    add_unique(p.goals, to_fact(a, conjecture->origin));
  return out;
}

}  // namespace geodd
