// Independent proof checker: plain backtracking over the cited facts, no
// indexes and no saturation machinery.

#include <map>
#include <set>

#include "geodd/proof.hpp"

namespace geodd {

namespace {

constexpr PointId kFree = 0xffff;

struct StepSearch {
  const Rule& rule;
  const std::vector<std::vector<Fact>>& used_variants;
  const std::vector<std::vector<Fact>>& created_variants;
  const std::set<Fact>& created;
  const std::set<Fact>& ndgs;
  const Symmetry& sym;
  std::vector<PointId> subst;

  bool bind(const RuleAtom& a, const Fact& f, std::vector<std::uint8_t>& trail) {
    if (a.pred != f.kind) return false;
    for (std::size_t i = 0; i < arity(a.pred); ++i) {
      auto v = a.vars[i];
      if (subst[v] == kFree) {
        subst[v] = f.pts[i];
        trail.push_back(v);
      } else if (subst[v] != f.pts[i]) {
        return false;
      }
    }
    return true;
  }

  void unbind(std::vector<std::uint8_t>& trail) {
    for (auto v : trail) subst[v] = kFree;
    trail.clear();
  }

  bool premises(std::size_t k) {
    if (k == rule.premises.size()) return conclusions(0);
    std::vector<std::uint8_t> trail;
    for (const auto& variants : used_variants) {
      for (const auto& v : variants) {
        if (bind(rule.premises[k], v, trail) && premises(k + 1)) return true;
        unbind(trail);
      }
    }
    return false;
  }

  // Every created fact must be an instance of some conclusion.
  bool conclusions(std::size_t k) {
    if (k == created_variants.size()) return finish();
    std::vector<std::uint8_t> trail;
    for (const auto& c : rule.conclusions) {
      for (const auto& v : created_variants[k]) {
        if (bind(c, v, trail) && conclusions(k + 1)) return true;
        unbind(trail);
      }
    }
    return false;
  }

  bool finish() {
    for (auto v : subst)
      if (v == kFree) return false;
    std::set<Fact> instances;
    for (const auto& c : rule.conclusions)
      if (auto f = try_canon(instantiate(c, subst), sym)) instances.insert(*f);
    for (const auto& f : created)
      if (!instances.count(f)) return false;
    std::set<Fact> expected;
    for (const auto& n : rule.ndg_premises) {
      auto f = try_canon(instantiate(n, subst), sym);
      if (!f) return false;
      expected.insert(*f);
    }
    return expected == ndgs;
  }
};

TraceCheck fail(std::size_t step, const std::string& why) {
  return {false, step, "step " + std::to_string(step + 1) + ": " + why};
}

}  // namespace

TraceCheck verify_trace(const ProofTrace& trace, std::span<const Rule> rules,
                        const Symmetry& sym) {
  std::map<std::string, const Rule*> by_name;
  for (const auto& r : rules) by_name.emplace(r.name, &r);
  by_name.emplace(eqtrans_rule().name, &eqtrans_rule());

  auto canonical = [&sym](const Fact& f) { return try_canon(f, sym); };

  std::set<Fact> known;
  for (const auto& h : trace.hypotheses) {
    auto c = canonical(h);
    if (!c) return {false, std::nullopt, "degenerate hypothesis " + trace.show(h)};
    known.insert(*c);
  }

  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const ProofStep& step = trace.steps[k];
    if (step.created.empty()) return fail(k, "derives nothing");
    std::vector<std::vector<Fact>> used_variants;
    for (const auto& u : step.used) {
      auto c = canonical(u);
      if (!c || !known.count(*c)) return fail(k, "cites " + trace.show(u) + " before it is known");
      used_variants.push_back(orbit(*c, sym));
    }
    std::set<Fact> created;
    std::vector<std::vector<Fact>> created_variants;
    for (const auto& f : step.created) {
      auto c = canonical(f);
      if (!c) return fail(k, "creates degenerate " + trace.show(f));
      created.insert(*c);
      created_variants.push_back(orbit(*c, sym));
    }
    std::set<Fact> ndgs;
    for (const auto& n : step.ndgs) {
      auto c = canonical(n);
      if (!c) return fail(k, "degenerate ndg " + trace.show(n));
      ndgs.insert(*c);
    }

    if (step.rule == kTrivialRule) {
      if (!step.used.empty() || !ndgs.empty())
        return fail(k, "a trivial step cites premises or provisos");
      for (const auto& f : created)
        if (!is_reflexive_trivial(f, sym)) return fail(k, trace.show(f) + " is not a trivial fact");
    } else {
      auto it = by_name.find(step.rule);
      if (it == by_name.end()) return fail(k, "unknown rule '" + step.rule + "'");
      StepSearch search{*it->second, used_variants, created_variants, created, ndgs, sym,
                        std::vector<PointId>(it->second->vars.size(), kFree)};
      if (!search.premises(0))
        return fail(k, "rule " + step.label + " does not yield the new facts from the cited ones");
    }
    known.insert(created.begin(), created.end());
  }

  for (const auto& g : trace.goals) {
    auto c = canonical(g);
    if (!c || !known.count(*c)) return {false, std::nullopt, "goal " + trace.show(g) + " is not derived"};
  }
  return {};
}

}  // namespace geodd
