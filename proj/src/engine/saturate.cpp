#include <algorithm>
#include <deque>
#include <set>

#include "geodd/engine.hpp"
#include "matcher.hpp"

namespace geodd {

std::string_view limit_name(LimitKind k) {
  switch (k) {
    case LimitKind::MaxFacts: return "max-facts";
    case LimitKind::MaxFirings: return "max-firings";
    case LimitKind::TimeBudget: return "time-budget";
  }
  return "?";
}

namespace {

struct WorkItem {
  bool is_line;
  FactHandle fact;
  Line line;
};

class Saturator {
 public:
  Saturator(Fixpoint& fp, const Limits& limits, std::vector<PointId> universe)
      : fp_(fp),
        limits_(limits),
        sym_(fp.symmetry()),
        universe_(std::move(universe)),
        matcher_(fp.db, sym_, universe_),
        start_(std::chrono::steady_clock::now()) {
    for (const auto& r : fp_.rules) plans_.push_back(detail::make_plan(r));
    fp_.stats.firings_per_rule.assign(fp_.rules.size(), 0);
    if (fp_.config.all_pairs_enumeration)
      for (std::size_t i = 0; i < universe_.size(); ++i)
        for (std::size_t j = i + 1; j < universe_.size(); ++j)
          add_line(Line::of(universe_[i], universe_[j]), false);
  }

  void run(std::span<const Fact> hypotheses) {
    for (const auto& h : hypotheses) {
      Fact c = canon(h, sym_);
      if (fp_.db.find(c)) continue;
      Firing f;
      f.origin = Origin::Hypothesis;
      fp_.hypotheses.push_back(insert(c, fp_.db.add_firing(std::move(f))));
    }
    for (std::size_t r = 0; r < fp_.rules.size() && !tripped(); ++r) {
      std::vector<Instantiation> found;
      matcher_.match_virtual(fp_.rules[r], plans_[r], lines_, found);
      fire_all(r, found);
    }
    while (!work_.empty() && !tripped()) {
      WorkItem item = work_.front();
      work_.pop_front();
      ++fp_.stats.iterations;
      for (std::size_t r = 0; r < fp_.rules.size() && !tripped(); ++r) {
        const Rule& rule = fp_.rules[r];
        std::vector<Instantiation> found;
        if (item.is_line) {
          for (std::size_t g = 0; g < rule.enum_lines.size(); ++g)
            matcher_.match_line(rule, plans_[r], g, item.line, lines_, found);
        } else {
          matcher_.match_fact(rule, plans_[r], item.fact, lines_, found);
        }
        fire_all(r, found);
      }
    }
    fp_.exhausted = work_.empty() && !fp_.tripped;
  }

 private:
  bool tripped() const { return fp_.tripped.has_value(); }

  void trip(LimitKind k) {
    if (!fp_.tripped) fp_.tripped = k;
  }

  void add_line(Line l, bool enqueue) {
    if (!line_set_.insert(l).second) return;
    lines_.push_back(l);
    if (enqueue) work_.push_back({true, kNoFact, l});
  }

  FactHandle insert(const Fact& c, std::uint32_t firing) {
    FactHandle h = fp_.db.insert(c, firing);
    ++fp_.stats.facts_per_pred[static_cast<std::size_t>(c.kind)];
    work_.push_back({false, h, {}});
    for (const auto& l : lines_of(c)) add_line(l, true);
    if (fp_.db.size() >= limits_.max_facts) trip(LimitKind::MaxFacts);
    return h;
  }

  // Instances of one batch fire ordered by their canonical provisos, then by
  // substitution, so the result does not depend on how the index enumerated
  // symmetry variants and the weakest proviso wins among equivalent firings.
  void fire_all(std::size_t r, std::vector<Instantiation>& found) {
    const Rule& rule = fp_.rules[r];
    std::vector<std::pair<std::vector<Fact>, std::size_t>> order;
    for (std::size_t i = 0; i < found.size(); ++i) {
      std::vector<Fact> ndgs;
      for (const auto& a : rule.ndg_premises)
        if (auto c = try_canon(instantiate(a, found[i].subst), sym_)) ndgs.push_back(*c);
      std::sort(ndgs.begin(), ndgs.end());
      order.emplace_back(std::move(ndgs), i);
    }
    std::sort(order.begin(), order.end(), [&found](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return found[a.second].subst < found[b.second].subst;
    });
    std::set<std::vector<PointId>> seen;
    for (const auto& [ndgs, i] : order) {
      if (tripped()) return;
      if (seen.insert(found[i].subst).second) fire(r, found[i]);
    }
  }

  void fire(std::size_t r, Instantiation& inst) {
    const Rule& rule = fp_.rules[r];
    Firing firing;
    firing.origin = rule.source == RuleSource::Lemma ? Origin::Lemma : Origin::Rule;
    firing.rule = static_cast<int>(r);
    for (const auto& a : rule.ndg_premises) {
      auto c = try_canon(instantiate(a, inst.subst), sym_);
      if (!c) return;  // the proviso can never hold
      if (std::find(firing.ndgs.begin(), firing.ndgs.end(), *c) == firing.ndgs.end())
        firing.ndgs.push_back(*c);
    }
    std::vector<Fact> fresh;
    for (const auto& a : rule.conclusions) {
      auto c = try_canon(instantiate(a, inst.subst), sym_);
      if (!c) {
        ++fp_.stats.dropped_degenerate;
        continue;
      }
      if (!fp_.db.find(*c) && std::find(fresh.begin(), fresh.end(), *c) == fresh.end())
        fresh.push_back(*c);
    }
    bool injects = std::any_of(inst.trivial.begin(), inst.trivial.end(),
                               [this](const Fact& t) { return !fp_.db.find(t); });
    if (fresh.empty() && !injects) return;

    if (fp_.stats.firings >= limits_.max_firings) {
      trip(LimitKind::MaxFirings);
      return;
    }
    if ((fp_.stats.firings & 255) == 0 &&
        std::chrono::steady_clock::now() - start_ > limits_.time_budget) {
      trip(LimitKind::TimeBudget);
      return;
    }
    ++fp_.stats.firings;
    ++fp_.stats.firings_per_rule[r];

    std::size_t next_trivial = 0;
    for (auto& h : inst.premises) {
      if (h != kNoFact) continue;
      const Fact& t = inst.trivial[next_trivial++];
      if (auto existing = fp_.db.find(t)) {
        h = *existing;
      } else {
        Firing inj;
        inj.origin = Origin::TrivialInjected;
        h = insert(t, fp_.db.add_firing(std::move(inj)));
        ++fp_.stats.injected_trivial;
      }
    }
    firing.subst = std::move(inst.subst);
    firing.premises = std::move(inst.premises);
    std::uint32_t id = fp_.db.add_firing(std::move(firing));
    for (const auto& c : fresh) {
      if (fp_.db.find(c)) continue;  // injected above as a trivial premise
      insert(c, id);
    }
  }

  Fixpoint& fp_;
  Limits limits_;
  const Symmetry& sym_;
  std::vector<PointId> universe_;
  detail::Matcher matcher_;
  std::vector<detail::RulePlan> plans_;
  std::vector<Line> lines_;
  std::set<Line> line_set_;
  std::deque<WorkItem> work_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Fixpoint saturate(const PointTable& points, std::span<const Fact> hypotheses,
                  std::vector<Rule> rules, const Limits& limits, const EngineConfig& config) {
  Fixpoint fp;
  fp.points = points;
  fp.config = config;
  fp.rules = std::move(rules);
  if (config.structural_closure &&
      std::none_of(fp.rules.begin(), fp.rules.end(),
                   [](const Rule& r) { return r.name == eqtrans_rule().name; }))
    fp.rules.push_back(eqtrans_rule());

  std::set<PointId> universe;
  for (const auto& h : hypotheses)
    for (auto p : h.args()) universe.insert(p);
  Saturator s(fp, limits, {universe.begin(), universe.end()});
  s.run(hypotheses);
  return fp;
}

}  // namespace geodd
