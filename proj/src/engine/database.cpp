#include <set>

#include "geodd/engine.hpp"

namespace geodd {

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::Hypothesis: return "hypothesis";
    case Origin::Rule: return "rule";
    case Origin::TrivialInjected: return "trivial-injected";
    case Origin::Lemma: return "lemma";
  }
  return "?";
}

std::optional<FactHandle> FactDatabase::find(const Fact& canonical) const {
  auto it = lookup_.find(canonical);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::span<const FactHandle> FactDatabase::of_kind(Pred p) const {
  return by_kind_[static_cast<std::size_t>(p)];
}

std::span<const FactHandle> FactDatabase::of_kind_point(Pred p, PointId point) const {
  auto it = by_kind_point_.find(static_cast<std::uint32_t>(p) << 16 | point);
  if (it == by_kind_point_.end()) return {};
  return it->second;
}

std::uint32_t FactDatabase::add_firing(Firing f) {
  firings_.push_back(std::move(f));
  return static_cast<std::uint32_t>(firings_.size() - 1);
}

FactHandle FactDatabase::insert(const Fact& canonical, std::uint32_t firing) {
  auto h = static_cast<FactHandle>(facts_.size());
  facts_.push_back(canonical);
  firing_of_.push_back(firing);
  firings_.at(firing).created.push_back(h);
  lookup_.emplace(canonical, h);
  by_kind_[static_cast<std::size_t>(canonical.kind)].push_back(h);
  std::set<PointId> seen;
  for (auto p : canonical.args())
    if (seen.insert(p).second)
      by_kind_point_[static_cast<std::uint32_t>(canonical.kind) << 16 | p].push_back(h);
  return h;
}

std::vector<Line> known_lines(const FactDatabase& db) {
  std::vector<Line> out;
  std::set<Line> seen;
  for (const auto& f : db.facts())
    for (const auto& l : lines_of(f))
      if (seen.insert(l).second) out.push_back(l);
  return out;
}

Provenance Fixpoint::provenance(FactHandle h) const {
  const Firing& f = db.firing(db.firing_of(h));
  Provenance p{f.origin, {}, {}, f.premises, f.ndgs};
  if (f.rule >= 0) {
    const Rule& r = rules.at(static_cast<std::size_t>(f.rule));
    p.rule = r.name;
    for (std::size_t i = 0; i < r.vars.size() && i < f.subst.size(); ++i)
      p.substitution.emplace_back(r.vars[i], f.subst[i]);
  }
  return p;
}

std::optional<FactHandle> query(const Fixpoint& fp, const Fact& goal) {
  auto c = try_canon(goal, fp.symmetry());
  if (!c) return std::nullopt;
  return fp.db.find(*c);
}

std::optional<FactHandle> inject_trivial(FactDatabase& db, const Fact& ground,
                                         const Symmetry& sym) {
  if (!is_valid(ground) || !is_reflexive_trivial(ground, sym)) return std::nullopt;
  Fact c = canon(ground, sym);
  if (auto h = db.find(c)) return h;
  Firing f;
  f.origin = Origin::TrivialInjected;
  return db.insert(c, db.add_firing(std::move(f)));
}

}  // namespace geodd
