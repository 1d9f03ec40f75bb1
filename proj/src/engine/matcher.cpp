#include "matcher.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <tuple>

namespace geodd::detail {

namespace {

using Equalities = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

// Position equalities that make a fact an instance of its reflexive schema.
// With the exchange law, [l,m] = [l,m] is also spelled [l,l] = [m,m].
const std::vector<Equalities>& reflexive_schemas(Pred p, bool exchange) {
  static const std::vector<Equalities> cong = {{{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  static const std::vector<Equalities> eqangle = {
      {{0, 4}, {1, 5}, {2, 6}, {3, 7}},
      {{0, 5}, {1, 4}, {2, 6}, {3, 7}},
      {{0, 4}, {1, 5}, {2, 7}, {3, 6}},
      {{0, 5}, {1, 4}, {2, 7}, {3, 6}},
  };
  static const std::vector<Equalities> eqangle_exchange = [] {
    auto out = eqangle;
    for (auto [a, b] : {std::pair{2, 3}, std::pair{3, 2}})
      for (auto [c, d] : {std::pair{6, 7}, std::pair{7, 6}})
        out.push_back({{0, static_cast<std::uint8_t>(a)}, {1, static_cast<std::uint8_t>(b)},
                       {4, static_cast<std::uint8_t>(c)}, {5, static_cast<std::uint8_t>(d)}});
    return out;
  }();
  static const std::vector<Equalities> tri = {{{0, 3}, {1, 4}, {2, 5}}};
  static const std::vector<Equalities> none;
  switch (p) {
    case Pred::Cong: return cong;
    case Pred::EqAngle: return exchange ? eqangle_exchange : eqangle;
    case Pred::SimTri:
    case Pred::ConTri: return tri;
    default: return none;
  }
}

std::uint8_t bound_mask(const RuleAtom& a, const std::vector<bool>& bound) {
  std::uint8_t m = 0;
  for (std::size_t i = 0; i < arity(a.pred); ++i)
    if (bound[a.vars[i]]) m |= static_cast<std::uint8_t>(1u << i);
  return m;
}

std::uint8_t full_mask(Pred p) { return static_cast<std::uint8_t>((1u << arity(p)) - 1); }

std::vector<PlanStep> order_premises(const Rule& r, std::vector<bool> bound,
                                     std::optional<std::size_t> seed) {
  std::vector<PlanStep> plan;
  std::vector<bool> used(r.premises.size(), false);
  if (seed) used[*seed] = true;
  for (;;) {
    int best = -1;
    std::tuple<int, int, int> best_key{};
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      if (used[i]) continue;
      const auto& a = r.premises[i];
      std::uint8_t m = bound_mask(a, bound);
      int count = std::popcount(m);
      std::tuple<int, int, int> key{m == full_mask(a.pred), count, !trivializable(a.pred)};
      if (best < 0 || key > best_key) {
        best = static_cast<int>(i);
        best_key = key;
      }
    }
    if (best < 0) break;
    const auto& a = r.premises[static_cast<std::size_t>(best)];
    plan.push_back({static_cast<std::uint8_t>(best), bound_mask(a, bound)});
    used[static_cast<std::size_t>(best)] = true;
    for (auto v : a.args()) bound[v] = true;
  }
  return plan;
}

}  // namespace

bool trivializable(Pred p) { return !reflexive_schemas(p, false).empty(); }

RulePlan make_plan(const Rule& rule) {
  RulePlan plan;
  for (std::size_t i = 0; i < rule.premises.size(); ++i) {
    std::vector<bool> bound(rule.vars.size(), false);
    for (auto v : rule.premises[i].args()) bound[v] = true;
    plan.seeded.push_back(order_premises(rule, bound, i));
  }
  plan.full = order_premises(rule, std::vector<bool>(rule.vars.size(), false), std::nullopt);
  return plan;
}

// ---------------------------------------------------------------------------

std::size_t VariantIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto p : k) {
    h ^= p;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

VariantIndex::Key VariantIndex::project(const Fact& f, std::uint8_t mask) {
  Key k;
  k.fill(kUnbound);
  for (std::size_t i = 0; i < kMaxArity; ++i)
    if (mask & (1u << i)) k[i] = f.pts[i];
  return k;
}

void VariantIndex::add(Table& t, std::uint8_t mask, FactHandle h) {
  const auto& variants = orbits_[h];
  for (std::size_t v = 0; v < variants.size(); ++v)
    t[project(variants[v], mask)].push_back({h, static_cast<std::uint16_t>(v)});
}

void VariantIndex::catch_up() {
  for (auto h = static_cast<FactHandle>(orbits_.size()); h < db_.size(); ++h) {
    const Fact& f = db_.fact(h);
    orbits_.push_back(geodd::orbit(f, sym_));
    for (auto& [key, table] : tables_)
      if (key.first == f.kind) add(table, key.second, h);
  }
}

const std::vector<VariantIndex::Ref>& VariantIndex::lookup(Pred p, std::uint8_t mask,
                                                           const Fact& probe) {
  catch_up();
  auto [it, fresh] = tables_.try_emplace({p, mask});
  if (fresh)
    for (auto h : db_.of_kind(p)) add(it->second, mask, h);
  auto row = it->second.find(project(probe, mask));
  return row == it->second.end() ? empty_ : row->second;
}

// ---------------------------------------------------------------------------

bool Matcher::unify(State& s, const RuleAtom& atom, const Fact& f,
                    std::vector<std::uint8_t>& trail) {
  for (std::size_t i = 0; i < arity(atom.pred); ++i) {
    auto v = atom.vars[i];
    if (s.subst[v] == kUnbound) {
      s.subst[v] = f.pts[i];
      trail.push_back(v);
    } else if (s.subst[v] != f.pts[i]) {
      return false;
    }
  }
  return true;
}

std::vector<Fact> Matcher::virtual_candidates(const State& s, const RuleAtom& atom) const {
  const std::size_t n = arity(atom.pred);
  std::set<Fact> seen;
  std::vector<Fact> out;
  for (const auto& schema : reflexive_schemas(atom.pred, sym_.exchange())) {
    // union-find over argument positions
    std::array<std::uint8_t, kMaxArity> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&parent](std::uint8_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    auto join = [&](std::uint8_t a, std::uint8_t b) { parent[root(a)] = root(b); };
    for (auto [a, b] : schema) join(a, b);
    for (std::uint8_t i = 0; i < n; ++i)
      for (std::uint8_t j = i + 1; j < n; ++j)
        if (atom.vars[i] == atom.vars[j]) join(i, j);

    std::array<PointId, kMaxArity> value;
    value.fill(kUnbound);
    bool conflict = false;
    for (std::uint8_t i = 0; i < n && !conflict; ++i) {
      PointId b = s.subst[atom.vars[i]];
      if (b == kUnbound) continue;
      auto r = root(i);
      if (value[r] == kUnbound) value[r] = b;
      else if (value[r] != b) conflict = true;
    }
    if (conflict) continue;
    std::vector<std::uint8_t> free;
    for (std::uint8_t i = 0; i < n; ++i)
      if (root(i) == i && value[i] == kUnbound) free.push_back(i);

    std::vector<std::size_t> digit(free.size(), 0);
    if (!free.empty() && universe_.empty()) continue;
    for (;;) {
      for (std::size_t k = 0; k < free.size(); ++k) value[free[k]] = universe_[digit[k]];
      Fact f;
      f.kind = atom.pred;
      for (std::uint8_t i = 0; i < n; ++i) f.pts[i] = value[root(i)];
      if (is_valid(f) && is_reflexive_trivial(f, sym_) && seen.insert(f).second) out.push_back(f);
      std::size_t k = 0;
      while (k < free.size() && ++digit[k] == universe_.size()) digit[k++] = 0;
      if (k == free.size()) break;
    }
  }
  return out;
}

void Matcher::join(State& s, std::size_t k) {
  if (k == s.plan.size()) {
    enumerate(s, 0);
    return;
  }
  const PlanStep& step = s.plan[k];
  const RuleAtom& atom = s.rule->premises[step.premise];
  std::vector<std::uint8_t> trail;
  auto undo = [&] {
    for (auto v : trail) s.subst[v] = kUnbound;
    trail.clear();
  };

  if (step.mask == full_mask(atom.pred)) {
    auto c = try_canon(instantiate(atom, s.subst), sym_);
    if (!c) return;
    if (auto h = s.use_db ? db_.find(*c) : std::nullopt) {
      s.premises[step.premise] = *h;
      join(s, k + 1);
    } else if (is_reflexive_trivial(*c, sym_)) {
      s.premises[step.premise] = kNoFact;
      s.virt[step.premise] = *c;
      join(s, k + 1);
      s.virt[step.premise].reset();
    }
    return;
  }

  if (s.use_db) {
    Fact probe;
    probe.kind = atom.pred;
    for (std::size_t i = 0; i < arity(atom.pred); ++i)
      if (step.mask & (1u << i)) probe.pts[i] = s.subst[atom.vars[i]];
    // rows stay put: the database does not grow while a join runs
    const auto& refs = index_.lookup(atom.pred, step.mask, probe);
    for (const auto& ref : refs) {
      if (unify(s, atom, index_.orbit(ref.fact)[ref.variant], trail)) {
        s.premises[step.premise] = ref.fact;
        join(s, k + 1);
      }
      undo();
    }
  }
  if (trivializable(atom.pred)) {
    for (const auto& cand : virtual_candidates(s, atom)) {
      Fact c = canon(cand, sym_);
      if (s.use_db && db_.find(c)) continue;
      if (unify(s, atom, cand, trail)) {
        s.premises[step.premise] = kNoFact;
        s.virt[step.premise] = c;
        join(s, k + 1);
        s.virt[step.premise].reset();
      }
      undo();
    }
  }
}

void Matcher::enumerate(State& s, std::size_t group) {
  if (group == s.rule->enum_lines.size()) {
    emit(s);
    return;
  }
  auto [x, y] = s.rule->enum_lines[group];
  auto bind = [&](Line l) {
    s.subst[x] = l.a;
    s.subst[y] = l.b;
    enumerate(s, group + 1);
    s.subst[x] = s.subst[y] = kUnbound;
  };
  if (s.fixed_line && s.fixed_line->first == group) {
    bind(s.fixed_line->second);
    return;
  }
  for (const auto& l : s.lines) bind(l);
}

void Matcher::emit(State& s) {
  Instantiation inst;
  inst.subst = s.subst;
  inst.premises = s.premises;
  for (std::size_t i = 0; i < s.virt.size(); ++i)
    if (s.premises[i] == kNoFact) inst.trivial.push_back(*s.virt[i]);
  s.out->push_back(std::move(inst));
}

void Matcher::match_fact(const Rule& r, const RulePlan& plan, FactHandle h,
                         std::span<const Line> lines, std::vector<Instantiation>& out) {
  index_.catch_up();
  const Fact& fact = db_.fact(h);
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    const RuleAtom& atom = r.premises[i];
    if (atom.pred != fact.kind) continue;
    State s{&r, plan.seeded[i], lines, std::nullopt, true,
            std::vector<PointId>(r.vars.size(), kUnbound),
            std::vector<FactHandle>(r.premises.size(), kNoFact),
            std::vector<std::optional<Fact>>(r.premises.size()), &out};
    std::vector<std::uint8_t> trail;
    for (const auto& variant : index_.orbit(h)) {
      if (unify(s, atom, variant, trail)) {
        s.premises[i] = h;
        join(s, 0);
      }
      for (auto v : trail) s.subst[v] = kUnbound;
      trail.clear();
    }
  }
}

void Matcher::match_line(const Rule& r, const RulePlan& plan, std::size_t group, Line line,
                         std::span<const Line> lines, std::vector<Instantiation>& out) {
  State s{&r, plan.full, lines, std::pair{group, line}, true,
          std::vector<PointId>(r.vars.size(), kUnbound),
          std::vector<FactHandle>(r.premises.size(), kNoFact),
          std::vector<std::optional<Fact>>(r.premises.size()), &out};
  join(s, 0);
}

void Matcher::match_virtual(const Rule& r, const RulePlan& plan, std::span<const Line> lines,
                            std::vector<Instantiation>& out) {
  for (const auto& a : r.premises)
    if (!trivializable(a.pred)) return;
  State s{&r, plan.full, lines, std::nullopt, false,
          std::vector<PointId>(r.vars.size(), kUnbound),
          std::vector<FactHandle>(r.premises.size(), kNoFact),
          std::vector<std::optional<Fact>>(r.premises.size()), &out};
  join(s, 0);
}

}  // namespace geodd::detail

namespace geodd {

std::vector<Instantiation> match_new(const Rule& rule, FactHandle new_fact,
                                     const FactDatabase& db, std::span<const Line> lines,
                                     std::span<const PointId> universe, const Symmetry& sym) {
  detail::Matcher m(db, sym, universe);
  auto plan = detail::make_plan(rule);
  std::vector<Instantiation> out;
  m.match_fact(rule, plan, new_fact, lines, out);
  std::vector<Instantiation> unique;
  std::set<std::vector<PointId>> seen;
  for (auto& inst : out)
    if (seen.insert(inst.subst).second) unique.push_back(std::move(inst));
  return unique;
}

}  // namespace geodd
