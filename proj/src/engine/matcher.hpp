#pragma once

// Join machinery behind saturate() and match_new().

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "geodd/engine.hpp"

namespace geodd::detail {

inline constexpr PointId kUnbound = 0xffff;

/// Orbit variants of every stored fact, indexed by the values at a chosen set
/// of argument positions. Tables are built on first use and kept up to date by
/// catch_up().
class VariantIndex {
 public:
  struct Ref {
    FactHandle fact;
    std::uint16_t variant;
  };

  VariantIndex(const FactDatabase& db, const Symmetry& sym) : db_(db), sym_(sym) {}

  void catch_up();
  const std::vector<Fact>& orbit(FactHandle h) const { return orbits_[h]; }
  const std::vector<Ref>& lookup(Pred p, std::uint8_t mask, const Fact& probe);

 private:
  using Key = std::array<PointId, kMaxArity>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  using Table = std::unordered_map<Key, std::vector<Ref>, KeyHash>;

  static Key project(const Fact& f, std::uint8_t mask);
  void add(Table& t, std::uint8_t mask, FactHandle h);

  const FactDatabase& db_;
  const Symmetry& sym_;
  std::vector<std::vector<Fact>> orbits_;
  std::map<std::pair<Pred, std::uint8_t>, Table> tables_;
  std::vector<Ref> empty_;
};

struct PlanStep {
  std::uint8_t premise;
  std::uint8_t mask;  // argument positions bound before this step
};

/// Static join orders: one per seed premise, plus one with nothing bound.
struct RulePlan {
  std::vector<std::vector<PlanStep>> seeded;
  std::vector<PlanStep> full;
};

RulePlan make_plan(const Rule& rule);

/// Predicates with a reflexive schema; their premises may be met by facts
/// that are not stored yet.
bool trivializable(Pred p);

class Matcher {
 public:
  Matcher(const FactDatabase& db, const Symmetry& sym, std::span<const PointId> universe)
      : db_(db), index_(db, sym), sym_(sym), universe_(universe.begin(), universe.end()) {}

  /// Instances using the stored fact `h` for at least one premise.
  void match_fact(const Rule& r, const RulePlan& plan, FactHandle h,
                  std::span<const Line> lines, std::vector<Instantiation>& out);
  /// Instances of an enumerating rule with line group `group` fixed to `line`.
  void match_line(const Rule& r, const RulePlan& plan, std::size_t group, Line line,
                  std::span<const Line> lines, std::vector<Instantiation>& out);
  /// Instances whose premises are all unstored reflexive facts.
  void match_virtual(const Rule& r, const RulePlan& plan, std::span<const Line> lines,
                     std::vector<Instantiation>& out);

 private:
  struct State {
    const Rule* rule;
    std::span<const PlanStep> plan;
    std::span<const Line> lines;
    std::optional<std::pair<std::size_t, Line>> fixed_line;
    bool use_db;
    std::vector<PointId> subst;
    std::vector<FactHandle> premises;
    std::vector<std::optional<Fact>> virt;
    std::vector<Instantiation>* out;
  };

  void join(State& s, std::size_t k);
  void enumerate(State& s, std::size_t group);
  void emit(State& s);
  bool unify(State& s, const RuleAtom& atom, const Fact& f, std::vector<std::uint8_t>& trail);
  std::vector<Fact> virtual_candidates(const State& s, const RuleAtom& atom) const;

  const FactDatabase& db_;
  VariantIndex index_;
  const Symmetry& sym_;
  std::vector<PointId> universe_;
};

}  // namespace geodd::detail
