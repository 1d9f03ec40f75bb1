#pragma once

// Forward-chaining saturation of a fact database under Horn rules.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "geodd/fof.hpp"
#include "geodd/geometry.hpp"

namespace geodd {

// ---------------------------------------------------------------------------
// Rules

enum class RuleSource { Builtin, File, Lemma, Structural };

std::string_view source_name(RuleSource s);

/// Atom over rule variables; `vars[i]` indexes Rule::vars.
struct RuleAtom {
  Pred pred = Pred::Coll;
  std::array<std::uint8_t, kMaxArity> vars{};

  std::span<const std::uint8_t> args() const { return {vars.data(), arity(pred)}; }
  friend bool operator==(const RuleAtom&, const RuleAtom&) = default;
};

struct Rule {
  std::string name;
  std::vector<std::string> vars;
  std::vector<RuleAtom> premises;
  std::vector<RuleAtom> ndg_premises;
  std::vector<RuleAtom> conclusions;
  /// Variables bound by no positive premise, grounded by enumerating lines.
  std::vector<std::uint8_t> enum_vars;
  /// enum_vars grouped into the line slots they occupy.
  std::vector<std::pair<std::uint8_t, std::uint8_t>> enum_lines;
  RuleSource source = RuleSource::File;

  /// Name shown in traces: "ruleR1a" -> "R1a"; other names are unchanged.
  std::string label() const;
  /// Back to FOF (role axiom), e.g. for appending lemmas to a catalog.
  fof::SourceUnit to_unit() const;
};

std::string rule_label(std::string_view name);

/// Classifies variables and validates an axiom unit as a rule. Throws
/// Error(Semantic) for conjectures, point constants, empty conclusions and
/// conclusion variables that cannot be grounded.
Rule compile_rule(const fof::SourceUnit& unit, RuleSource source = RuleSource::File,
                  bool allow_enumeration = true);

/// eqangle transitivity over line pairs; runs with the user rules when the
/// structural closure is enabled.
const Rule& eqtrans_rule();

/// Fact obtained by substituting a complete assignment into a rule atom.
Fact instantiate(const RuleAtom& atom, std::span<const PointId> subst);

// ---------------------------------------------------------------------------
// Fact database

using FactHandle = std::uint32_t;
inline constexpr FactHandle kNoFact = 0xffffffffu;

enum class Origin { Hypothesis, Rule, TrivialInjected, Lemma };

std::string_view origin_name(Origin o);

/// One rule application (or hypothesis / trivial injection) that inserted facts.
struct Firing {
  Origin origin = Origin::Hypothesis;
  int rule = -1;                     // index into Fixpoint::rules
  std::vector<PointId> subst;        // aligned with the rule's vars
  std::vector<FactHandle> premises;  // aligned with the rule's premises
  std::vector<Fact> ndgs;            // canonical ground ndg atoms (negated provisos)
  std::vector<FactHandle> created;
};

struct Provenance {
  Origin origin;
  std::string rule;  // empty for hypotheses and trivial injections
  std::vector<std::pair<std::string, PointId>> substitution;
  std::vector<FactHandle> premise_handles;
  std::vector<Fact> ndg_instances;
};

class FactDatabase {
 public:
  std::size_t size() const { return facts_.size(); }
  const Fact& fact(FactHandle h) const { return facts_.at(h); }
  const std::vector<Fact>& facts() const { return facts_; }
  std::optional<FactHandle> find(const Fact& canonical) const;

  std::span<const FactHandle> of_kind(Pred p) const;
  std::span<const FactHandle> of_kind_point(Pred p, PointId point) const;

  std::uint32_t firing_of(FactHandle h) const { return firing_of_.at(h); }
  const Firing& firing(std::uint32_t id) const { return firings_.at(id); }
  const std::vector<Firing>& firings() const { return firings_; }

  std::uint32_t add_firing(Firing f);
  /// Inserts a canonical fact that is not yet present and links it to its firing.
  FactHandle insert(const Fact& canonical, std::uint32_t firing);

 private:
  std::vector<Fact> facts_;
  std::vector<std::uint32_t> firing_of_;
  std::vector<Firing> firings_;
  std::unordered_map<Fact, FactHandle, FactHash> lookup_;
  std::array<std::vector<FactHandle>, kPredCount> by_kind_;
  std::unordered_map<std::uint32_t, std::vector<FactHandle>> by_kind_point_;
};

/// Point pairs in a line slot of para/perp/rightangle/eqangle facts, edges and
/// diagonals of parallelogram/rectangle facts, and pairs within coll facts.
/// Ordered by first appearance.
std::vector<Line> known_lines(const FactDatabase& db);

// ---------------------------------------------------------------------------
// Saturation

enum class LimitKind { MaxFacts, MaxFirings, TimeBudget };

std::string_view limit_name(LimitKind k);

struct Limits {
  std::size_t max_facts = 100000;
  std::size_t max_firings = 1000000;
  std::chrono::milliseconds time_budget{10000};
};

struct EngineConfig {
  bool all_pairs_enumeration = false;
  bool eqangle_exchange = false;
  bool structural_closure = true;
};

struct Stats {
  std::size_t iterations = 0;
  std::array<std::size_t, kPredCount> facts_per_pred{};
  std::vector<std::size_t> firings_per_rule;  // aligned with Fixpoint::rules
  std::size_t firings = 0;
  std::size_t injected_trivial = 0;
  std::size_t dropped_degenerate = 0;
};

struct Fixpoint {
  PointTable points;
  std::vector<Rule> rules;
  EngineConfig config;
  FactDatabase db;
  std::vector<FactHandle> hypotheses;
  Stats stats;
  bool exhausted = false;
  std::optional<LimitKind> tripped;

  const Symmetry& symmetry() const { return Symmetry::get(config.eqangle_exchange); }
  Provenance provenance(FactHandle h) const;
};

/// Semi-naive closure of the hypotheses under the rules (plus eqtrans when
/// the structural closure is on). Facts are canonicalised before insertion and
/// processed first in, first out. A tripped limit returns the partial
/// fixpoint with exhausted = false.
Fixpoint saturate(const PointTable& points, std::span<const Fact> hypotheses,
                  std::vector<Rule> rules, const Limits& limits = {},
                  const EngineConfig& config = {});

std::optional<FactHandle> query(const Fixpoint& fp, const Fact& goal);

/// A satisfied rule instance found by the matcher.
struct Instantiation {
  std::vector<PointId> subst;
  std::vector<FactHandle> premises;  // kNoFact where `trivial` supplies the premise
  std::vector<Fact> trivial;         // reflexive premises absent from the database
};

/// Instances of `rule` with at least one positive premise matched against the
/// stored fact `new_fact`. Enumeration variables range over `lines`. A premise
/// may also be met by a reflexive fact over `universe` that is not stored yet.
/// ndg premises are not consulted.
std::vector<Instantiation> match_new(const Rule& rule, FactHandle new_fact,
                                     const FactDatabase& db, std::span<const Line> lines,
                                     std::span<const PointId> universe,
                                     const Symmetry& sym = Symmetry::standard());

/// Adds the canonical form of a reflexive fact if absent. Returns nothing when
/// `ground` is not an instance of a reflexive schema.
std::optional<FactHandle> inject_trivial(FactDatabase& db, const Fact& ground,
                                         const Symmetry& sym = Symmetry::standard());

// ---------------------------------------------------------------------------
// Problems

struct Problem {
  std::string name;
  PointTable points;
  std::vector<Fact> hypotheses;
  std::vector<Fact> goals;
};

struct LoadedProblem {
  Problem problem;
  std::vector<Rule> rules;  // axioms with premises found among the units
};

/// Splits resolved units into rules and one problem. The conjecture's
/// variables become points named after them; ground premise-free axioms are
/// extra hypotheses.
LoadedProblem build_problem(const std::vector<fof::SourceUnit>& units);

}  // namespace geodd
