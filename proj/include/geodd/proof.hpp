#pragma once

// Proof traces extracted from a fixpoint, their independent checker, and
// lemma registration.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodd/engine.hpp"

namespace geodd {

inline constexpr std::string_view kTrivialRule = "trivial";

struct ProofStep {
  std::string rule;   // rule name, or "trivial" for an injected reflexive fact
  std::string label;  // name shown to readers
  Origin origin = Origin::Rule;
  std::vector<std::pair<std::string, PointId>> substitution;
  std::vector<Fact> used;
  std::vector<Fact> created;
  std::vector<Fact> ndgs;  // negated provisos, canonical

  friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

struct ProofTrace {
  std::vector<std::string> points;  // names indexed by PointId
  std::vector<Fact> hypotheses;
  std::vector<ProofStep> steps;
  std::vector<Fact> goals;
  std::vector<Fact> ndgs;

  std::string show(const Fact& f) const { return to_string(f, points); }
  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

/// Walks provenance backwards from the goals and returns the reachable
/// derivations in insertion order. Throws Error(Input) if a goal is missing.
ProofTrace extract_trace(const Fixpoint& fp, std::span<const Fact> goals);

/// Union of the steps' ndg atoms: canonical, deduplicated and sorted.
std::vector<Fact> collect_ndgs(const ProofTrace& trace);

/// Turns a proved problem into a rule: hypotheses => goals, with the trace's
/// ndgs as negated premises and every point generalised to a variable.
/// Throws Error(Semantic) when `name` is already taken by `existing`.
Rule register_lemma(const std::string& name, const Problem& problem, const ProofTrace& trace,
                    std::span<const Rule> existing = {});

struct TraceCheck {
  bool ok = true;
  std::optional<std::size_t> bad_step;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

/// Re-derives every step from its cited rule and used facts by brute-force
/// search over substitutions and symmetry variants. Shares no matching code
/// with saturation. eqtrans is always available.
TraceCheck verify_trace(const ProofTrace& trace, std::span<const Rule> rules,
                        const Symmetry& sym = Symmetry::standard());

// ---------------------------------------------------------------------------

/// Printed when saturation ends without the conjecture.
extern const std::string_view kDecisionProcedureAdvice;

struct ProofResult {
  bool proved = false;
  Fixpoint fixpoint;
  std::optional<ProofTrace> trace;
  std::string advice;  // set when not proved
};

/// Saturates and decides the goals by membership.
ProofResult prove(const Problem& problem, std::vector<Rule> rules, const Limits& limits = {},
                  const EngineConfig& config = {});

}  // namespace geodd
