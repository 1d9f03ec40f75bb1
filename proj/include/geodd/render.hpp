#pragma once

// Trace renderings: the four-column derivation table, template-driven prose,
// and the versioned JSON format "geodd-trace/1".

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodd/proof.hpp"

namespace geodd {

std::string render_table(const ProofTrace& trace);

/// Sentence templates keyed by rule name. Slots name rule variables:
///   {line:A,B} {seg:A,B} {angle:A,B,C,D} {tri:A,B,C} {quad:A,B,C,D} {pts:A,B,C}
/// and whole-step slots {premises} {conclusions} {label}.
class TemplateCatalog {
 public:
  /// Wording for the built-in rules and eqtrans.
  static TemplateCatalog builtin();

  /// Built-in wording plus a generic sentence for every rule without one.
  static TemplateCatalog for_rules(std::span<const Rule> rules);

  /// Adds or replaces a template; Error(Semantic) on a malformed slot or a
  /// slot variable that `rule` does not have.
  void set(const Rule& rule, std::string text);
  void set_unchecked(std::string rule_name, std::string text) {
    templates_[std::move(rule_name)] = std::move(text);
  }

  /// Error(Semantic) naming the first rule without a usable template.
  void require(std::span<const Rule> rules) const;

  const std::string* find(const std::string& rule_name) const;

  static const std::string& generic();

 private:
  std::map<std::string, std::string> templates_;
};

/// Rules without a template fall back to the generic sentence.
std::string render_natural(const ProofTrace& trace, const TemplateCatalog& templates);

/// Fact phrasing shared by the prose renderer, e.g. "the lines AB and CD are parallel".
std::string describe(const Fact& f, std::span<const std::string> names);

inline constexpr std::string_view kTraceSchema = "geodd-trace/1";

/// What a structured trace records besides the derivation itself.
struct TraceMeta {
  std::string catalog;              // sources the rules came from
  std::vector<Rule> rules;          // every rule a step cites
  std::string config_hash;          // hex digest of the run configuration
};

std::string render_structured(const ProofTrace& trace, const TraceMeta& meta);

struct StructuredTrace {
  ProofTrace trace;
  TraceMeta meta;
};

/// Error(Input) on malformed JSON, an unknown schema or inconsistent content.
StructuredTrace parse_structured(std::string_view text);

/// Keeps the rules cited by `trace`, in catalog order.
std::vector<Rule> cited_rules(const ProofTrace& trace, std::span<const Rule> rules);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace geodd
