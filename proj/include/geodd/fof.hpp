#pragma once

// Parser and printer for the Horn-shaped TPTP FOF subset used by rule
// catalogs (.ax) and problem files (.p).
//
//   unit    := "fof(" name "," role "," formula ")."
//            | "include(" quoted-path ")."
//   formula := ["![" vars "]" ":"] impl      (parentheses allowed anywhere)
//   impl    := conj ["=>" conj]
//   conj    := lit ("&" lit)*
//   lit     := ["~"] atom
//
// Negated literals may only appear on the premise side; they are recorded as
// non-degeneracy provisos. Identifiers starting with an uppercase letter are
// variables and must be quantified; all others are point constants.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geodd/error.hpp"
#include "geodd/geometry.hpp"

namespace geodd::fof {

enum class Role { Axiom, Conjecture };

std::string_view role_name(Role r);

struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  bool is_var() const { return kind == Kind::Variable; }
  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  Pred predicate = Pred::Coll;
  std::vector<Term> args;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct QuantifiedHorn {
  std::vector<std::string> variables;
  std::vector<Atom> premises;
  std::vector<Atom> ndg_premises;  // from negated premise literals
  std::vector<Atom> conclusions;

  friend bool operator==(const QuantifiedHorn&, const QuantifiedHorn&) = default;
};

struct SourceUnit {
  std::string name;
  Role role = Role::Axiom;
  QuantifiedHorn formula;
  SourcePos origin;

  /// Structural equality; the origin is ignored.
  friend bool operator==(const SourceUnit& a, const SourceUnit& b) {
    return a.name == b.name && a.role == b.role && a.formula == b.formula;
  }
};

struct IncludeDirective {
  std::string path;
  SourcePos origin;
};

struct ParsedFile {
  std::vector<SourceUnit> units;
  std::vector<IncludeDirective> includes;
};

/// Parses one file. Throws Error(Syntax|Semantic) with the offending position.
ParsedFile parse_units(std::string_view text, const std::string& origin = {});

/// Returns the content of a file, or nullopt when it cannot be read.
using Loader = std::function<std::optional<std::string>(const std::filesystem::path&)>;

/// Reads from the filesystem.
Loader filesystem_loader();

/// Expands includes depth first: included units come before the including
/// file's own units. Each file is expanded once; a file that includes itself
/// (directly or not) is an error, as is a unit name defined twice.
std::vector<SourceUnit> resolve_includes(const ParsedFile& root,
                                         const std::filesystem::path& root_path,
                                         const Loader& loader);

std::string print_atom(const Atom& atom, bool negated = false);
std::string print_unit(const SourceUnit& unit);

}  // namespace geodd::fof
