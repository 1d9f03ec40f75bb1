#pragma once

// Command-line front end: catalog loading and the prove / saturate / check /
// render / lemma commands.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geodd/engine.hpp"

namespace geodd::cli {

enum ExitCode : int { kProved = 0, kNotProved = 1, kInputError = 2, kLimitTripped = 3 };

/// The built-in rule catalog, selectable as "year7" and found by include
/// directives naming its file when no such file exists on disk.
inline constexpr std::string_view kEmbeddedCatalogName = "year7";
inline constexpr std::string_view kEmbeddedCatalogFile = "geometryDeductiveDatabaseMethod.ax";
extern const std::string_view kEmbeddedCatalogText;

/// Names the directory searched for catalogs that are not found next to the
/// including file.
inline constexpr const char* kCatalogDirVar = "GEODD_CATALOG_DIR";

/// Reads `path`, then $GEODD_CATALOG_DIR/<file name>, then the embedded
/// catalog when the file name matches it.
fof::Loader catalog_loader();

/// Parses a file and expands its includes.
std::vector<fof::SourceUnit> load_units(const std::filesystem::path& file, const fof::Loader& loader);

/// Rules of an embedded catalog name or of a catalog file. Error(Semantic)
/// when the catalog holds a conjecture or a ground fact.
std::vector<Rule> load_rule_set(const std::string& selector, const fof::Loader& loader);

/// Lemma rules: compiled with source lemma and no enumeration variables.
std::vector<Rule> load_lemma_file(const std::filesystem::path& file, const fof::Loader& loader);

/// Keeps the rules whose name or label is listed. Error(Input) on a selector
/// that matches nothing.
std::vector<Rule> select_rules(const std::vector<Rule>& rules, const std::vector<std::string>& wanted);

/// argv-style entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geodd::cli
