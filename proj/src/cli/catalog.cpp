#include <cstdlib>
#include <set>

#include "geodd/cli.hpp"
#include "geodd/error.hpp"

namespace geodd::cli {

fof::Loader catalog_loader() {
  return [disk = fof::filesystem_loader()](const std::filesystem::path& p) -> std::optional<std::string> {
    if (auto text = disk(p)) return text;
    if (const char* dir = std::getenv(kCatalogDirVar); dir && *dir)
      if (auto text = disk(std::filesystem::path(dir) / p.filename())) return text;
    if (p.filename() == kEmbeddedCatalogFile) return std::string(kEmbeddedCatalogText);
    return std::nullopt;
  };
}

std::vector<fof::SourceUnit> load_units(const std::filesystem::path& file, const fof::Loader& loader) {
  auto text = loader(file);
  if (!text) throw Error(ErrorKind::Include, "cannot read '" + file.string() + "'");
  auto parsed = fof::parse_units(*text, file.string());
  return fof::resolve_includes(parsed, file, loader);
}

namespace {

std::vector<Rule> compile_all(const std::vector<fof::SourceUnit>& units, RuleSource source) {
  std::vector<Rule> rules;
  for (const auto& u : units) {
    if (u.role == fof::Role::Conjecture)
      throw Error(ErrorKind::Semantic, "conjecture '" + u.name + "' in a rule catalog", u.origin);
    if (u.formula.premises.empty() && u.formula.ndg_premises.empty())
      throw Error(ErrorKind::Semantic, "ground fact '" + u.name + "' in a rule catalog", u.origin);
    rules.push_back(compile_rule(u, source, source != RuleSource::Lemma));
  }
  return rules;
}

}  // namespace

std::vector<Rule> load_rule_set(const std::string& selector, const fof::Loader& loader) {
  if (selector == kEmbeddedCatalogName) {
    auto parsed = fof::parse_units(kEmbeddedCatalogText, std::string(kEmbeddedCatalogFile));
    return compile_all(parsed.units, RuleSource::Builtin);
  }
  return compile_all(load_units(selector, loader), RuleSource::File);
}

std::vector<Rule> load_lemma_file(const std::filesystem::path& file, const fof::Loader& loader) {
  return compile_all(load_units(file, loader), RuleSource::Lemma);
}

std::vector<Rule> select_rules(const std::vector<Rule>& rules, const std::vector<std::string>& wanted) {
  std::set<std::string> want(wanted.begin(), wanted.end()), hit;
  std::vector<Rule> out;
  for (const auto& r : rules) {
    bool by_name = want.count(r.name) > 0, by_label = want.count(r.label()) > 0;
    if (by_name) hit.insert(r.name);
    if (by_label) hit.insert(r.label());
    if (by_name || by_label) out.push_back(r);
  }
  for (const auto& w : wanted)
    if (!hit.count(w)) throw Error(ErrorKind::Input, "no rule named '" + w + "'");
  return out;
}

}  // namespace geodd::cli
