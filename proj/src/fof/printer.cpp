#include <fstream>
#include <set>
#include <sstream>

#include "geodd/fof.hpp"

namespace geodd::fof {

std::string print_atom(const Atom& atom, bool negated) {
  std::string s = negated ? "~" : "";
  s += pred_name(atom.predicate);
  s += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) s += ',';
    s += atom.args[i].name;
  }
  s += ')';
  return s;
}

std::string print_unit(const SourceUnit& unit) {
  const auto& f = unit.formula;
  std::string lits;
  auto join = [&lits](const std::string& part) {
    if (!lits.empty()) lits += " & ";
    lits += part;
  };
  for (const auto& a : f.premises) join(print_atom(a));
  for (const auto& a : f.ndg_premises) join(print_atom(a, true));
  std::string body = lits;
  if (!f.premises.empty() || !f.ndg_premises.empty()) body += " => ";
  lits.clear();
  for (const auto& a : f.conclusions) join(print_atom(a));
  body += lits;

  std::string out = "fof(" + unit.name + "," + std::string(role_name(unit.role)) + ",(";
  if (!f.variables.empty()) {
    out += "![";
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
      if (i) out += ',';
      out += f.variables[i];
    }
    out += "] : (" + body + ") ";
  } else {
    out += body;
  }
  out += ")).";
  return out;
}

Loader filesystem_loader() {
  return [](const std::filesystem::path& p) -> std::optional<std::string> {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

namespace {

struct Resolver {
  const Loader& loader;
  std::vector<std::filesystem::path> stack;
  std::set<std::filesystem::path> done;
  std::set<std::string> names;
  std::vector<SourceUnit> out;

  void expand(const ParsedFile& file, const std::filesystem::path& path) {
    stack.push_back(path);
    for (const auto& inc : file.includes) {
      std::filesystem::path target = (path.parent_path() / inc.path).lexically_normal();
      for (const auto& open : stack)
        if (open == target)
          throw Error(ErrorKind::Include, "include cycle through '" + target.string() + "'",
                      inc.origin);
      if (done.count(target)) continue;
      auto text = loader(target);
      if (!text)
        throw Error(ErrorKind::Include, "cannot read included file '" + target.string() + "'",
                    inc.origin);
      expand(parse_units(*text, target.string()), target);
    }
    for (const auto& unit : file.units) {
      if (!names.insert(unit.name).second)
        throw Error(ErrorKind::Semantic, "duplicate unit name '" + unit.name + "' across files",
                    unit.origin);
      out.push_back(unit);
    }
    stack.pop_back();
    done.insert(path);
  }
};

}  // namespace

std::vector<SourceUnit> resolve_includes(const ParsedFile& root,
                                         const std::filesystem::path& root_path,
                                         const Loader& loader) {
  Resolver r{loader, {}, {}, {}, {}};
  r.expand(root, root_path.lexically_normal());
  return std::move(r.out);
}

}  // namespace geodd::fof
