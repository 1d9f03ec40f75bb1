#include <map>
#include <set>

#include <json.hpp>

#include "geodd/error.hpp"
#include "geodd/render.hpp"

namespace geodd {

using nlohmann::ordered_json;

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
  return out;
}

std::vector<Rule> cited_rules(const ProofTrace& trace, std::span<const Rule> rules) {
  std::set<std::string> names;
  for (const auto& s : trace.steps) names.insert(s.rule);
  std::vector<Rule> out;
  for (const auto& r : rules)
    if (names.count(r.name)) out.push_back(r);
  return out;
}

namespace {

ordered_json facts_json(const ProofTrace& t, const std::vector<Fact>& facts, bool negated = false) {
  ordered_json a = ordered_json::array();
  for (const auto& f : facts) a.push_back((negated ? "~" : "") + t.show(f));
  return a;
}

std::optional<Origin> origin_from_name(std::string_view s) {
  for (auto o : {Origin::Hypothesis, Origin::Rule, Origin::TrivialInjected, Origin::Lemma})
    if (origin_name(o) == s) return o;
  return std::nullopt;
}

std::optional<RuleSource> source_from_name(std::string_view s) {
  for (auto r : {RuleSource::Builtin, RuleSource::File, RuleSource::Lemma, RuleSource::Structural})
    if (source_name(r) == s) return r;
  return std::nullopt;
}

class Reader {
 public:
  explicit Reader(const ordered_json& doc) : doc_(doc) {}

  [[noreturn]] static void fail(const std::string& why) {
    throw Error(ErrorKind::Input, "structured trace: " + why);
  }

  const ordered_json& field(const ordered_json& obj, const char* key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'");
    return obj.at(key);
  }

  std::string text(const ordered_json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  const ordered_json& array(const ordered_json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    return v;
  }

  void points(const ordered_json& names) {
    for (const auto& n : names) {
      if (!n.is_string()) fail("point names must be strings");
      auto s = n.get<std::string>();
      if (!ids_.emplace(s, static_cast<PointId>(names_.size())).second) fail("point " + s + " repeats");
      names_.push_back(s);
    }
  }

  const std::vector<std::string>& names() const { return names_; }

  PointId point(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) fail("unknown point " + name);
    return it->second;
  }

  Fact fact(const ordered_json& v, bool negated = false) const {
    if (!v.is_string()) fail("facts must be strings");
    std::string s = v.get<std::string>();
    std::string body = s;
    if (negated) {
      if (body.empty() || body[0] != '~') fail("ndg " + s + " must be negated");
      body.erase(0, 1);
    }
    auto open = body.find('(');
    if (open == std::string::npos || body.back() != ')') fail("malformed fact " + s);
    auto pred = pred_from_name(body.substr(0, open));
    if (!pred) fail("unknown predicate in " + s);
    std::vector<PointId> args;
    std::size_t p = open + 1;
    while (p < body.size()) {
      auto end = body.find_first_of(",)", p);
      args.push_back(point(body.substr(p, end - p)));
      p = end + 1;
    }
    if (args.size() != arity(*pred)) fail("wrong arity in " + s);
    return Fact(*pred, args);
  }

  std::vector<Fact> facts(const ordered_json& obj, const char* key, bool negated = false) const {
    std::vector<Fact> out;
    for (const auto& v : array(obj, key)) out.push_back(fact(v, negated));
    return out;
  }

 private:
  const ordered_json& doc_;
  std::vector<std::string> names_;
  std::map<std::string, PointId> ids_;
};

}  // namespace

std::string render_structured(const ProofTrace& t, const TraceMeta& meta) {
  ordered_json doc;
  doc["schema"] = std::string(kTraceSchema);
  ordered_json rules = ordered_json::array();
  for (const auto& r : meta.rules)
    rules.push_back({{"name", r.name},
                     {"source", std::string(source_name(r.source))},
                     {"fof", fof::print_unit(r.to_unit())}});
  doc["catalog"] = {{"sources", meta.catalog}, {"rules", rules}};
  doc["config_hash"] = meta.config_hash;
  doc["points"] = t.points;
  doc["hypotheses"] = facts_json(t, t.hypotheses);
  ordered_json steps = ordered_json::array();
  for (const auto& s : t.steps) {
    ordered_json subst = ordered_json::array();
    for (const auto& [var, p] : s.substitution) subst.push_back({var, t.points.at(p)});
    steps.push_back({{"rule", s.rule},
                     {"label", s.label},
                     {"origin", std::string(origin_name(s.origin))},
                     {"substitution", subst},
                     {"used", facts_json(t, s.used)},
                     {"new", facts_json(t, s.created)},
                     {"ndgs", facts_json(t, s.ndgs, true)}});
  }
  doc["steps"] = steps;
  doc["goals"] = facts_json(t, t.goals);
  doc["ndgs"] = facts_json(t, t.ndgs, true);
  return doc.dump(2) + "\n";
}

StructuredTrace parse_structured(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Input, std::string("structured trace: ") + e.what());
  }
  Reader rd(doc);
  std::string schema = rd.text(doc, "schema");
  if (schema != kTraceSchema) Reader::fail("unsupported schema '" + schema + "'");

  StructuredTrace out;
  const auto& catalog = rd.field(doc, "catalog");
  out.meta.catalog = rd.text(catalog, "sources");
  for (const auto& r : rd.array(catalog, "rules")) {
    auto source = source_from_name(rd.text(r, "source"));
    if (!source) Reader::fail("unknown rule source");
    auto parsed = fof::parse_units(rd.text(r, "fof"), "<trace>");
    if (parsed.units.size() != 1 || !parsed.includes.empty()) Reader::fail("each rule needs one fof unit");
    bool enumerate = *source == RuleSource::Builtin || *source == RuleSource::File;
    out.meta.rules.push_back(compile_rule(parsed.units.front(), *source, enumerate));
    if (out.meta.rules.back().name != rd.text(r, "name")) Reader::fail("rule name mismatch");
  }
  out.meta.config_hash = rd.text(doc, "config_hash");

  rd.points(rd.array(doc, "points"));
  ProofTrace& t = out.trace;
  t.points = rd.names();
  t.hypotheses = rd.facts(doc, "hypotheses");
  for (const auto& s : rd.array(doc, "steps")) {
    ProofStep step;
    step.rule = rd.text(s, "rule");
    step.label = rd.text(s, "label");
    auto origin = origin_from_name(rd.text(s, "origin"));
    if (!origin) Reader::fail("unknown origin in step " + step.label);
    step.origin = *origin;
    for (const auto& b : rd.array(s, "substitution")) {
      if (!b.is_array() || b.size() != 2 || !b[0].is_string() || !b[1].is_string())
        Reader::fail("substitution entries are [variable, point] pairs");
      step.substitution.emplace_back(b[0].get<std::string>(), rd.point(b[1].get<std::string>()));
    }
    step.used = rd.facts(s, "used");
    step.created = rd.facts(s, "new");
    step.ndgs = rd.facts(s, "ndgs", true);
    t.steps.push_back(std::move(step));
  }
  t.goals = rd.facts(doc, "goals");
  t.ndgs = rd.facts(doc, "ndgs", true);
  return out;
}

}  // namespace geodd
