#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>

#include "geodd/error.hpp"
#include "geodd/render.hpp"

namespace geodd {

namespace {

std::string join_words(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += i + 1 == parts.size() ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

std::string concat(std::span<const std::string> names, std::initializer_list<PointId> pts) {
  std::string out;
  for (auto p : pts) out += names[p];
  return out;
}

// Vertex form when the two lines meet at a named point, otherwise the pair of lines.
std::string angle(std::span<const std::string> n, PointId a, PointId b, PointId c, PointId d) {
  std::optional<PointId> vertex;
  PointId x = 0, y = 0;
  if (a == c && b != d) vertex = a, x = b, y = d;
  else if (a == d && b != c) vertex = a, x = b, y = c;
  else if (b == c && a != d) vertex = b, x = a, y = d;
  else if (b == d && a != c) vertex = b, x = a, y = c;
  if (vertex) return n[x] + n[*vertex] + n[y];
  return "(" + concat(n, {a, b}) + "," + concat(n, {c, d}) + ")";
}

// Lines and segments are unordered; quadrilaterals are read from their
// smallest rotation or reflection.
std::string segment(std::span<const std::string> n, PointId a, PointId b) {
  return n[a] <= n[b] ? n[a] + n[b] : n[b] + n[a];
}

std::string quad(std::span<const std::string> n, const std::array<PointId, 4>& q) {
  std::string best;
  for (int start = 0; start < 4; ++start)
    for (int dir : {1, 3}) {
      std::string s;
      for (int k = 0; k < 4; ++k) s += n[q[static_cast<std::size_t>((start + dir * k) % 4)]];
      if (best.empty() || s < best) best = s;
    }
  return "[" + best + "]";
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct Slot {
  std::string kind;
  std::vector<std::string> vars;
};

std::size_t slot_arity(const std::string& kind) {
  if (kind == "line" || kind == "seg") return 2;
  if (kind == "tri" || kind == "pts") return 3;
  if (kind == "angle" || kind == "quad") return 4;
  return 0;
}

bool whole_step(const std::string& kind) {
  return kind == "premises" || kind == "conclusions" || kind == "label";
}

// Splits a template into literal text and slots; Error(Semantic) on bad syntax.
std::vector<std::pair<std::string, std::optional<Slot>>> parse_template(const std::string& text) {
  std::vector<std::pair<std::string, std::optional<Slot>>> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    auto open = text.find('{', i);
    if (open == std::string::npos) {
      parts.emplace_back(text.substr(i), std::nullopt);
      break;
    }
    if (open > i) parts.emplace_back(text.substr(i, open - i), std::nullopt);
    auto close = text.find('}', open);
    if (close == std::string::npos) throw Error(ErrorKind::Semantic, "unclosed slot in template");
    std::string body = text.substr(open + 1, close - open - 1);
    Slot s;
    auto colon = body.find(':');
    s.kind = body.substr(0, colon);
    if (colon != std::string::npos) {
      std::string rest = body.substr(colon + 1);
      std::size_t p = 0;
      while (true) {
        auto comma = rest.find(',', p);
        s.vars.push_back(rest.substr(p, comma - p));
        if (comma == std::string::npos) break;
        p = comma + 1;
      }
    }
    bool ok = whole_step(s.kind) ? s.vars.empty()
                                 : slot_arity(s.kind) != 0 && s.vars.size() == slot_arity(s.kind);
    if (!ok) throw Error(ErrorKind::Semantic, "bad template slot {" + body + "}");
    parts.emplace_back(std::string(), s);
    i = close + 1;
  }
  return parts;
}

struct Builtin {
  const char* rule;
  const char* text;
};

const Builtin kBuiltins[] = {
    {"ruleR1",
     "Since the lines {line:A,B} and {line:D,C} are parallel and the lines {line:A,D} and "
     "{line:B,C} are parallel, by rule R1 (parallelogram definition) {quad:A,B,C,D} is a "
     "parallelogram."},
    {"ruleR1a",
     "Since {quad:A,B,C,D} is a parallelogram, by rule R1 (parallelogram definition) the lines "
     "{line:A,B} and {line:D,C} are parallel."},
    {"ruleR1b",
     "Since {quad:A,B,C,D} is a parallelogram, by rule R1 (parallelogram definition) the lines "
     "{line:A,D} and {line:B,C} are also parallel."},
    {"ruleD40",
     "By rule R2, since the lines {line:A,B} and {line:C,D} are parallel, the angles "
     "{angle:A,B,P,Q} and {angle:C,D,P,Q} are equal."},
    {"ruleD58",
     "Since the angles {angle:A,B,B,C} and {angle:P,Q,Q,R} are equal and the angles "
     "{angle:A,C,B,C} and {angle:P,R,Q,R} are equal, the triangles {tri:A,B,C} and "
     "{tri:P,Q,R} are similar (rule D58)."},
    {"ruleD61",
     "Since the triangles {tri:A,B,C} and {tri:P,Q,R} are similar and {seg:A,B} = {seg:P,Q}, "
     "by rule R3 (a.s.a. criterion of equality) the triangles {tri:A,B,C} and {tri:P,Q,R} are "
     "equal."},
    {"ruleR4",
     "Since {seg:A,B} = {seg:P,Q}, {seg:A,C} = {seg:P,R} and {seg:B,C} = {seg:Q,R}, by rule R4 "
     "the triangles {tri:A,B,C} and {tri:P,Q,R} are equal."},
    {"ruleR4a",
     "Using rule R4, since the triangles {tri:A,B,C} and {tri:P,Q,R} are equal, we have "
     "{seg:A,B} = {seg:P,Q}."},
    {"ruleR4b",
     "Using rule R4, since the triangles {tri:A,B,C} and {tri:P,Q,R} are equal, we have "
     "{seg:A,C} = {seg:P,R}."},
    {"ruleR4c",
     "Using rule R4, since the triangles {tri:A,B,C} and {tri:P,Q,R} are equal, we have "
     "{seg:B,C} = {seg:Q,R}."},
    {"ruleR5",
     "Since the angles {angle:D,A,A,B}, {angle:A,B,B,C}, {angle:B,C,C,D} and {angle:C,D,D,A} "
     "are right angles, by rule R5 (rectangle definition) {quad:A,B,C,D} is a rectangle."},
    {"ruleR5a",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the angle {angle:D,A,A,B} is a right "
     "angle."},
    {"ruleR5b",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the angle {angle:A,B,B,C} is a right "
     "angle."},
    {"ruleR5c",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the angle {angle:B,C,C,D} is a right "
     "angle."},
    {"ruleR5d",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the angle {angle:C,D,D,A} is a right "
     "angle."},
    {"ruleR5e",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the lines {line:A,B} and {line:D,C} are "
     "parallel."},
    {"ruleR5f",
     "Since {quad:A,B,C,D} is a rectangle, by rule R5 the lines {line:A,D} and {line:B,C} are "
     "parallel."},
    {"ruleR6",
     "By rule R6, since {angle:A,B,B,C} is a right angle, the lines {line:A,B} and {line:B,C} "
     "are perpendicular."},
    {"ruleD9",
     "By rule R7, since {line:A,B} and {line:C,D} are both perpendicular to {line:E,F}, "
     "{line:A,B} and {line:C,D} are parallel."},
    {"ruleR8",
     "Since {seg:A,B} = {seg:D,E}, {seg:B,C} = {seg:E,F} and {angle:A,B,B,C} and "
     "{angle:D,E,E,F} are both right angles, by rule R8 (s.a.s. criterion of equality of right "
     "triangles) we have {seg:A,C} = {seg:D,F}."},
    {"eqtrans",
     "by transitivity, the angles {angle:A,B,C,D} and {angle:I,J,K,L} are equal, both being "
     "equal to {angle:E,F,G,H}"},
};

}  // namespace

std::string describe(const Fact& f, std::span<const std::string> n) {
  const auto& p = f.pts;
  switch (f.kind) {
    case Pred::Coll:
      return join_words({n[p[0]], n[p[1]], n[p[2]]}) + " are collinear";
    case Pred::Para:
      return "the lines " + concat(n, {p[0], p[1]}) + " and " + concat(n, {p[2], p[3]}) +
             " are parallel";
    case Pred::Perp:
      return "the lines " + concat(n, {p[0], p[1]}) + " and " + concat(n, {p[2], p[3]}) +
             " are perpendicular";
    case Pred::Cong:
      return concat(n, {p[0], p[1]}) + " = " + concat(n, {p[2], p[3]});
    case Pred::RightAngle:
      return "the angle " + angle(n, p[0], p[1], p[2], p[3]) + " is a right angle";
    case Pred::EqAngle:
      return "the angles " + angle(n, p[0], p[1], p[2], p[3]) + " and " +
             angle(n, p[4], p[5], p[6], p[7]) + " are equal";
    case Pred::SimTri:
      return "the triangles [" + concat(n, {p[0], p[1], p[2]}) + "] and [" +
             concat(n, {p[3], p[4], p[5]}) + "] are similar";
    case Pred::ConTri:
      return "the triangles [" + concat(n, {p[0], p[1], p[2]}) + "] and [" +
             concat(n, {p[3], p[4], p[5]}) + "] are equal";
    case Pred::Parallelogram:
      return "[" + concat(n, {p[0], p[1], p[2], p[3]}) + "] is a parallelogram";
    case Pred::Rectangle:
      return "[" + concat(n, {p[0], p[1], p[2], p[3]}) + "] is a rectangle";
  }
  return {};
}

namespace {

std::string describe_negated(const Fact& f, std::span<const std::string> n) {
  if (f.kind == Pred::Coll) return join_words({n[f.pts[0]], n[f.pts[1]], n[f.pts[2]]}) + " are not collinear";
  return "it is not the case that " + describe(f, n);
}

std::string describe_all(const std::vector<Fact>& facts, std::span<const std::string> n) {
  std::vector<std::string> parts;
  for (const auto& f : facts) parts.push_back(describe(f, n));
  return join_words(parts);
}

std::string fill(const std::string& text, const ProofStep& step, std::span<const std::string> n) {
  std::string out;
  for (const auto& [literal, slot] : parse_template(text)) {
    out += literal;
    if (!slot) continue;
    if (slot->kind == "premises") {
      out += describe_all(step.used, n);
    } else if (slot->kind == "conclusions") {
      out += describe_all(step.created, n);
    } else if (slot->kind == "label") {
      out += step.label;
    } else {
      std::vector<PointId> pts;
      for (const auto& v : slot->vars) {
        auto it = std::find_if(step.substitution.begin(), step.substitution.end(),
                               [&v](const auto& b) { return b.first == v; });
        if (it == step.substitution.end())
          throw Error(ErrorKind::Semantic, "template variable " + v + " is not bound in step " + step.label);
        pts.push_back(it->second);
      }
      const auto& k = slot->kind;
      if (k == "line" || k == "seg") out += segment(n, pts[0], pts[1]);
      else if (k == "angle") out += angle(n, pts[0], pts[1], pts[2], pts[3]);
      else if (k == "tri") out += "[" + concat(n, {pts[0], pts[1], pts[2]}) + "]";
      else if (k == "quad") out += quad(n, {pts[0], pts[1], pts[2], pts[3]});
      else out += join_words({n[pts[0]], n[pts[1]], n[pts[2]]});
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::string& TemplateCatalog::generic() {
  static const std::string text = "By {label}, since {premises}, {conclusions}.";
  return text;
}

TemplateCatalog TemplateCatalog::builtin() {
  TemplateCatalog c;
  for (const auto& b : kBuiltins) c.templates_[b.rule] = b.text;
  return c;
}

TemplateCatalog TemplateCatalog::for_rules(std::span<const Rule> rules) {
  TemplateCatalog c = builtin();
  for (const auto& r : rules) {
    auto it = c.templates_.find(r.name);
    bool usable = false;
    if (it != c.templates_.end()) {
      try {
        c.set(r, it->second);
        usable = true;
      } catch (const Error&) {
      }
    }
    if (!usable) c.templates_[r.name] = generic();
  }
  return c;
}

void TemplateCatalog::set(const Rule& rule, std::string text) {
  for (const auto& [literal, slot] : parse_template(text)) {
    if (!slot) continue;
    for (const auto& v : slot->vars)
      if (std::find(rule.vars.begin(), rule.vars.end(), v) == rule.vars.end())
        throw Error(ErrorKind::Semantic, "template for " + rule.name + " uses unknown variable " + v);
  }
  templates_[rule.name] = std::move(text);
}

void TemplateCatalog::require(std::span<const Rule> rules) const {
  for (const auto& r : rules) {
    auto it = templates_.find(r.name);
    if (it == templates_.end()) throw Error(ErrorKind::Semantic, "no template for rule " + r.name);
    TemplateCatalog probe;
    probe.set(r, it->second);
  }
}

const std::string* TemplateCatalog::find(const std::string& rule_name) const {
  auto it = templates_.find(rule_name);
  return it == templates_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

std::string render_natural(const ProofTrace& trace, const TemplateCatalog& templates) {
  std::span<const std::string> n = trace.points;
  std::string out = "Suppose that " + describe_all(trace.hypotheses, n) + ".\n";

  struct Sentence {
    std::string body;
    std::vector<std::string> notes;
  };
  std::vector<Sentence> sentences;
  std::vector<std::string> pending;  // notes waiting for the next sentence
  std::set<Fact> trivial;

  for (const auto& step : trace.steps) {
    if (step.rule == kTrivialRule) {
      trivial.insert(step.created.begin(), step.created.end());
      continue;
    }
    const std::string* text = templates.find(step.rule);
    if (step.rule == eqtrans_rule().name) {
      std::string note = fill(text ? *text : "by transitivity, {conclusions}", step, n);
      if (!sentences.empty())
        sentences.back().notes.push_back(note);
      else
        pending.push_back(note);
      continue;
    }
    std::string body;
    if (!text || (*text == TemplateCatalog::generic() && step.used.empty()))
      body = step.used.empty() ? fill("By {label}, {conclusions}.", step, n)
                               : fill(TemplateCatalog::generic(), step, n);
    else
      body = fill(*text, step, n);
    if (!body.empty() && body.back() == '.') body.pop_back();
    Sentence s{capitalized(body), std::move(pending)};
    pending.clear();
    for (const auto& u : step.used)
      if (trivial.erase(u))
        s.notes.push_back(describe(u, n) + " is a trivial fact, added automatically to apply the rule");
    sentences.push_back(std::move(s));
  }
  for (auto& note : pending) sentences.push_back({capitalized(note), {}});

  for (const auto& s : sentences) {
    out += "\n" + s.body;
    for (const auto& note : s.notes) out += " (" + note + ")";
    out += ".\n";
  }
  if (trace.steps.empty()) {
    out += "\nThe conclusion is a hypothesis.\n";
  } else {
    out += "\nTherefore " + describe_all(trace.goals, n) + ".\n";
  }
  if (trace.ndgs.empty()) {
    out += "\nNo non-degeneracy condition is needed.\n";
  } else {
    std::vector<std::string> parts;
    for (const auto& f : trace.ndgs) parts.push_back(describe_negated(f, n));
    out += "\nThe result holds under the non-degeneracy conditions: " + join_words(parts) + ".\n";
  }
  return out;
}

}  // namespace geodd
