#include "geodd/geometry.hpp"

#include <algorithm>
#include <set>

#include "geodd/error.hpp"

namespace geodd {

namespace {

struct PredInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<PredInfo, kPredCount> kInfo = {{
    {"coll", 3},
    {"para", 4},
    {"perp", 4},
    {"cong", 4},
    {"rightangle", 4},
    {"eqangle", 8},
    {"simtri", 6},
    {"contri", 6},
    {"parallelogram", 4},
    {"rectangle", 4},
}};

Perm make_perm(std::initializer_list<std::uint8_t> images) {
  Perm p{};
  for (std::uint8_t i = 0; i < kMaxArity; ++i) p[i] = i;
  std::uint8_t i = 0;
  for (auto v : images) p[i++] = v;
  return p;
}

std::vector<Perm> base_generators(Pred p, bool exchange) {
  switch (p) {
    case Pred::Coll:
      return {make_perm({1, 0, 2}), make_perm({0, 2, 1})};
    case Pred::Para:
    case Pred::Perp:
    case Pred::Cong:
    case Pred::RightAngle:
      return {make_perm({1, 0, 2, 3}), make_perm({0, 1, 3, 2}), make_perm({2, 3, 0, 1})};
    case Pred::EqAngle: {
      std::vector<Perm> g = {
          make_perm({1, 0, 2, 3, 4, 5, 6, 7}),  // reverse each line
          make_perm({0, 1, 3, 2, 4, 5, 6, 7}),
          make_perm({0, 1, 2, 3, 5, 4, 6, 7}),
          make_perm({0, 1, 2, 3, 4, 5, 7, 6}),
          make_perm({4, 5, 6, 7, 0, 1, 2, 3}),  // [L1,L2]=[L3,L4] -> [L3,L4]=[L1,L2]
          make_perm({2, 3, 0, 1, 6, 7, 4, 5}),  // [L1,L2]=[L3,L4] -> [L2,L1]=[L4,L3]
      };
      if (exchange) g.push_back(make_perm({0, 1, 4, 5, 2, 3, 6, 7}));
      return g;
    }
    case Pred::SimTri:
    case Pred::ConTri:
      return {make_perm({1, 0, 2, 4, 3, 5}), make_perm({0, 2, 1, 3, 5, 4}),
              make_perm({3, 4, 5, 0, 1, 2})};
    case Pred::Parallelogram:
    case Pred::Rectangle:
      return {make_perm({1, 2, 3, 0}), make_perm({0, 3, 2, 1})};
  }
  return {};
}

bool distinct(std::span<const PointId> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return false;
  return true;
}

bool same_segment(PointId a, PointId b, PointId c, PointId d) {
  return Line::of(a, b) == Line::of(c, d);
}

}  // namespace

std::size_t arity(Pred p) { return kInfo[static_cast<std::size_t>(p)].arity; }

std::string_view pred_name(Pred p) { return kInfo[static_cast<std::size_t>(p)].name; }

std::optional<Pred> pred_from_name(std::string_view name) {
  for (auto p : kAllPreds)
    if (pred_name(p) == name) return p;
  return std::nullopt;
}

bool has_line_slots(Pred p) {
  return p == Pred::Para || p == Pred::Perp || p == Pred::RightAngle || p == Pred::EqAngle;
}

PointId PointTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<PointId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<PointId> PointTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Fact::Fact(Pred k, std::initializer_list<PointId> args) : kind(k) {
  if (args.size() != arity(k))
    throw Error(ErrorKind::Semantic, "arity mismatch for " + std::string(pred_name(k)));
  std::copy(args.begin(), args.end(), pts.begin());
}

Fact::Fact(Pred k, std::span<const PointId> args) : kind(k) {
  if (args.size() != arity(k))
    throw Error(ErrorKind::Semantic, "arity mismatch for " + std::string(pred_name(k)));
  std::copy(args.begin(), args.end(), pts.begin());
}

std::size_t FactHash::operator()(const Fact& f) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(f.kind);
  for (auto p : f.pts) {
    h ^= p;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Fact apply(const Perm& perm, const Fact& f) {
  Fact out;
  out.kind = f.kind;
  const auto n = arity(f.kind);
  for (std::size_t i = 0; i < n; ++i) out.pts[i] = f.pts[perm[i]];
  return out;
}

std::vector<Perm> close_group(Pred p, const std::vector<Perm>& generators) {
  const auto n = arity(p);
  auto compose = [n](const Perm& outer, const Perm& inner) {
    // apply(outer, apply(inner, f)) copies f[inner[outer[i]]] into slot i
    Perm r = make_perm({});
    for (std::size_t i = 0; i < n; ++i) r[i] = inner[outer[i]];
    return r;
  };
  std::vector<Perm> group = {make_perm({})};
  std::set<Perm> seen(group.begin(), group.end());
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : generators) {
      Perm next = compose(g, group[i]);
      if (seen.insert(next).second) group.push_back(next);
    }
  }
  return group;
}

Symmetry::Symmetry(bool exchange) : exchange_(exchange) {
  for (auto p : kAllPreds) {
    generators_[idx(p)] = base_generators(p, exchange);
    groups_[idx(p)] = close_group(p, generators_[idx(p)]);
  }
}

const Symmetry& Symmetry::standard() {
  static const Symmetry s(false);
  return s;
}

const Symmetry& Symmetry::with_exchange() {
  static const Symmetry s(true);
  return s;
}

bool is_valid(const Fact& f) {
  const auto& p = f.pts;
  switch (f.kind) {
    case Pred::Coll:
      return distinct(f.args());
    case Pred::Para:
    case Pred::Perp:
    case Pred::Cong:
    case Pred::RightAngle:
      return p[0] != p[1] && p[2] != p[3];
    case Pred::EqAngle:
      return p[0] != p[1] && p[2] != p[3] && p[4] != p[5] && p[6] != p[7];
    case Pred::SimTri:
    case Pred::ConTri:
      return distinct({p.data(), 3}) && distinct({p.data() + 3, 3});
    case Pred::Parallelogram:
    case Pred::Rectangle:
      return distinct(f.args());
  }
  return false;
}

std::vector<Fact> orbit(const Fact& f, const Symmetry& sym) {
  std::vector<Fact> out;
  const auto& group = sym.group(f.kind);
  out.reserve(group.size());
  for (const auto& perm : group) {
    Fact v = apply(perm, f);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::optional<Fact> try_canon(const Fact& f, const Symmetry& sym) {
  if (!is_valid(f)) return std::nullopt;
  Fact best = f;
  for (const auto& perm : sym.group(f.kind)) {
    Fact v = apply(perm, f);
    if (v < best) best = v;
  }
  return best;
}

Fact canon(const Fact& f, const Symmetry& sym) {
  auto c = try_canon(f, sym);
  if (!c) {
    std::string args;
    for (auto p : f.args()) args += (args.empty() ? "" : ",") + std::to_string(p);
    throw Error(ErrorKind::Degenerate,
                "degenerate " + std::string(pred_name(f.kind)) + "(" + args + ")");
  }
  return *c;
}

bool is_reflexive_trivial(const Fact& f, const Symmetry& sym) {
  const auto& p = f.pts;
  switch (f.kind) {
    case Pred::Cong:
      return same_segment(p[0], p[1], p[2], p[3]);
    case Pred::EqAngle:
      return (same_segment(p[0], p[1], p[4], p[5]) && same_segment(p[2], p[3], p[6], p[7])) ||
             (sym.exchange() && same_segment(p[0], p[1], p[2], p[3]) &&
              same_segment(p[4], p[5], p[6], p[7]));
    case Pred::SimTri:
    case Pred::ConTri:
      return p[0] == p[3] && p[1] == p[4] && p[2] == p[5];
    default:
      return false;
  }
}

std::vector<Line> lines_of(const Fact& f) {
  const auto& p = f.pts;
  std::vector<Line> out;
  switch (f.kind) {
    case Pred::Para:
    case Pred::Perp:
    case Pred::RightAngle:
    case Pred::EqAngle:
      for (std::size_t i = 0; i < arity(f.kind); i += 2) out.push_back(Line::of(p[i], p[i + 1]));
      break;
    case Pred::Parallelogram:
    case Pred::Rectangle:
      out = {Line::of(p[0], p[1]), Line::of(p[1], p[2]), Line::of(p[2], p[3]),
             Line::of(p[3], p[0]), Line::of(p[0], p[2]), Line::of(p[1], p[3])};
      break;
    case Pred::Coll:
      out = {Line::of(p[0], p[1]), Line::of(p[0], p[2]), Line::of(p[1], p[2])};
      break;
    default:
      break;
  }
  return out;
}

std::string to_string(const Fact& f, std::span<const std::string> names) {
  std::string s(pred_name(f.kind));
  s += '(';
  bool first = true;
  for (auto p : f.args()) {
    if (!first) s += ',';
    first = false;
    s += p < names.size() ? names[p] : "?" + std::to_string(p);
  }
  s += ')';
  return s;
}

std::string to_string(const Fact& f, const PointTable& points) {
  return to_string(f, std::span<const std::string>(points.names()));
}

}  // namespace geodd
