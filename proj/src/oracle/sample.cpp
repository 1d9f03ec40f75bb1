#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "geodd/error.hpp"
#include "geodd/oracle.hpp"

namespace geodd::oracle {

ConstructionRecipe recipe_for(const Problem& problem, std::uint64_t seed, double delta) {
  ConstructionRecipe r;
  r.seed = seed;
  r.delta = delta;
  if (problem.hypotheses.size() == 1) {
    const Fact& h = problem.hypotheses.front();
    if (h.kind == Pred::Parallelogram || h.kind == Pred::Rectangle) {
      r.kind = h.kind == Pred::Parallelogram ? RecipeKind::Parallelogram : RecipeKind::Rectangle;
      for (auto p : h.args()) r.point_names.push_back(problem.points.name(p));
      return r;
    }
  }
  r.point_names = problem.points.names();
  return r;
}

namespace {

constexpr int kAttempts = 1000;

bool separated(const Model& m, const std::vector<PointId>& pts, double delta) {
  double bound = delta * m.scale();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        Vec2 a = m.at(pts[i]), b = m.at(pts[j]), c = m.at(pts[k]);
        double cr = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        if (std::abs(cr) <= bound) return false;
      }
  return true;
}

}  // namespace

Model sample_model(const ConstructionRecipe& recipe, const PointTable& points) {
  if (!(recipe.delta > 0)) throw Error(ErrorKind::Input, "degeneracy margin must be positive");
  std::vector<PointId> role;
  for (const auto& n : recipe.point_names) {
    auto id = points.find(n);
    if (!id) throw Error(ErrorKind::Input, "recipe point '" + n + "' is not in the problem");
    role.push_back(*id);
  }
  if (recipe.kind != RecipeKind::FreePoints && role.size() != 4)
    throw Error(ErrorKind::Input, "a quadrilateral recipe needs four points");
  std::set<PointId> placed(role.begin(), role.end());
  if (placed.size() != role.size()) throw Error(ErrorKind::Input, "recipe points repeat");
  std::vector<PointId> all(role);
  for (PointId p = 0; p < points.size(); ++p)
    if (!placed.count(p)) all.push_back(p);

  std::mt19937_64 rng(recipe.seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> extent(1.0, 10.0);
  std::uniform_real_distribution<double> turn(0.0, 2 * std::numbers::pi);
  auto draw = [&] { return Vec2{coord(rng), coord(rng)}; };

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Model m;
    std::size_t free_from = 0;
    switch (recipe.kind) {
      case RecipeKind::Parallelogram: {
        Vec2 a = draw(), b = draw(), c = draw();
        m.set(role[0], a);
        m.set(role[1], b);
        m.set(role[2], c);
        m.set(role[3], {a.x + c.x - b.x, a.y + c.y - b.y});
        free_from = 4;
        break;
      }
      case RecipeKind::Rectangle: {
        Vec2 a = draw();
        double phi = turn(rng), s = extent(rng), t = extent(rng);
        Vec2 u{std::cos(phi), std::sin(phi)}, v{-u.y, u.x};
        m.set(role[0], a);
        m.set(role[1], {a.x + s * u.x, a.y + s * u.y});
        m.set(role[2], {a.x + s * u.x + t * v.x, a.y + s * u.y + t * v.y});
        m.set(role[3], {a.x + t * v.x, a.y + t * v.y});
        free_from = 4;
        break;
      }
      case RecipeKind::FreePoints:
        break;
    }
    for (std::size_t i = free_from; i < all.size(); ++i) m.set(all[i], draw());
    if (separated(m, all, recipe.delta)) return m;
  }
  throw Error(ErrorKind::Degenerate, "no non-degenerate model after " +
                                         std::to_string(kAttempts) + " draws");
}

std::vector<Model> sample_models(const ConstructionRecipe& recipe, const PointTable& points,
                                 std::size_t count) {
  std::vector<Model> out;
  ConstructionRecipe r = recipe;
  for (std::size_t i = 0; i < count; ++i, ++r.seed) out.push_back(sample_model(r, points));
  return out;
}

// ---------------------------------------------------------------------------

Model parse_model(std::string_view text, const PointTable& points, const std::string& origin) {
  Model m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    SourcePos pos{origin, lineno, 1};
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string name, xs, ys, extra;
    if (!(fields >> name >> xs >> ys) || (fields >> extra))
      throw Error(ErrorKind::Input, "expected 'NAME x y'", pos);
    auto id = points.find(name);
    if (!id) throw Error(ErrorKind::Input, "unknown point '" + name + "'", pos);
    if (*id < m.coords.size() && m.coords[*id])
      throw Error(ErrorKind::Input, "point '" + name + "' placed twice", pos);
    auto number = [&pos](const std::string& s) {
      double v = 0;
      auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
        throw Error(ErrorKind::Input, "bad coordinate '" + s + "'", pos);
      return v;
    };
    m.set(*id, {number(xs), number(ys)});
  }
  return m;
}

std::string print_model(const Model& model, const PointTable& points) {
  auto fmt = [](double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  };
  std::string out;
  for (PointId p = 0; p < model.coords.size(); ++p) {
    if (!model.coords[p]) continue;
    out += points.name(p) + " " + fmt(model.coords[p]->x) + " " + fmt(model.coords[p]->y) + "\n";
  }
  return out;
}

}  // namespace geodd::oracle
