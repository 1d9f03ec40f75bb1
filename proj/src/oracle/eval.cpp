#include <algorithm>
#include <cmath>
#include <numbers>

#include "geodd/error.hpp"
#include "geodd/oracle.hpp"

namespace geodd::oracle {

void Model::set(PointId p, Vec2 v) {
  if (coords.size() <= p) coords.resize(p + 1u);
  coords[p] = v;
}

const Vec2& Model::at(PointId p) const {
  if (p >= coords.size() || !coords[p])
    throw Error(ErrorKind::Input, "point #" + std::to_string(p) + " has no coordinates");
  return *coords[p];
}

double Model::scale() const {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool any = false;
  for (const auto& c : coords) {
    if (!c) continue;
    if (!any) {
      lo_x = hi_x = c->x;
      lo_y = hi_y = c->y;
      any = true;
    }
    lo_x = std::min(lo_x, c->x);
    hi_x = std::max(hi_x, c->x);
    lo_y = std::min(lo_y, c->y);
    hi_y = std::max(hi_y, c->y);
  }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  return span * span;
}

namespace {

Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm2(Vec2 a) { return dot(a, a); }

class Evaluator {
 public:
  Evaluator(const Model& m) : m_(m), scale_(m.scale()), eps_(m.epsilon) {}

  bool eval(const Fact& f) const {
    const auto& p = f.pts;
    switch (f.kind) {
      case Pred::Coll:
        return std::abs(cross(sub(pt(p[1]), pt(p[0])), sub(pt(p[2]), pt(p[0])))) <= eps_ * scale_;
      case Pred::Para:
        return para(p[0], p[1], p[2], p[3]);
      case Pred::Perp:
      case Pred::RightAngle:
        return perp(p[0], p[1], p[2], p[3]);
      case Pred::Cong:
        return std::abs(d2(p[0], p[1]) - d2(p[2], p[3])) <= eps_ * scale_;
      case Pred::EqAngle:
        return eqangle(f);
      case Pred::SimTri:
        return simtri(f);
      case Pred::ConTri:
        return close(d2(p[0], p[1]), d2(p[3], p[4])) && close(d2(p[1], p[2]), d2(p[4], p[5])) &&
               close(d2(p[0], p[2]), d2(p[3], p[5]));
      case Pred::Parallelogram:
        return para(p[0], p[1], p[3], p[2]) && para(p[0], p[3], p[1], p[2]);
      case Pred::Rectangle:
        return perp(p[3], p[0], p[0], p[1]) && perp(p[0], p[1], p[1], p[2]) &&
               perp(p[1], p[2], p[2], p[3]) && perp(p[2], p[3], p[3], p[0]);
    }
    return false;
  }

 private:
  const Vec2& pt(PointId p) const { return m_.at(p); }
  double d2(PointId a, PointId b) const { return norm2(sub(pt(b), pt(a))); }
  bool close(double a, double b) const { return std::abs(a - b) <= eps_ * scale_; }

  Vec2 dir(PointId a, PointId b) const {
    Vec2 d = sub(pt(b), pt(a));
    if (norm2(d) <= eps_ * eps_ * scale_)
      throw Error(ErrorKind::Input, "zero-length line through point #" + std::to_string(a));
    return d;
  }

  bool para(PointId a, PointId b, PointId c, PointId d) const {
    return std::abs(cross(dir(a, b), dir(c, d))) <= eps_ * scale_;
  }
  bool perp(PointId a, PointId b, PointId c, PointId d) const {
    return std::abs(dot(dir(a, b), dir(c, d))) <= eps_ * scale_;
  }

  double theta(PointId a, PointId b) const {
    Vec2 d = dir(a, b);
    return std::atan2(d.y, d.x);
  }

  // Full angles are compared mod pi by their wrapped difference.
  bool eqangle(const Fact& f) const {
    const auto& p = f.pts;
    double diff = (theta(p[2], p[3]) - theta(p[0], p[1])) - (theta(p[6], p[7]) - theta(p[4], p[5]));
    double r = std::remainder(diff, std::numbers::pi);
    return std::abs(r) <= eps_;
  }

  bool simtri(const Fact& f) const {
    const auto& p = f.pts;
    double a1 = d2(p[0], p[1]), b1 = d2(p[1], p[2]), c1 = d2(p[0], p[2]);
    double a2 = d2(p[3], p[4]), b2 = d2(p[4], p[5]), c2 = d2(p[3], p[5]);
    double tol = eps_ * scale_ * scale_;
    return std::abs(a1 * b2 - a2 * b1) <= tol && std::abs(b1 * c2 - b2 * c1) <= tol &&
           std::abs(a1 * c2 - a2 * c1) <= tol;
  }

  const Model& m_;
  double scale_;
  double eps_;
};

}  // namespace

bool eval_fact(const Model& model, const Fact& fact) { return Evaluator(model).eval(fact); }

std::vector<Violation> check_facts(std::span<const Model> models, std::span<const Fact> facts) {
  std::vector<Violation> out;
  for (std::size_t m = 0; m < models.size(); ++m) {
    Evaluator ev(models[m]);
    for (const auto& f : facts)
      if (!ev.eval(f)) out.push_back({f, m});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Violation> check_fixpoint(std::span<const Model> models, const Fixpoint& fixpoint) {
  const auto& facts = fixpoint.db.facts();
  return check_facts(models, facts);
}

}  // namespace geodd::oracle
