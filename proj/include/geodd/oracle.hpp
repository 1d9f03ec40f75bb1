#pragma once

// Numeric semantics of the predicates on planar coordinates: evaluation,
// seeded model construction and fixpoint audits.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodd/engine.hpp"

namespace geodd::oracle {

struct Vec2 {
  double x = 0;
  double y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline constexpr double kDefaultEpsilon = 1e-9;
inline constexpr double kDefaultDelta = 1e-3;

/// Coordinates indexed by PointId; unset entries are points without a position.
struct Model {
  std::vector<std::optional<Vec2>> coords;
  double epsilon = kDefaultEpsilon;

  void set(PointId p, Vec2 v);
  const Vec2& at(PointId p) const;  // Error(Input) when unset
  /// Largest squared extent of the placed points along either axis.
  double scale() const;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Throws Error(Input) on a missing coordinate or a zero-length line.
bool eval_fact(const Model& model, const Fact& fact);

enum class RecipeKind { Parallelogram, Rectangle, FreePoints };

struct ConstructionRecipe {
  RecipeKind kind = RecipeKind::FreePoints;
  std::vector<std::string> point_names;  // A,B,C,D roles in order for quadrilaterals
  std::uint64_t seed = 0;
  double delta = kDefaultDelta;
};

/// Picks the construction matching the problem's hypotheses: a single
/// parallelogram or rectangle hypothesis, otherwise free points.
ConstructionRecipe recipe_for(const Problem& problem, std::uint64_t seed,
                              double delta = kDefaultDelta);

/// Deterministic in the seed (mt19937_64). Resamples until every triple of
/// recipe points has |cross| > delta * scale; Error(Degenerate) if that fails
/// after 1000 draws.
Model sample_model(const ConstructionRecipe& recipe, const PointTable& points);

/// Models for seeds seed, seed+1, ...
std::vector<Model> sample_models(const ConstructionRecipe& recipe, const PointTable& points,
                                 std::size_t count);

struct Violation {
  Fact fact;
  std::size_t model = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Facts false in some model, sorted.
std::vector<Violation> check_facts(std::span<const Model> models, std::span<const Fact> facts);
std::vector<Violation> check_fixpoint(std::span<const Model> models, const Fixpoint& fixpoint);

/// Text format: one "NAME x y" per line, "#" starts a comment line. Names
/// must already exist in `points`.
Model parse_model(std::string_view text, const PointTable& points,
                  const std::string& origin = {});
std::string print_model(const Model& model, const PointTable& points);

}  // namespace geodd::oracle
