#pragma once

// Predicate vocabulary, interned points, facts and their canonical forms.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace geodd {

using PointId = std::uint16_t;

enum class Pred : std::uint8_t {
  Coll,
  Para,
  Perp,
  Cong,
  RightAngle,
  EqAngle,
  SimTri,
  ConTri,
  Parallelogram,
  Rectangle,
};

inline constexpr std::size_t kPredCount = 10;
inline constexpr std::size_t kMaxArity = 8;

inline constexpr std::array<Pred, kPredCount> kAllPreds = {
    Pred::Coll,   Pred::Para,   Pred::Perp,          Pred::Cong,      Pred::RightAngle,
    Pred::EqAngle, Pred::SimTri, Pred::ConTri, Pred::Parallelogram, Pred::Rectangle};

std::size_t arity(Pred p);
std::string_view pred_name(Pred p);
std::optional<Pred> pred_from_name(std::string_view name);

/// True for predicates whose arguments are consecutive (point, point) line slots.
bool has_line_slots(Pred p);

/// Dense name <-> id mapping for the points of one problem.
class PointTable {
 public:
  PointId intern(std::string_view name);
  std::optional<PointId> find(std::string_view name) const;
  const std::string& name(PointId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, PointId> ids_;
};

/// A predicate applied to points. Slots past arity(kind) are zero.
struct Fact {
  Pred kind = Pred::Coll;
  std::array<PointId, kMaxArity> pts{};

  Fact() = default;
  Fact(Pred k, std::initializer_list<PointId> args);
  Fact(Pred k, std::span<const PointId> args);

  std::span<const PointId> args() const { return {pts.data(), arity(kind)}; }

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept;
};

/// `perm[i]` is the source position copied into output position i.
using Perm = std::array<std::uint8_t, kMaxArity>;

Fact apply(const Perm& perm, const Fact& f);

/// Symmetry groups of every predicate, closed from their generators.
class Symmetry {
 public:
  /// Default groups. eqangle is closed under line reversal, swapping the two
  /// angles, and reversing both angles at once.
  static const Symmetry& standard();
  /// Standard groups plus the eqangle exchange law [a,b]=[c,d] <=> [a,c]=[b,d].
  static const Symmetry& with_exchange();
  static const Symmetry& get(bool eqangle_exchange) {
    return eqangle_exchange ? with_exchange() : standard();
  }

  const std::vector<Perm>& generators(Pred p) const { return generators_[idx(p)]; }
  const std::vector<Perm>& group(Pred p) const { return groups_[idx(p)]; }
  bool exchange() const { return exchange_; }

 private:
  explicit Symmetry(bool exchange);
  static std::size_t idx(Pred p) { return static_cast<std::size_t>(p); }

  bool exchange_;
  std::array<std::vector<Perm>, kPredCount> generators_;
  std::array<std::vector<Perm>, kPredCount> groups_;
};

/// Closure of a generator set under composition (includes the identity).
std::vector<Perm> close_group(Pred p, const std::vector<Perm>& generators);

/// Checks that no line, segment, triangle or quadrilateral slot collapses.
bool is_valid(const Fact& f);

/// All distinct symmetry-equivalent argument tuples, `f` first.
std::vector<Fact> orbit(const Fact& f, const Symmetry& sym = Symmetry::standard());

/// Lexicographically minimal member of the orbit. Throws Error(Degenerate)
/// for invalid facts.
Fact canon(const Fact& f, const Symmetry& sym = Symmetry::standard());
std::optional<Fact> try_canon(const Fact& f, const Symmetry& sym = Symmetry::standard());

/// Instance of a reflexive schema: cong(X,Y,X,Y), eqangle(a,b,a,b),
/// simtri/contri(A,B,C,A,B,C), each up to symmetry. Under the exchange law
/// eqangle(a,a,b,b) is a spelling of eqangle(a,b,a,b) as well.
bool is_reflexive_trivial(const Fact& f, const Symmetry& sym = Symmetry::standard());

/// Unordered point pair, stored with first < second.
struct Line {
  PointId a = 0;
  PointId b = 0;
  static Line of(PointId p, PointId q) { return p < q ? Line{p, q} : Line{q, p}; }
  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

/// Point pairs a fact contributes to the set of known lines.
std::vector<Line> lines_of(const Fact& f);

std::string to_string(const Fact& f, const PointTable& points);
std::string to_string(const Fact& f, std::span<const std::string> names);

}  // namespace geodd
