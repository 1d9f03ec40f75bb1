#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geodd/engine.hpp"
#include "geodd/error.hpp"
#include "geodd/fof.hpp"

#ifndef GEODD_DATA_DIR
#error "GEODD_DATA_DIR must name the directory holding the corpus"
#endif

namespace testsupport {

using namespace geodd;

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(GEODD_DATA_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedProblem load(const std::string& name) {
  auto path = data_path(name);
  auto parsed = fof::parse_units(slurp(path), path.string());
  return build_problem(fof::resolve_includes(parsed, path, fof::filesystem_loader()));
}

inline std::vector<Rule> pick(const std::vector<Rule>& rules, const std::vector<std::string>& labels) {
  std::vector<Rule> out;
  for (const auto& r : rules)
    if (std::find(labels.begin(), labels.end(), r.label()) != labels.end()) out.push_back(r);
  return out;
}

// "cong(A,B,C,D)" against named points; test-side so the parser is not involved.
inline Fact F(const PointTable& points, const std::string& text) {
  auto open = text.find('(');
  auto pred = pred_from_name(text.substr(0, open));
  if (!pred) throw std::runtime_error("bad predicate in " + text);
  std::vector<PointId> args;
  std::string cur;
  for (std::size_t i = open + 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == ',' || c == ')') {
      args.push_back(*points.find(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return Fact(*pred, args);
}

inline std::set<Fact> fact_set(const Fixpoint& fp) {
  return {fp.db.facts().begin(), fp.db.facts().end()};
}

// Naive closure: every round evaluates every rule over all current facts plus
// every reflexive fact over the universe, then adds what the satisfied
// instances produce. Nothing is shared with the engine's matcher.
class NaiveClosure {
 public:
  NaiveClosure(std::vector<PointId> universe, std::vector<Rule> rules, const EngineConfig& config)
      : universe_(std::move(universe)), rules_(std::move(rules)), config_(config),
        sym_(Symmetry::get(config.eqangle_exchange)) {
    if (config.structural_closure) rules_.push_back(eqtrans_rule());
    for (Pred p : kAllPreds) {
      std::vector<PointId> args(arity(p), 0);
      std::vector<std::size_t> digit(arity(p), 0);
      for (;;) {
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = universe_[digit[i]];
        Fact f(p, args);
        if (is_valid(f) && is_reflexive_trivial(f, sym_)) reflexive_.insert(canon(f, sym_));
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == universe_.size()) digit[k++] = 0;
        if (k == digit.size()) break;
      }
    }
  }

  std::set<Fact> run(std::span<const Fact> hypotheses) {
    std::set<Fact> s;
    for (const auto& h : hypotheses) s.insert(canon(h, sym_));
    for (;;) {
      std::set<Fact> next = s;
      round(s, next);
      if (next == s) return s;
      s = std::move(next);
    }
  }

 private:
  using Pool = std::map<std::pair<Pred, PointId>, std::vector<Fact>>;

  void round(const std::set<Fact>& s, std::set<Fact>& next) {
    pool_.clear();
    origin_.clear();
    auto add = [this](const Fact& f, bool stored) {
      for (const auto& v : orbit(f, sym_)) pool_[{v.kind, v.pts[0]}].push_back(v);
      origin_[f] = stored;
    };
    for (const auto& f : s) add(f, true);
    for (const auto& f : reflexive_)
      if (!s.count(f)) add(f, false);

    std::set<Line> line_set;
    if (config_.all_pairs_enumeration) {
      for (auto a : universe_)
        for (auto b : universe_)
          if (a < b) line_set.insert(Line::of(a, b));
    }
    for (const auto& f : s)
      for (const auto& l : lines_of(f)) line_set.insert(l);
    lines_.assign(line_set.begin(), line_set.end());

    for (const auto& r : rules_) {
      rule_ = &r;
      subst_.assign(r.vars.size(), kFree);
      used_.assign(r.premises.size(), Fact{});
      match(0, next);
    }
  }

  void match(std::size_t k, std::set<Fact>& next) {
    if (k == rule_->premises.size()) {
      enumerate(0, next);
      return;
    }
    const RuleAtom& a = rule_->premises[k];
    auto try_bucket = [&](const std::vector<Fact>& bucket) {
      for (const auto& v : bucket) {
        std::vector<std::uint8_t> trail;
        bool ok = true;
        for (std::size_t i = 0; i < arity(a.pred) && ok; ++i) {
          auto var = a.vars[i];
          if (subst_[var] == kFree) {
            subst_[var] = v.pts[i];
            trail.push_back(var);
          } else {
            ok = subst_[var] == v.pts[i];
          }
        }
        if (ok) {
          used_[k] = canon(v, sym_);
          match(k + 1, next);
        }
        for (auto var : trail) subst_[var] = kFree;
      }
    };
    PointId first = subst_[a.vars[0]];
    if (first != kFree) {
      auto it = pool_.find({a.pred, first});
      if (it != pool_.end()) try_bucket(it->second);
    } else {
      for (auto p : universe_) {
        auto it = pool_.find({a.pred, p});
        if (it != pool_.end()) try_bucket(it->second);
      }
    }
  }

  void enumerate(std::size_t g, std::set<Fact>& next) {
    if (g == rule_->enum_lines.size()) {
      conclude(next);
      return;
    }
    auto [x, y] = rule_->enum_lines[g];
    for (const auto& l : lines_) {
      for (int flip = 0; flip < 2; ++flip) {
        subst_[x] = flip ? l.b : l.a;
        subst_[y] = flip ? l.a : l.b;
        enumerate(g + 1, next);
      }
    }
    subst_[x] = subst_[y] = kFree;
  }

  void conclude(std::set<Fact>& next) {
    for (const auto& n : rule_->ndg_premises)
      if (!try_canon(instantiate(n, subst_), sym_)) return;
    for (const auto& c : rule_->conclusions)
      if (auto f = try_canon(instantiate(c, subst_), sym_)) next.insert(*f);
    for (const auto& u : used_)
      if (!origin_.at(u)) next.insert(u);
  }

  static constexpr PointId kFree = 0xffff;

  std::vector<PointId> universe_;
  std::vector<Rule> rules_;
  EngineConfig config_;
  const Symmetry& sym_;
  std::set<Fact> reflexive_;
  Pool pool_;
  std::map<Fact, bool> origin_;
  std::vector<Line> lines_;
  const Rule* rule_ = nullptr;
  std::vector<PointId> subst_;
  std::vector<Fact> used_;
};

inline std::vector<PointId> universe_of(std::span<const Fact> facts) {
  std::set<PointId> u;
  for (const auto& f : facts)
    for (auto p : f.args()) u.insert(p);
  return {u.begin(), u.end()};
}

inline std::set<Fact> naive_fixpoint(const LoadedProblem& lp, const std::vector<Rule>& rules,
                                     const EngineConfig& config = {}) {
  NaiveClosure n(universe_of(lp.problem.hypotheses), rules, config);
  return n.run(lp.problem.hypotheses);
}

}  // namespace testsupport
