#include <algorithm>
#include <map>
#include <set>

#include "geodd/render.hpp"

namespace geodd {

namespace {

struct Row {
  std::vector<std::string> cells[4];
};

std::string rule_cell(const std::vector<std::string>& labels) {
  std::vector<std::pair<std::string, int>> counts;
  for (const auto& l : labels) {
    auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& c) { return c.first == l; });
    if (it == counts.end())
      counts.emplace_back(l, 1);
    else
      ++it->second;
  }
  std::string out;
  for (const auto& [l, n] : counts) {
    if (!out.empty()) out += ",";
    out += l;
    if (n > 1) out += " (x" + std::to_string(n) + ")";
  }
  return out;
}

std::string layout(const std::vector<Row>& rows) {
  static const char* header[4] = {"New Facts", "Rules", "Already Known Facts", "ndg."};
  std::size_t width[4];
  for (int c = 0; c < 4; ++c) {
    width[c] = std::string_view(header[c]).size();
    for (const auto& r : rows)
      for (const auto& s : r.cells[c]) width[c] = std::max(width[c], s.size());
  }
  auto line = [&](const std::string* v) {
    std::string s;
    for (int c = 0; c < 4; ++c) {
      if (c) s += " | ";
      s += v[c];
      if (c < 3) s += std::string(width[c] - v[c].size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string rule;
  for (int c = 0; c < 4; ++c) {
    if (c) rule += "-+-";
    rule += std::string(width[c], '-');
  }
  rule += "\n";

  std::string head[4] = {header[0], header[1], header[2], header[3]};
  std::string out = line(head) + rule;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += rule;
    std::size_t h = 1;
    for (const auto& c : rows[i].cells) h = std::max(h, c.size());
    for (std::size_t k = 0; k < h; ++k) {
      std::string v[4];
      for (int c = 0; c < 4; ++c)
        if (k < rows[i].cells[c].size()) v[c] = rows[i].cells[c][k];
      out += line(v);
    }
  }
  return out;
}

}  // namespace

std::string render_table(const ProofTrace& trace) {
  auto show = [&trace](const Fact& f) { return trace.show(f); };

  // Provisos a fact depends on, through every step below it.
  std::map<Fact, std::set<Fact>> support;
  std::vector<std::set<Fact>> step_ndgs(trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    std::set<Fact> all(s.ndgs.begin(), s.ndgs.end());
    for (const auto& u : s.used)
      if (auto it = support.find(u); it != support.end()) all.insert(it->second.begin(), it->second.end());
    for (const auto& c : s.created) support.emplace(c, all);
    step_ndgs[i] = std::move(all);
  }

  // Independent consecutive steps share a row.
  std::vector<std::vector<std::size_t>> groups;
  std::set<Fact> in_group;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    if (s.rule == kTrivialRule) continue;
    bool depends = std::any_of(s.used.begin(), s.used.end(),
                               [&](const Fact& u) { return in_group.count(u) > 0; });
    if (groups.empty() || depends) {
      groups.emplace_back();
      in_group.clear();
    }
    groups.back().push_back(i);
    in_group.insert(s.created.begin(), s.created.end());
  }

  // Trivial facts are listed one row before the row that first uses them.
  std::vector<std::vector<Fact>> trivial_before(groups.size() + 1);  // last: used by no row
  for (const auto& s : trace.steps) {
    if (s.rule != kTrivialRule) continue;
    for (const auto& f : s.created) {
      std::size_t g = 0;
      for (; g < groups.size(); ++g) {
        bool uses = std::any_of(groups[g].begin(), groups[g].end(), [&](std::size_t i) {
          const auto& u = trace.steps[i].used;
          return std::find(u.begin(), u.end(), f) != u.end();
        });
        if (uses) break;
      }
      trivial_before[g].push_back(f);
    }
  }

  std::vector<Row> rows;
  Row hyp;
  for (const auto& h : trace.hypotheses) hyp.cells[0].push_back(show(h));
  hyp.cells[1].push_back("by hyp.");
  rows.push_back(hyp);
  if (!trivial_before[0].empty()) {
    Row r;
    for (const auto& f : trivial_before[0]) r.cells[0].push_back(show(f) + " *");
    r.cells[1].push_back(std::string(kTrivialRule));
    rows.push_back(r);
  }

  std::set<Fact> listed_known;
  bool footnote = !trivial_before[0].empty();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Row r;
    std::vector<std::string> labels;
    std::set<Fact> ndgs;
    for (auto i : groups[g]) {
      const auto& s = trace.steps[i];
      labels.push_back(s.label);
      for (const auto& c : s.created) r.cells[0].push_back(show(c));
      for (const auto& u : s.used)
        if (listed_known.insert(u).second) r.cells[2].push_back(show(u));
      ndgs.insert(step_ndgs[i].begin(), step_ndgs[i].end());
    }
    if (g + 1 < groups.size())
      for (const auto& f : trivial_before[g + 1]) {
        r.cells[0].push_back(show(f) + " *");
        footnote = true;
      }
    r.cells[1].push_back(rule_cell(labels));
    for (const auto& n : ndgs) r.cells[3].push_back("~" + show(n));
    rows.push_back(std::move(r));
  }

  if (!groups.empty() && !trivial_before[groups.size()].empty()) {
    Row r;
    for (const auto& f : trivial_before[groups.size()]) r.cells[0].push_back(show(f) + " *");
    r.cells[1].push_back(std::string(kTrivialRule));
    rows.push_back(r);
    footnote = true;
  }

  std::string out = layout(rows);
  if (footnote) out += "\n* trivial fact, added automatically to apply a rule\n";
  return out;
}

}  // namespace geodd
