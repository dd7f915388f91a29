#include "renormalist/rule.hpp"

#include <deque>

namespace renormalist {

namespace {

// All node types obtained from nu by replacing a nonempty sub-multiset of its
// plus edges by their iota images. Throws if a plus edge involved has no iota.
std::vector<NodeType> iota_replacements(const EdgeSystem& sys, const NodeType& nu) {
  std::vector<std::pair<int, int>> plus_groups;  // (edge, multiplicity)
  std::vector<int> rest;
  for (int e : nu.edges) {
    if (sys.is_plus(e)) {
      if (!plus_groups.empty() && plus_groups.back().first == e) plus_groups.back().second++;
      else plus_groups.push_back({e, 1});
    } else {
      rest.push_back(e);
    }
  }
  std::vector<NodeType> out;
  if (plus_groups.empty()) return out;

  std::vector<int> take(plus_groups.size(), 0);
  while (true) {
    size_t g = 0;
    while (g < take.size() && take[g] == plus_groups[g].second) take[g++] = 0;
    if (g == take.size()) break;
    take[g]++;
    bool any = false;
    for (int t : take) any |= (t > 0);
    if (!any) continue;
    std::vector<int> edges = rest;
    for (size_t i = 0; i < plus_groups.size(); ++i) {
      auto [e, mult] = plus_groups[i];
      if (take[i] > 0 && sys.edge(e).iota < 0)
        throw RuleError("plus edge has no iota image: " + sys.edge(e).id);
      for (int j = 0; j < take[i]; ++j) edges.push_back(sys.edge(e).iota);
      for (int j = take[i]; j < mult; ++j) edges.push_back(e);
    }
    out.push_back(NodeType(std::move(edges)));
  }
  return out;
}

}  // namespace

Rule normalize_rule(const Rule& r) {
  const EdgeSystem& sys = r.system();
  Rule out(&sys);
  std::deque<std::pair<int, NodeType>> work;
  for (int k = 0; k < sys.size(); ++k) {
    if (!sys.is_plus(k)) continue;
    for (const NodeType& nu : r.entries(k)) {
      out.add(k, nu);
      work.push_back({k, nu});
    }
  }
  std::set<std::pair<int, std::vector<int>>> seen;
  for (auto& [k, nu] : work) seen.insert({k, nu.edges});
  while (!work.empty()) {
    auto [k, nu] = work.front();
    work.pop_front();
    for (NodeType& repl : iota_replacements(sys, nu)) {
      auto key = std::make_pair(k, repl.edges);
      if (seen.insert(key).second) {
        out.add(k, repl);
        work.push_back({k, repl});
      }
    }
  }
  return out;
}

bool is_normal(const Rule& r) { return normalize_rule(r).same_entries(r); }

std::optional<EquationLikeWitness> equation_like_witness(const Rule& r) {
  const EdgeSystem& sys = r.system();
  for (int k = 0; k < sys.size(); ++k) {
    if (!sys.is_plus(k)) continue;
    for (const NodeType& nu : r.entries(k)) {
      int free_zero = 0;
      for (int e : nu.edges)
        if (sys.is_zero(e) && !sys.is_iota_image(e)) ++free_zero;
      if (free_zero > 1) return EquationLikeWitness{k, nu};
    }
  }
  return std::nullopt;
}

SubcriticalityResult is_subcritical(const Rule& r, const SubcriticalityConfig& cfg) {
  const EdgeSystem& sys = r.system();
  SubcriticalityResult res;

  std::map<int, Homogeneity> reg;
  for (int e = 0; e < sys.size(); ++e) {
    switch (sys.edge(e).cls) {
      case EdgeClass::Zero: reg[e] = Homogeneity::zero(); break;
      case EdgeClass::Minus: reg[e] = sys.edge(e).degree; break;
      case EdgeClass::Plus:
        if (r.entries(e).empty())
          throw RuleError("empty rule entry set for plus edge " + sys.edge(e).id);
        reg[e] = Homogeneity::zero();
        break;
    }
  }

  const int budget = cfg.step_budget_per_edge * std::max(1, sys.size());
  const Homogeneity slack = Homogeneity::kappa();
  for (int step = 1; step <= budget; ++step) {
    std::map<int, Homogeneity> next = reg;
    for (int k = 0; k < sys.size(); ++k) {
      if (!sys.is_plus(k)) continue;
      bool first = true;
      Homogeneity best;
      for (const NodeType& nu : r.entries(k)) {
        Homogeneity s;
        for (int e : nu.edges) s += reg.at(e);
        if (first || s < best) { best = s; first = false; }
      }
      next[k] = sys.edge(k).degree + best - slack;
      if (next[k] < cfg.floor) {
        res.subcritical = false;
        res.steps = step;
        return res;
      }
    }
    if (next == reg) {
      res.subcritical = true;
      res.steps = step;
      res.reg = reg;
      return res;
    }
    reg = std::move(next);
  }
  res.subcritical = false;
  res.steps = budget;
  return res;
}

}  // namespace renormalist
