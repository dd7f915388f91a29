#include "renormalist/generate.hpp"

#include <algorithm>
#include <set>

namespace renormalist {

namespace {

struct GenContext {
  const Rule& rule;
  const EdgeSystem& sys;
  std::vector<Homogeneity> min_planted;
  long long budget;
  long long used = 0;

  void charge(long long nodes) {
    used += nodes;
    if (used > budget)
      throw BudgetError("tree generation exceeded the node budget (rule not equation-like, or cutoff miscalibrated)");
  }

  // All planted trees graft(edge, A) with homogeneity < bound.
  std::vector<Tree> planted(int edge, const Homogeneity& bound);
  // All trees with root node type nu, total homogeneity < bound.
  std::vector<Tree> rooted(const NodeType& nu, const Homogeneity& bound);
};

std::vector<Tree> GenContext::planted(int edge, const Homogeneity& bound) {
  std::vector<Tree> out;
  if (!(min_planted[edge] < bound)) return out;
  const EdgeType& et = sys.edge(edge);
  if (et.cls != EdgeClass::Plus) {
    charge(2);
    out.push_back(Tree::single_edge(edge));
    return out;
  }
  for (const NodeType& nu : rule.entries(edge)) {
    for (Tree& t : rooted(nu, bound - et.degree)) {
      charge(t.node_count() + 1);
      out.push_back(Tree::graft(edge, t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Tree> GenContext::rooted(const NodeType& nu, const Homogeneity& bound) {
  // group the node type's edges by type
  std::vector<std::pair<int, int>> groups;
  for (int e : nu.edges) {
    if (!groups.empty() && groups.back().first == e) groups.back().second++;
    else groups.push_back({e, 1});
  }
  Homogeneity min_rest;
  for (auto& [e, m] : groups) min_rest += Rational(m) * min_planted[e];

  std::vector<Tree> chosen;
  std::vector<Tree> out;

  // depth-first multiset assembly: per group, candidates with a bound that
  // reserves the minimal degrees of everything still unassigned
  auto assemble = [&](auto&& self, size_t g, Homogeneity used_deg, Homogeneity rest_min) -> void {
    if (g == groups.size()) {
      charge(1);
      Tree t = Tree::product(chosen);
      charge(t.node_count());
      out.push_back(t);
      return;
    }
    auto [edge, mult] = groups[g];
    Homogeneity rest_after = rest_min - Rational(mult) * min_planted[edge];
    std::vector<Tree> cands = planted(edge, bound - used_deg - rest_min + min_planted[edge]);
    std::vector<Homogeneity> cand_deg;
    cand_deg.reserve(cands.size());
    for (const Tree& c : cands) cand_deg.push_back(tree_homogeneity(c, sys));

    auto pick = [&](auto&& pick_self, int remaining, size_t from, Homogeneity acc) -> void {
      if (remaining == 0) {
        self(self, g + 1, acc, rest_after);
        return;
      }
      for (size_t i = from; i < cands.size(); ++i) {
        Homogeneity next = acc + cand_deg[i];
        // everything still to pick in this group plus all later groups
        Homogeneity reserve = Rational(remaining - 1) * min_planted[edge] + rest_after;
        if (!(next + reserve < bound)) continue;
        chosen.push_back(cands[i]);
        pick_self(pick_self, remaining - 1, i, next);
        chosen.pop_back();
      }
    };
    pick(pick, mult, 0, used_deg);
  };
  assemble(assemble, 0, Homogeneity::zero(), min_rest);
  return out;
}

}  // namespace

std::vector<Homogeneity> min_planted_degrees(const Rule& rule) {
  const EdgeSystem& sys = rule.system();
  std::vector<Homogeneity> m(sys.size());
  for (int e = 0; e < sys.size(); ++e) m[e] = sys.edge(e).degree;
  const int budget = 10 * std::max(1, sys.size());
  const Homogeneity floor(Rational(-1000000));
  for (int step = 0; step < budget; ++step) {
    auto next = m;
    for (int k = 0; k < sys.size(); ++k) {
      if (!sys.is_plus(k)) continue;
      if (rule.entries(k).empty())
        throw RuleError("empty rule entry set for plus edge " + sys.edge(k).id);
      bool first = true;
      Homogeneity best;
      for (const NodeType& nu : rule.entries(k)) {
        Homogeneity s;
        for (int e : nu.edges) s += m[e];
        if (first || s < best) { best = s; first = false; }
      }
      next[k] = sys.edge(k).degree + best;
      if (next[k] < floor)
        throw BudgetError("minimal planted degrees diverge (rule not subcritical)");
    }
    if (next == m) return m;
    m = std::move(next);
  }
  throw BudgetError("minimal planted degrees did not stabilise (rule not subcritical)");
}

std::vector<Tree> generate_trees(const Rule& rule, const std::vector<NodeType>& roots,
                                 const GenerateConfig& cfg) {
  GenContext ctx{rule, rule.system(), min_planted_degrees(rule), cfg.node_budget};
  std::set<Tree> out;
  for (const NodeType& nu : roots)
    for (Tree& t : ctx.rooted(nu, cfg.gamma)) out.insert(t);
  return {out.begin(), out.end()};
}

std::vector<Tree> generate_trees(const Rule& rule, int target_edge, const GenerateConfig& cfg) {
  return generate_trees(rule, rule.entries(target_edge), cfg);
}

std::vector<Tree> generate_solution_sector(const Rule& rule, int edge, const GenerateConfig& cfg) {
  const EdgeSystem& sys = rule.system();
  GenContext ctx{rule, sys, min_planted_degrees(rule), cfg.node_budget};
  std::set<Tree> out;
  for (Tree& t : ctx.planted(edge, cfg.gamma)) out.insert(t);
  int iota = sys.edge(edge).iota;
  if (iota >= 0 && sys.edge(iota).degree < cfg.gamma) out.insert(Tree::single_edge(iota));
  return {out.begin(), out.end()};
}

}  // namespace renormalist
