#include "renormalist/colored.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace renormalist {

std::vector<EdgeIds> edge_components(const Tree& host, const EdgeIds& edges) {
  std::set<int> eset(edges.begin(), edges.end());
  std::map<int, int> comp;  // edge -> component id via union-find over nodes
  std::map<int, int> node_comp;
  int next = 0;
  for (int e : edges) {
    int p = host.parent(e);
    auto it = node_comp.find(p);
    int c;
    if (it != node_comp.end()) c = it->second;
    else c = next++;
    // the upper node of e joins the same component
    comp[e] = c;
    node_comp[p] = c;
    auto jt = node_comp.find(e);
    if (jt != node_comp.end() && jt->second != c) {
      // merge components
      int old = jt->second;
      for (auto& [k, v] : node_comp)
        if (v == old) v = c;
      for (auto& [k, v] : comp)
        if (v == old) v = c;
    }
    node_comp[e] = c;
  }
  std::map<int, EdgeIds> grouped;
  for (auto& [e, c] : comp) grouped[c].push_back(e);
  std::vector<EdgeIds> out;
  for (auto& [c, v] : grouped) {
    std::sort(v.begin(), v.end());
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool component_is_negative_subtree(const Tree& host, const EdgeSystem& sys, const EdgeIds& comp) {
  EdgeIds noise;
  for (int e : comp)
    if (sys.edge(host.edge_type(e)).cls == EdgeClass::Minus) noise.push_back(e);
  if (noise.empty()) return false;
  return minimal_subtree_edges(host, noise) == comp;
}

}  // namespace

bool colored_admissible(const ColoredTree& t, const EdgeSystem& sys) {
  for (int n = 1; n <= t.max_depth(); ++n) {
    for (const EdgeIds& comp : edge_components(t.host, t.level_set(n)))
      if (!component_is_negative_subtree(t.host, sys, comp)) return false;
  }
  return true;
}

ColoredTree color_union(const ColoredTree& t, const EdgeIds& forest_edges, const EdgeSystem& sys) {
  std::set<int> fset(forest_edges.begin(), forest_edges.end());
  for (int e : t.marks())
    if (!fset.count(e))
      throw TreeError("color_union requires the existing colour inside the forest");
  ColoredTree out = t;
  for (int e : forest_edges) out.depth.at(static_cast<size_t>(e))++;
  if (!colored_admissible(out, sys)) throw TreeError("color_union result not admissible");
  return out;
}

namespace {

std::string code_below(const Tree& host, int node, const std::set<int>& comp,
                       const std::vector<int>& depth) {
  std::vector<std::string> kid_codes;
  auto kids = host.children();
  for (int c : kids[node]) {
    if (!comp.count(c)) continue;
    kid_codes.push_back(std::to_string(host.edge_type(c)) + ":" + std::to_string(depth[c]) +
                        code_below(host, c, comp, depth));
  }
  std::sort(kid_codes.begin(), kid_codes.end());
  std::string out = "(";
  for (auto& k : kid_codes) out += k;
  return out + ")";
}

}  // namespace

std::string colored_code(const Tree& host, const EdgeIds& component, const EdgeIds& marked) {
  std::vector<int> depth(host.node_count(), 0);
  std::set<int> mset(marked.begin(), marked.end());
  std::set<int> comp(component.begin(), component.end());
  for (int e : marked) depth.at(static_cast<size_t>(e)) = 1;
  // find the top node: the node in the component whose parent edge is outside
  int top = -1;
  std::set<int> nodes;
  for (int e : component) {
    nodes.insert(e);
    nodes.insert(host.parent(e));
  }
  if (component.empty()) return "()";
  for (int n : nodes)
    if (n == 0 || !comp.count(n)) {
      if (top != -1 && top != n) throw TreeError("component edge set is not connected");
      top = n;
    }
  return code_below(host, top, comp, depth);
}

int potential_depth(const Tree& host, const EdgeSystem& sys, const EdgeIds& marks) {
  EdgeIds all;
  for (int v = 1; v < host.node_count(); ++v) all.push_back(v);
  if (marks == all) return 0;

  // candidate forests as edge sets
  std::vector<EdgeIds> forests;
  for (const SubforestRef& f : negative_forests(host, sys)) forests.push_back(f.all_edges());

  auto mark_comps = edge_components(host, marks);
  auto is_subset = [](const EdgeIds& a, const EdgeIds& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  // strict component condition relative to `marks`
  auto lessless = [&](const EdgeIds& f1, const EdgeIds& f2) {
    if (f1 == f2 || !is_subset(f1, f2)) return false;
    auto c1 = edge_components(host, f1);
    auto c2 = edge_components(host, f2);
    for (const EdgeIds& a : c1) {
      bool ok = false;
      for (const EdgeIds& b : c2) {
        if (!is_subset(a, b)) continue;
        if (a == b && std::find(mark_comps.begin(), mark_comps.end(), b) == mark_comps.end())
          continue;
        ok = true;
        break;
      }
      if (!ok) return false;
    }
    return true;
  };

  // longest chain marks << F_{m-1} << ... << F_1 << all, intermediate levels
  // nonempty; depth = number of << steps from marks up to all
  std::function<int(const EdgeIds&)> climb = [&](const EdgeIds& cur) -> int {
    // one step: cur << next, next a forest, next != all or next == all ends
    int best = lessless(cur, all) ? 1 : 0;
    for (const EdgeIds& f : forests) {
      if (f.empty() || f == all) continue;
      if (!lessless(cur, f)) continue;
      int via = climb(f);
      if (via > 0) best = std::max(best, via + 1);
    }
    return best;
  };
  return climb(marks);
}

}  // namespace renormalist
